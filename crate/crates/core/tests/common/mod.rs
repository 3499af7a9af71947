//! Brute-force oracles and seeded generators shared by the integration
//! tests and the acceptance suite. Nothing here calls the routine it checks:
//! brackets come from derivations acting on polynomials, ideals from windowed
//! bracket closure, isomorphism from the explicit case lists.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triad::ideals::IdealHandle;
use triad::linalg::{kernel, Echelon, SparseVec};
use triad::scalar::{frac, int};
use triad::weyl::WeylElement;
use triad::{BasisVector, Element, Multidegree, Ordinal, Polynomial, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_scalar(r: &mut ChaCha8Rng) -> Scalar {
    let mut n = r.gen_range(-4i64..=4);
    if n == 0 {
        n = 1;
    }
    let d = r.gen_range(1i64..=3);
    frac(n, d)
}

pub fn random_multidegree(r: &mut ChaCha8Rng, vars: usize, max_deg: u32) -> Multidegree {
    let mut exps = vec![0u32; vars];
    let deg = r.gen_range(0..=max_deg);
    for _ in 0..deg {
        if vars == 0 {
            break;
        }
        exps[r.gen_range(0..vars)] += 1;
    }
    Multidegree::new(exps)
}

pub fn random_basis(r: &mut ChaCha8Rng, rank: usize, max_deg: u32) -> BasisVector {
    let slot = r.gen_range(1..=rank);
    BasisVector::new(random_multidegree(r, slot - 1, max_deg), slot).unwrap()
}

pub fn random_element(r: &mut ChaCha8Rng, rank: usize, max_deg: u32, max_terms: usize) -> Element {
    let k = r.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..k).map(|_| (random_basis(r, rank, max_deg), small_scalar(r))).collect();
    let mut sum = Element::zero(rank);
    for (b, c) in terms {
        sum = sum.add(&Element::basis(b, rank).unwrap().scale(&c)).unwrap();
    }
    sum
}

pub fn random_nonzero_element(r: &mut ChaCha8Rng, rank: usize, max_deg: u32, max_terms: usize) -> Element {
    loop {
        let u = random_element(r, rank, max_deg, max_terms);
        if !u.is_zero() {
            return u;
        }
    }
}

pub fn random_polynomial(r: &mut ChaCha8Rng, vars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let k = r.gen_range(1..=max_terms);
    Polynomial::from_terms((0..k).map(|_| (random_multidegree(r, vars, max_deg), small_scalar(r))))
}

pub fn random_weyl(r: &mut ChaCha8Rng, rank: usize, max_deg: u32, max_terms: usize) -> WeylElement {
    let k = r.gen_range(1..=max_terms);
    let mut out = WeylElement::zero(rank);
    for _ in 0..k {
        let x = random_multidegree(r, rank, max_deg);
        let left = max_deg - x.total_degree().min(max_deg);
        let d = random_multidegree(r, rank, left);
        let m = WeylElement::monomial(rank, x, d).unwrap().scale(&small_scalar(r));
        out = out.add(&m).unwrap();
    }
    out
}

pub fn monomials(vars: usize, max_deg: u32) -> Vec<Polynomial> {
    Multidegree::enumerate(vars, max_deg).into_iter().map(Polynomial::monomial).collect()
}

// ---------------------------------------------------------------------------
// Derivations as coefficient lists: `Σ a_i ∂_i` with `a_i` stored at `i`.

pub type Derivation = BTreeMap<usize, Polynomial>;

pub fn as_derivation(u: &Element) -> Derivation {
    let mut out: Derivation = BTreeMap::new();
    for (b, c) in u.terms() {
        out.entry(b.slot).or_default().add_term(b.alpha.clone(), c.clone());
    }
    out
}

pub fn apply_derivation(d: &Derivation, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (&i, a) in d {
        out = out.add(&a.mul(&p.derivative(i)));
    }
    out
}

/// `[u, v]` read off from `[u, v](x_i) = u(v(x_i)) − v(u(x_i))`.
pub fn bracket_oracle(u: &Element, v: &Element) -> Element {
    let (du, dv) = (as_derivation(u), as_derivation(v));
    let rank = u.rank().max(v.rank());
    let mut terms = Vec::new();
    for i in 1..=rank {
        let xi = Polynomial::monomial(Multidegree::unit(i));
        let c =
            apply_derivation(&du, &apply_derivation(&dv, &xi)).sub(&apply_derivation(&dv, &apply_derivation(&du, &xi)));
        for (m, s) in c.terms() {
            terms.push((BasisVector::new(m.clone(), i).unwrap(), s.clone()));
        }
    }
    Element::from_terms(rank, terms).unwrap()
}

/// `x^a ∂^b` applied to `p` by repeated differentiation.
pub fn weyl_act_oracle(a: &WeylElement, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in a.terms() {
        let mut q = p.clone();
        for i in 1..=m.d.max_index() {
            for _ in 0..m.d.get(i) {
                q = q.derivative(i);
            }
        }
        out = out.add(&q.mul(&Polynomial::monomial(m.x.clone())).scale(c));
    }
    out
}

// ---------------------------------------------------------------------------
// Windowed closures.

/// Sort key placing higher total degree above lower, so that in a reduced
/// echelon form a row whose pivot has degree `≤ D` lives entirely in degree `≤ D`.
pub type DegKey = (u32, BasisVector);

pub fn deg_keyed(u: &Element) -> SparseVec<DegKey> {
    u.terms().map(|(b, c)| ((b.total_degree(), b.clone()), c.clone())).collect()
}

pub fn from_deg_keyed(rank: usize, v: &SparseVec<DegKey>) -> Element {
    Element::from_terms(rank, v.iter().map(|((_, b), c)| (b.clone(), c.clone()))).unwrap()
}

/// Ideal generated by `gens` in `u_rank`, computed by bracketing with every
/// basis vector of degree `≤ work` and discarding results that leave that
/// window, then cut down to degree `≤ keep`. Returned as basis rows.
pub fn ideal_closure_window(gens: &[Element], rank: usize, work: u32, keep: u32) -> Echelon<DegKey> {
    let partners: Vec<Element> =
        BasisVector::enumerate(rank, work).into_iter().map(|b| Element::basis(b, rank).unwrap()).collect();
    let mut ech: Echelon<DegKey> = Echelon::new();
    let mut queue: Vec<Element> = Vec::new();
    for g in gens {
        let g = g.with_rank(rank).unwrap();
        if g.max_degree() <= work && ech.insert(&deg_keyed(&g)).is_some() {
            queue.push(g);
        }
    }
    while let Some(w) = queue.pop() {
        for p in &partners {
            let c = p.bracket(&w).unwrap();
            if c.is_zero() || c.max_degree() > work {
                continue;
            }
            if ech.insert(&deg_keyed(&c)).is_some() {
                queue.push(c);
            }
        }
    }
    let mut out = Echelon::new();
    for row in ech.rows() {
        if row.keys().next_back().is_some_and(|(d, _)| *d <= keep) {
            out.insert(row);
        }
    }
    out
}

pub fn span_of_basis(vs: &[BasisVector]) -> Echelon<DegKey> {
    let mut e = Echelon::new();
    for b in vs {
        let v: SparseVec<DegKey> = [((b.total_degree(), b.clone()), int(1))].into_iter().collect();
        e.insert(&v);
    }
    e
}

/// Elements of degree `≤ window` commuting with every basis vector of `I_λ`
/// of degree `≤ window`, as a span.
pub fn commutant_window(h: &IdealHandle, window: u32) -> Echelon<DegKey> {
    let cands = BasisVector::enumerate(h.rank, window);
    let others = h.basis_in_window(window);
    let family: Vec<SparseVec<(usize, BasisVector)>> = cands
        .iter()
        .map(|b| {
            let u = Element::basis(b.clone(), h.rank).unwrap();
            let mut v = SparseVec::new();
            for (k, o) in others.iter().enumerate() {
                let c = u.bracket(&Element::basis(o.clone(), h.rank).unwrap()).unwrap();
                for (bb, s) in c.terms() {
                    v.insert((k, bb.clone()), s.clone());
                }
            }
            v
        })
        .collect();
    relations_to_span(&cands, &kernel(&family))
}

/// Elements `u` of degree `≤ window` with `[u, b] ∈ I_μ` for every basis
/// vector `b` of degree `≤ window`: the centre of `u_n/I_μ` pulled back.
pub fn center_of_quotient_window(h: &IdealHandle, window: u32) -> Echelon<DegKey> {
    let cands = BasisVector::enumerate(h.rank, window);
    let family: Vec<SparseVec<(usize, BasisVector)>> = cands
        .iter()
        .map(|b| {
            let u = Element::basis(b.clone(), h.rank).unwrap();
            let mut v = SparseVec::new();
            for (k, o) in cands.iter().enumerate() {
                let c = u.bracket(&Element::basis(o.clone(), h.rank).unwrap()).unwrap();
                for (bb, s) in c.terms() {
                    if !in_ideal_by_enumeration(h, bb) {
                        v.insert((k, bb.clone()), s.clone());
                    }
                }
            }
            v
        })
        .collect();
    relations_to_span(&cands, &kernel(&family))
}

fn relations_to_span(cands: &[BasisVector], rels: &[SparseVec<usize>]) -> Echelon<DegKey> {
    let mut e = Echelon::new();
    for rel in rels {
        let v: SparseVec<DegKey> =
            rel.iter().map(|(&i, c)| ((cands[i].total_degree(), cands[i].clone()), c.clone())).collect();
        e.insert(&v);
    }
    e
}

/// Membership of a basis vector in `I_λ` by counting its position in the
/// well-order rather than by the closed formula: list the basis vectors of
/// `u_n` below it slot by slot and compare against `λ` read in the same
/// coordinates.
pub fn in_ideal_by_enumeration(h: &IdealHandle, b: &BasisVector) -> bool {
    // A basis vector of slot i sits above all of P_{j−1}∂_j for j > i, whose
    // order type is ω^{j−1}; inside slot i it is preceded by the x^β∂_i with β
    // reverse-lex smaller, i.e. order type Σ β_k ω^{k−1} for β = α.
    let n = h.rank;
    let mut digits: BTreeMap<u32, u64> = BTreeMap::new();
    for j in (b.slot + 1)..=n {
        *digits.entry(j as u32 - 1).or_default() += 1;
    }
    // add Σ α_k ω^{k−1} + 1 with left absorption: terms above the leading
    // exponent of the addend survive, equal ones add, lower ones vanish.
    let mut add: Vec<(u32, u64)> = (1..b.slot).rev().map(|k| (k as u32 - 1, b.alpha.get(k) as u64)).collect();
    add.push((0, 0));
    if let Some(last) = add.last_mut() {
        last.1 += 1;
    }
    let add: Vec<(u32, u64)> = add.into_iter().filter(|(_, c)| *c > 0).collect();
    let lead = add.first().map(|(e, _)| *e).unwrap();
    digits.retain(|e, _| *e >= lead);
    for (e, c) in add {
        *digits.entry(e).or_default() += c;
    }
    let ord = Ordinal::from_terms(digits.into_iter().rev().filter(|(_, c)| *c > 0).map(|(e, c)| (e, c.into())));
    ord <= h.lambda
}

pub fn same_span(a: &Echelon<DegKey>, b: &Echelon<DegKey>) -> bool {
    a.same_span(b)
}

pub fn is_zero(c: &Scalar) -> bool {
    c.is_zero()
}

pub fn distinct<T: Ord + Clone>(v: &[T]) -> usize {
    v.iter().cloned().collect::<BTreeSet<_>>().len()
}

// ---------------------------------------------------------------------------
// The isomorphism criterion as the literal case lists.

fn digit(l: &Ordinal, e: u32) -> u64 {
    l.digit(e).unwrap()
}

/// `ω^{hi−1}+⋯+ω^{lo}` present digit by digit, with digit `lo−1` zero.
fn has_prefix_then_gap(l: &Ordinal, hi: u32, lo: u32) -> bool {
    if l.leading_exp().is_some_and(|e| e >= hi) {
        return false;
    }
    (lo..hi).all(|e| digit(l, e) == 1) && (lo == 0 || digit(l, lo - 1) == 0)
}

fn below(l: &Ordinal, k: i64) -> Ordinal {
    if k <= 0 {
        return Ordinal::zero();
    }
    l.divmod_omega_pow(k as u32).unwrap().1
}

/// `λ = [ω^{hi−1}+⋯+ω^{s}] + iω^{s−2} + ν` with `ν < ω^{s−2}`: returns `ν`.
fn prefixed_form(l: &Ordinal, hi: u32, s: u32) -> Option<Ordinal> {
    if s < 2 {
        return None;
    }
    if hi == s {
        // empty prefix: λ < ω^{s−1}
        if !l.lt_omega_pow(s - 1) {
            return None;
        }
    } else if !has_prefix_then_gap(l, hi, s) {
        return None;
    }
    Some(below(l, s as i64 - 2))
}

fn top_form(l: &Ordinal, hi: u32) -> Option<u64> {
    let eps = digit(l, 0);
    (eps <= 1 && (1..hi).all(|e| digit(l, e) == 1) && l.lt_omega_pow(hi)).then_some(eps)
}

/// `u_n/I_λ ≅ u_m/I_μ` by the explicit clause lists.
pub fn iso_by_clauses(n: usize, l: &Ordinal, m: usize, mu: &Ordinal) -> bool {
    if n > m {
        return iso_by_clauses(m, mu, n, l);
    }
    let (n, m) = (n as u32, m as u32);
    // first clause: λ = iω^{n−2}+ν and μ = (prefix down to ω^n) + jω^{n−2}+ν
    if let (Some(a), Some(b)) = (prefixed_form(l, n, n), prefixed_form(mu, m, n)) {
        if a == b {
            return true;
        }
    }
    // middle clauses, 2 ≤ s ≤ n−1
    for s in 2..n {
        if let (Some(a), Some(b)) = (prefixed_form(l, n, s), prefixed_form(mu, m, s)) {
            if a == b {
                return true;
            }
        }
    }
    // last clause: both are the full prefix down to ω plus the same ε
    matches!((top_form(l, n), top_form(mu, m)), (Some(a), Some(b)) if a == b)
}

/// Every `aω²+bω+c` with `a, b, c ≤ 3` after any stack prefix, inside `u_n`.
pub fn ordinal_grid(n: usize) -> Vec<Ordinal> {
    let top = Ordinal::stack(n as u32);
    let mut out = BTreeSet::new();
    for p in 0..n as u32 {
        let prefix = Ordinal::stack_range(n as u32, n as u32 - p);
        for a in 0..=3u64 {
            for b in 0..=3u64 {
                for c in 0..=3u64 {
                    let l = prefix.add(&Ordinal::from_digits(&[c, b, a])).unwrap();
                    if l <= top {
                        out.insert(l);
                    }
                }
            }
        }
    }
    out.insert(top);
    out.into_iter().collect()
}

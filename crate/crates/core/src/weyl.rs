//! Normal-ordered arithmetic in the Weyl algebra `A_n`, the image of the
//! enveloping algebra of `u_n` under `χ_n`, and its bases `W_n`, `W′_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lie::Element;
use crate::linalg::{Solver, SparseVec};
use crate::multidegree::{write_monomial, Multidegree};
use crate::polynomial::Polynomial;
use crate::scalar::{accumulate, binomial, factorial, write_combination, Scalar};

/// The normal-ordered monomial `x^x ∂^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylMonomial {
    pub d: Multidegree,
    pub x: Multidegree,
}

impl WeylMonomial {
    pub fn new(x: Multidegree, d: Multidegree) -> Self {
        Self { d, x }
    }

    pub fn total_degree(&self) -> u32 {
        self.x.total_degree() + self.d.total_degree()
    }

    fn max_index(&self) -> usize {
        self.x.max_index().max(self.d.max_index())
    }
}

impl fmt::Display for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, 'x', &self.x)?;
        if !self.x.is_zero() && !self.d.is_zero() {
            write!(f, " ")?;
        }
        write_monomial(f, 'd', &self.d)
    }
}

/// A finite combination of normal-ordered monomials in `A_rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    terms: BTreeMap<WeylMonomial, Scalar>,
    rank: usize,
}

impl WeylElement {
    pub fn zero(rank: usize) -> Self {
        Self { terms: BTreeMap::new(), rank }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, Multidegree::zero(), Multidegree::zero()).expect("unit lies in every rank")
    }

    pub fn monomial(rank: usize, x: Multidegree, d: Multidegree) -> Result<Self> {
        Self::from_terms(rank, [(WeylMonomial::new(x, d), Scalar::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (WeylMonomial, Scalar)>>(rank: usize, terms: I) -> Result<Self> {
        let mut out = Self::zero(rank);
        for (m, c) in terms {
            if m.max_index() > rank {
                return Err(Error::InvalidIndex(format!("{m} does not lie in A{rank}")));
            }
            accumulate(&mut out.terms, m, c);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn with_rank(&self, m: usize) -> Result<Self> {
        Self::from_terms(m, self.terms.iter().map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&WeylMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &WeylMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(WeylMonomial::total_degree).max().unwrap_or(0)
    }

    pub fn to_sparse(&self) -> SparseVec<WeylMonomial> {
        self.terms.clone()
    }

    fn check_rank(&self, other: &WeylElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> WeylElement {
        if c.is_zero() {
            return WeylElement::zero(self.rank);
        }
        WeylElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(), rank: self.rank }
    }

    /// The normal-ordered product, using
    /// `∂^b x^g = Σ_k C(b,k) C(g,k) k! x^{g−k} ∂^{b−k}` in each variable.
    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_rank(other)?;
        let mut out = WeylElement::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                for (x, d, c) in reorder(&a.d, &b.x) {
                    let m = WeylMonomial::new(a.x.add(&x), d.add(&b.d));
                    accumulate(&mut out.terms, m, c * ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// The action on `P_rank`: `x^a∂^b * p = x^a ∂^b(p)`.
    pub fn act(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut q = p.clone();
            for (i, &e) in m.d.exps().iter().enumerate() {
                for _ in 0..e {
                    q = q.derivative(i + 1);
                }
            }
            out = out.add(&q.shift(&m.x).scale(c));
        }
        out
    }
}

/// `∂^b x^g` as normal-ordered terms `(x-part, ∂-part, coefficient)`.
fn reorder(b: &Multidegree, g: &Multidegree) -> Vec<(Multidegree, Multidegree, Scalar)> {
    let len = b.max_index().max(g.max_index());
    let mut acc = vec![(Multidegree::zero(), Multidegree::zero(), Scalar::one())];
    for i in 1..=len {
        let (bi, gi) = (b.get(i), g.get(i));
        let mut next = Vec::new();
        for (x, d, c) in &acc {
            for k in 0..=bi.min(gi) {
                let w = binomial(bi, k) * binomial(gi, k) * factorial(k);
                next.push((x.with(i, gi - k), d.with(i, bi - k), c * w));
            }
        }
        acc = next;
    }
    acc
}

/// `χ_n(X_{α,i}) = x^α∂_i`, extended linearly.
pub fn chi(u: &Element) -> WeylElement {
    let terms = u.terms().map(|(b, c)| (WeylMonomial::new(b.alpha.clone(), Multidegree::unit(b.slot)), c.clone()));
    WeylElement::from_terms(u.rank(), terms).expect("basis vectors of u_n lie in A_n")
}

/// `α ≺ β`: either `α = 0`, or both are nonzero and the last nonzero index
/// of `α` precedes that of `β`.
pub fn prec(alpha: &Multidegree, beta: &Multidegree) -> bool {
    alpha.is_zero() || (!beta.is_zero() && alpha.max_index() < beta.max_index())
}

/// True iff every term `x^α∂^β` has `α ≺ β`, i.e. `a` lies in the image of `χ_n`.
pub fn in_wn_span(a: &WeylElement) -> bool {
    a.terms.keys().all(|m| prec(&m.x, &m.d))
}

/// Checks `χ(X_{α,i}X_{β,j}) = χ(X_{0,i}X_{α+β,j})` for `i ≤ j`.
pub fn kernel_generator_check(alpha: &Multidegree, i: usize, beta: &Multidegree, j: usize) -> Result<bool> {
    if i == 0 || i > j {
        return Err(Error::InvalidIndex(format!("kernel generators need 1 <= i <= j, got i={i}, j={j}")));
    }
    if alpha.max_index() >= i || beta.max_index() >= j {
        return Err(Error::InvalidIndex("need α ∈ N^{i−1} and β ∈ N^{j−1}".into()));
    }
    let w = |x: Multidegree, s: usize| WeylElement::monomial(j, x, Multidegree::unit(s));
    let lhs = w(alpha.clone(), i)?.mul(&w(beta.clone(), j)?)?;
    let rhs = w(Multidegree::zero(), i)?.mul(&w(alpha.add(beta), j)?)?;
    Ok(lhs == rhs)
}

/// An element of the basis `W′_n`: either `∂^α`, or `∂^β x^ν ∂_t^i` with
/// `β, ν ∈ N^{t−1}`, `ν ≠ 0`, `i ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WPrime {
    Pure { alpha: Multidegree },
    Mixed { beta: Multidegree, nu: Multidegree, t: usize, i: u32 },
}

impl WPrime {
    pub fn total_degree(&self) -> u32 {
        match self {
            WPrime::Pure { alpha } => alpha.total_degree(),
            WPrime::Mixed { beta, nu, i, .. } => beta.total_degree() + nu.total_degree() + i,
        }
    }

    /// The element as a normal-ordered Weyl element.
    pub fn normal_form(&self, rank: usize) -> Result<WeylElement> {
        match self {
            WPrime::Pure { alpha } => WeylElement::monomial(rank, Multidegree::zero(), alpha.clone()),
            WPrime::Mixed { beta, nu, t, i } => {
                let left = WeylElement::monomial(rank, Multidegree::zero(), beta.clone())?;
                let right = WeylElement::monomial(rank, nu.clone(), Multidegree::var_pow(*t, *i))?;
                left.mul(&right)
            }
        }
    }

    /// Every element of `W′_n` of total degree at most `max_deg`.
    pub fn enumerate(n: usize, max_deg: u32) -> Vec<WPrime> {
        let mut out: Vec<WPrime> =
            Multidegree::enumerate(n, max_deg).into_iter().map(|alpha| WPrime::Pure { alpha }).collect();
        for t in 2..=n {
            for nu in Multidegree::enumerate(t - 1, max_deg) {
                if nu.is_zero() {
                    continue;
                }
                let used = nu.total_degree();
                for i in 1..=max_deg.saturating_sub(used) {
                    for beta in Multidegree::enumerate(t - 1, max_deg - used - i) {
                        out.push(WPrime::Mixed { beta, nu: nu.clone(), t, i });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for WPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WPrime::Pure { alpha } if alpha.is_zero() => write!(f, "1"),
            WPrime::Pure { alpha } => write_monomial(f, 'd', alpha),
            WPrime::Mixed { beta, nu, t, i } => {
                if !beta.is_zero() {
                    write_monomial(f, 'd', beta)?;
                    write!(f, " ")?;
                }
                write_monomial(f, 'x', nu)?;
                write!(f, " ")?;
                write_monomial(f, 'd', &Multidegree::var_pow(*t, *i))
            }
        }
    }
}

/// Coordinates of `a` in `W′_n`, found by exact linear algebra over the
/// `W′_n` elements of degree `≤ window`. `None` means `a` is not in their span.
pub fn express_in_wprime(a: &WeylElement, window: u32) -> Result<Option<Vec<(WPrime, Scalar)>>> {
    if a.total_degree() > window {
        return domain(format!("element of degree {} exceeds the window {window}", a.total_degree()));
    }
    let family = WPrime::enumerate(a.rank, window);
    let vecs: Vec<_> = family.iter().map(|w| w.normal_form(a.rank).map(|e| e.to_sparse())).collect::<Result<_>>()?;
    let Some(coeffs) = Solver::new(&vecs).solve(&a.to_sparse()) else {
        return Ok(None);
    };
    Ok(Some(family.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect()))
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().rev().map(|(m, c)| (c, m.to_string())))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    alpha: Multidegree,
    beta: Multidegree,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct JsonWeyl {
    rank: usize,
    terms: Vec<JsonTerm>,
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| JsonTerm { alpha: m.x.clone(), beta: m.d.clone(), coeff: c.to_string() })
            .collect();
        JsonWeyl { rank: self.rank, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = JsonWeyl::deserialize(d)?;
        let mut terms = Vec::new();
        for t in j.terms {
            let c: Scalar = t.coeff.parse().map_err(D::Error::custom)?;
            terms.push((WeylMonomial::new(t.alpha, t.beta), c));
        }
        WeylElement::from_terms(j.rank, terms).map_err(D::Error::custom)
    }
}

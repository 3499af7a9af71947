//! The union `u_∞` of all `u_n`, its ideals and factor algebras, and
//! truncated arithmetic in the completion `û_∞ = {Σ_{i≥1} a_i∂_i}`.
//!
//! The nonzero ideals of `u_∞` form the chain
//! `u_∞ ⊃ u_{∞,2} ⊃ I_{λ,2} ⊃ u_{∞,3} ⊃ I_{λ,3} ⊃ ⋯` where
//! `u_{∞,n} = ⊕_{j≥n} P_{j−1}∂_j` and `I_{λ,n} = I_λ(n) + u_{∞,n+1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::ideals::{compact, IdealHandle};
use crate::iso::iso_factors;
use crate::lie::{BasisVector, Element};
use crate::multidegree::Multidegree;
use crate::ordinal::Ordinal;
use crate::polynomial::Polynomial;
use crate::scalar::{factorial, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InfIdeal {
    Whole,
    /// `u_{∞,n}`
    Tail(usize),
    /// `I_λ(n) + u_{∞,n+1}` with `1 ≤ λ < ω^{n−1}`
    Mixed(usize, Ordinal),
    Zero,
}

impl InfIdeal {
    /// `u_{∞,n}`; `u_{∞,1}` is the whole algebra.
    pub fn tail(n: usize) -> Result<Self> {
        match n {
            0 => domain("u_{oo,n} needs n >= 1"),
            1 => Ok(InfIdeal::Whole),
            _ => Ok(InfIdeal::Tail(n)),
        }
    }

    pub fn mixed(n: usize, lambda: Ordinal) -> Result<Self> {
        if n < 2 {
            return domain(format!("I[λ]@n + U[oo,n+1] needs n >= 2, got {n}"));
        }
        if lambda.is_zero() || !lambda.lt_omega_pow(n as u32 - 1) {
            return domain(format!("I[{lambda}]@{n} needs 1 <= λ < w^{}", n - 1));
        }
        Ok(InfIdeal::Mixed(n, lambda))
    }

    /// Checks the invariants of a value built directly from the variants.
    pub fn validate(&self) -> Result<()> {
        match self {
            InfIdeal::Tail(n) => InfIdeal::tail(*n).map(|_| ()),
            InfIdeal::Mixed(n, l) => InfIdeal::mixed(*n, l.clone()).map(|_| ()),
            _ => Ok(()),
        }
    }

    pub fn contains_basis(&self, b: &BasisVector) -> bool {
        match self {
            InfIdeal::Whole => true,
            InfIdeal::Tail(n) => b.slot >= *n,
            InfIdeal::Mixed(n, l) => b.slot > *n || (b.slot == *n && b.ord(*n).is_ok_and(|o| o <= *l)),
            InfIdeal::Zero => false,
        }
    }

    pub fn contains(&self, u: &Element) -> bool {
        u.terms().all(|(b, _)| self.contains_basis(b))
    }

    /// Least `n ≥ 2` with `u_{∞,n+1} ⊆ I`, or `None` for the zero ideal.
    pub fn level(&self) -> Option<usize> {
        match self {
            InfIdeal::Whole => Some(2),
            InfIdeal::Tail(k) => Some((*k).max(3) - 1),
            InfIdeal::Mixed(k, _) => Some(*k),
            InfIdeal::Zero => None,
        }
    }

    /// The image `I/u_{∞,n+1}` as an ideal of `u_n`, once `u_{∞,n+1} ⊆ I`.
    pub fn truncate(&self, n: usize) -> Result<IdealHandle> {
        match self.level() {
            Some(l) if l <= n => {}
            _ => return domain(format!("{self} does not contain U[oo,{}]", n + 1)),
        }
        let m = n as u32;
        let lambda = match self {
            InfIdeal::Whole => Ordinal::stack(m),
            InfIdeal::Tail(k) => Ordinal::stack_range(m, *k as u32 - 1),
            InfIdeal::Mixed(k, l) => Ordinal::stack_range(m, *k as u32).add(l)?,
            InfIdeal::Zero => unreachable!(),
        };
        IdealHandle::new(n, lambda)
    }

    /// Position in the chain: a smaller level is a larger ideal, and within a
    /// level the tail sits above every mixed ideal.
    fn chain_key(&self) -> (usize, Ordinal) {
        match self {
            InfIdeal::Whole => (1, Ordinal::top()),
            InfIdeal::Tail(k) => (*k, Ordinal::top()),
            InfIdeal::Mixed(k, l) => (*k, l.clone()),
            InfIdeal::Zero => (usize::MAX, Ordinal::zero()),
        }
    }
}

/// Inclusion order on the ideals of `u_∞`, which is total.
pub fn inf_compare(a: &InfIdeal, b: &InfIdeal) -> Ordering {
    let (la, wa) = a.chain_key();
    let (lb, wb) = b.chain_key();
    lb.cmp(&la).then(wa.cmp(&wb))
}

/// The ideal of `u_∞` generated by `u`.
///
/// If `m` is the top slot of `u`, the ideal contains `∂_{m+1}` and hence
/// `u_{∞,m+2}`, so it is the preimage of the ideal that `u` generates in
/// `u_{m+1}`. Reading that `I_λ` off as `ω^{m}+⋯+ω^k + ρ` with `ρ < ω^{k−1}`
/// gives the answer.
pub fn classify_generated(u: &Element) -> Result<InfIdeal> {
    if u.is_zero() {
        return Ok(InfIdeal::Zero);
    }
    let top = u.max_slot() + 1;
    let mut rem = u.with_rank(top)?.ord()?;
    let mut k = top;
    while k >= 1 {
        let head = Ordinal::omega_pow(k as u32 - 1);
        if rem < head {
            break;
        }
        rem = head.sub_left(&rem)?;
        k -= 1;
    }
    if k == 0 {
        return Ok(InfIdeal::Whole);
    }
    if rem.is_zero() {
        InfIdeal::tail(k + 1)
    } else {
        InfIdeal::mixed(k, rem)
    }
}

/// Whether `u_∞/I ≅ u_∞/J`.
pub fn iso_factors_inf(a: &InfIdeal, b: &InfIdeal) -> Result<bool> {
    a.validate()?;
    b.validate()?;
    let (Some(la), Some(lb)) = (a.level(), b.level()) else {
        return Ok(a.level().is_none() && b.level().is_none());
    };
    let n = la.max(lb);
    iso_factors(&a.truncate(n)?, &b.truncate(n)?)
}

/// Uniserial dimension of `u_∞`, which is `ω^ω`.
pub fn udim_inf() -> Ordinal {
    Ordinal::top()
}

/// `(is_open, is_closed)` for the matching ideal of `û_∞`.
pub fn classify_closed_open(a: &InfIdeal) -> (bool, bool) {
    match a {
        InfIdeal::Zero => (false, true),
        _ => (true, true),
    }
}

impl fmt::Display for InfIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfIdeal::Whole => write!(f, "Whole"),
            InfIdeal::Tail(n) => write!(f, "U[oo,{n}]"),
            InfIdeal::Mixed(n, l) => write!(f, "I[{}]@{n}+U[oo,{}]", compact(l), n + 1),
            InfIdeal::Zero => write!(f, "Zero"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TailKind {
    /// Every component past `known_to` vanishes.
    ZeroTail,
    /// Nothing is known past `known_to`.
    UnknownTail,
}

/// An element `Σ a_i∂_i` of `û_∞` known exactly up to level `known_to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixElement {
    components: BTreeMap<usize, Polynomial>,
    known_to: usize,
    tail: TailKind,
}

impl PrefixElement {
    pub fn new(components: BTreeMap<usize, Polynomial>, known_to: usize, tail: TailKind) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (i, p) in components {
            if i == 0 {
                return Err(Error::InvalidIndex("levels start at 1".into()));
            }
            if p.max_var() >= i {
                return Err(Error::InvalidIndex(format!("level {i} coefficient {p} is not in P{}", i - 1)));
            }
            if i > known_to {
                return domain(format!("level {i} lies beyond known_to = {known_to}"));
            }
            if !p.is_zero() {
                kept.insert(i, p);
            }
        }
        Ok(Self { components: kept, known_to, tail })
    }

    pub fn from_element(u: &Element) -> Self {
        let mut components: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (b, c) in u.terms() {
            components.entry(b.slot).or_default().add_term(b.alpha.clone(), c.clone());
        }
        components.retain(|_, p| !p.is_zero());
        Self { components, known_to: u.max_slot().max(1), tail: TailKind::ZeroTail }
    }

    /// The finite element this prefix describes, if its tail is zero.
    pub fn to_element(&self, rank: usize) -> Result<Element> {
        if self.tail != TailKind::ZeroTail {
            return domain("an element with unknown tail is not a finite element");
        }
        let terms = self
            .components
            .iter()
            .flat_map(|(&i, p)| p.terms().map(move |(m, c)| (BasisVector { alpha: m.clone(), slot: i }, c.clone())));
        Element::from_terms(rank, terms)
    }

    pub fn known_to(&self) -> usize {
        self.known_to
    }

    pub fn tail(&self) -> TailKind {
        self.tail
    }

    /// Level up to which components are certain; `None` means every level.
    pub fn valid_to(&self) -> Option<usize> {
        match self.tail {
            TailKind::ZeroTail => None,
            TailKind::UnknownTail => Some(self.known_to),
        }
    }

    /// `a_i`, or `None` when level `i` is not known.
    pub fn component(&self, i: usize) -> Option<Polynomial> {
        if self.valid_to().is_some_and(|k| i > k) {
            return None;
        }
        Some(self.components.get(&i).cloned().unwrap_or_default())
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.components.iter().map(|(&i, p)| (i, p))
    }

    /// True iff every known component vanishes.
    pub fn is_zero_to_validity(&self) -> bool {
        self.components.is_empty()
    }

    /// The least level with a nonzero known component.
    pub fn min_level(&self) -> Option<usize> {
        self.components.keys().next().copied()
    }
}

/// `[a, b]` in `û_∞`. Level `j` of the result only involves levels `≤ j`,
/// so it is exact wherever both inputs are.
pub fn bracket_prefix(a: &PrefixElement, b: &PrefixElement) -> PrefixElement {
    let (known_to, tail) = match (a.valid_to(), b.valid_to()) {
        (None, None) => (a.known_to.max(b.known_to), TailKind::ZeroTail),
        (x, y) => (x.into_iter().chain(y).min().unwrap(), TailKind::UnknownTail),
    };
    let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for j in 1..=known_to {
        let mut c = Polynomial::zero();
        if let Some(bj) = b.components.get(&j) {
            for (&i, ai) in a.components.range(..j) {
                c = c.add(&ai.mul(&bj.derivative(i)));
            }
        }
        if let Some(aj) = a.components.get(&j) {
            for (&i, bi) in b.components.range(..j) {
                c = c.sub(&bi.mul(&aj.derivative(i)));
            }
        }
        if !c.is_zero() {
            out.insert(j, c);
        }
    }
    PrefixElement { components: out, known_to, tail }
}

/// `(ad a)^i(b)` for `i = 1..=steps`, where `b = Σ_{m≥0} x_n^m/m!·∂_{n+m}`
/// and `n` is the least level of `a`. Each iterate is checked to be nonzero
/// at some certain level, which shows `ad a` is not locally nilpotent.
pub fn non_nilpotence_witness(a: &PrefixElement, steps: usize) -> Result<Vec<PrefixElement>> {
    let Some(n) = a.min_level() else {
        return match a.tail {
            TailKind::ZeroTail => Err(Error::ZeroElement("non-nilpotence witness")),
            TailKind::UnknownTail => domain(format!("no nonzero level of a is visible up to {}", a.known_to)),
        };
    };
    let depth = match a.tail {
        TailKind::ZeroTail => a.known_to.max(n + steps),
        TailKind::UnknownTail => a.known_to,
    };
    let b: BTreeMap<usize, Polynomial> = (0..=depth - n)
        .map(|m| {
            let coeff = Scalar::one() / factorial(m as u32);
            (n + m, Polynomial::term(Multidegree::var_pow(n, m as u32), coeff))
        })
        .collect();
    let mut cur = PrefixElement::new(b, depth, TailKind::UnknownTail)?;
    let mut out = Vec::with_capacity(steps);
    for i in 1..=steps {
        cur = bracket_prefix(a, &cur);
        if cur.is_zero_to_validity() {
            return domain(format!("(ad a)^{i}(b) vanishes up to level {depth}; extend known_to"));
        }
        out.push(cur.clone());
    }
    Ok(out)
}

impl fmt::Display for PrefixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, p)) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {p}")?;
        }
        let tail = match self.tail {
            TailKind::ZeroTail => "zero",
            TailKind::UnknownTail => "unknown",
        };
        write!(f, "}} known_to={} tail={tail}", self.known_to)
    }
}

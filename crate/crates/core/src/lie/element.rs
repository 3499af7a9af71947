use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::basis::BasisVector;
use crate::error::{domain, Error, Result};
use crate::linalg::SparseVec;
use crate::multidegree::Multidegree;
use crate::ordinal::Ordinal;
use crate::polynomial::Polynomial;
use crate::scalar::{accumulate, factorial, int, write_combination, Scalar};

/// A finite combination of basis vectors, read as an element of `u_rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<BasisVector, Scalar>,
    rank: usize,
}

/// `[X_{α,i}, X_{β,j}]` as a single scaled basis vector, or `None` when it vanishes.
pub fn bracket_basis(a: &BasisVector, b: &BasisVector) -> Option<(BasisVector, Scalar)> {
    use std::cmp::Ordering::*;
    match a.slot.cmp(&b.slot) {
        Equal => None,
        Less => {
            let e = b.alpha.get(a.slot);
            if e == 0 {
                return None;
            }
            let alpha = a.alpha.add(&b.alpha.sub_var(a.slot, 1)?);
            Some((BasisVector { alpha, slot: b.slot }, int(e as i64)))
        }
        Greater => bracket_basis(b, a).map(|(v, c)| (v, -c)),
    }
}

impl Element {
    pub fn zero(rank: usize) -> Self {
        Self { terms: BTreeMap::new(), rank }
    }

    pub fn basis(b: BasisVector, rank: usize) -> Result<Self> {
        Self::from_terms(rank, [(b, Scalar::one())])
    }

    /// `∂_i` in `u_rank`.
    pub fn d(slot: usize, rank: usize) -> Result<Self> {
        Self::basis(BasisVector::new(Multidegree::zero(), slot)?, rank)
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisVector, Scalar)>>(rank: usize, terms: I) -> Result<Self> {
        if rank < 1 {
            return domain("rank must be at least 1");
        }
        let mut out = Self::zero(rank);
        for (b, c) in terms {
            let b = BasisVector::new(b.alpha, b.slot)?;
            if b.slot > rank {
                return Err(Error::InvalidIndex(format!("d{} does not lie in u{rank}", b.slot)));
            }
            accumulate(&mut out.terms, b, c);
        }
        Ok(out)
    }

    /// Rebuilds an element from a sparse vector produced by row reduction.
    pub fn from_sparse(rank: usize, v: SparseVec<BasisVector>) -> Self {
        Self { terms: v, rank }
    }

    pub fn to_sparse(&self) -> SparseVec<BasisVector> {
        self.terms.clone()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The same element viewed in `u_m`, `m ≥ max slot`.
    pub fn with_rank(&self, m: usize) -> Result<Self> {
        if m < self.max_slot() || m < 1 {
            return Err(Error::InvalidIndex(format!("{self} does not lie in u{m}")));
        }
        Ok(Self { terms: self.terms.clone(), rank: m })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BasisVector, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &BasisVector) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest slot index that occurs; 0 for the zero element.
    pub fn max_slot(&self) -> usize {
        self.terms.keys().map(|b| b.slot).max().unwrap_or(0)
    }

    /// Smallest slot index that occurs, which is the slot of the leading term.
    pub fn min_slot(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|b| b.slot)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(BasisVector::total_degree).max().unwrap_or(0)
    }

    fn check_rank(&self, other: &Element) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            accumulate(&mut out.terms, b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.rank);
        }
        Element { terms: self.terms.iter().map(|(b, v)| (b.clone(), v * c)).collect(), rank: self.rank }
    }

    pub fn bracket(&self, other: &Element) -> Result<Element> {
        self.check_rank(other)?;
        let mut out = Element::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((v, c)) = bracket_basis(a, b) {
                    accumulate(&mut out.terms, v, c * ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// The maximal basis vector in the Artinian order and its coefficient.
    pub fn leading_term(&self) -> Result<(BasisVector, Scalar)> {
        self.terms.iter().next_back().map(|(b, c)| (b.clone(), c.clone())).ok_or(Error::ZeroElement("leading term"))
    }

    /// Ordinal degree: the least `λ` with `u ∈ I_λ`.
    pub fn ord(&self) -> Result<Ordinal> {
        let (b, _) = self.terms.iter().next_back().ok_or(Error::ZeroElement("ordinal degree"))?;
        b.ord(self.rank)
    }

    /// `u * p` for the natural action on polynomials.
    pub fn act(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (b, c) in &self.terms {
            let dp = p.derivative(b.slot);
            if !dp.is_zero() {
                out = out.add(&dp.shift(&b.alpha).scale(c));
            }
        }
        out
    }

    /// True iff `ad(a)² = 0` is guaranteed by every term living in `P_{n−1}∂_n`.
    pub fn ad_square_zero(&self) -> bool {
        self.terms.keys().all(|b| b.slot == self.rank)
    }

    /// Iterates `ad(self)` on `v` until it vanishes. Returns the number of
    /// steps and the nonzero values `v, ad(a)v, …` along the way.
    pub fn ad_power_until_zero(&self, v: &Element, cap: usize) -> Result<(usize, Vec<Element>)> {
        self.check_rank(v)?;
        let mut trace = Vec::new();
        let mut cur = v.clone();
        while !cur.is_zero() {
            if trace.len() >= cap {
                return Err(Error::TheoryViolation { what: "ad nilpotency", cap });
            }
            let next = self.bracket(&cur)?;
            trace.push(cur);
            cur = next;
        }
        Ok((trace.len(), trace))
    }

    /// `e^{ad a}(v) = Σ ad(a)^i(v) / i!`, a finite sum.
    pub fn exp_ad(&self, v: &Element, cap: usize) -> Result<Element> {
        let (_, trace) = self.ad_power_until_zero(v, cap)?;
        let mut out = Element::zero(self.rank);
        for (i, t) in trace.iter().enumerate() {
            out = out.add(&t.scale(&(Scalar::one() / factorial(i as u32))))?;
        }
        Ok(out)
    }
}

/// `E_{ij} ↦ x_i∂_j`. Only strictly upper triangular units are accepted,
/// since `x_i∂_i` is not triangular and so lies outside `u_n`.
pub fn embed_ut(n: usize, i: usize, j: usize) -> Result<Element> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::InvalidIndex(format!(
            "E_{{{i},{j}}} in UT_{n}: need 1 <= i < j <= n (x_i d_i is not in u_n)"
        )));
    }
    Element::basis(BasisVector::new(Multidegree::unit(i), j)?, n)
}

/// Generators of the Heisenberg algebra `H_{n−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Heisenberg {
    X(usize),
    Y(usize),
    Z,
}

/// `X_i ↦ x_i∂_n`, `Y_i ↦ ∂_i`, `Z ↦ ∂_n`.
pub fn embed_heisenberg(n: usize, g: Heisenberg) -> Result<Element> {
    let check = |i: usize| {
        if i == 0 || i >= n {
            Err(Error::InvalidIndex(format!("Heisenberg index {i} outside 1..{}", n.saturating_sub(1))))
        } else {
            Ok(i)
        }
    };
    match g {
        Heisenberg::X(i) => Element::basis(BasisVector::new(Multidegree::unit(check(i)?), n)?, n),
        Heisenberg::Y(i) => Element::d(check(i)?, n),
        Heisenberg::Z => Element::d(n, n),
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().rev().map(|(b, c)| (c, b.to_string())))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    alpha: Multidegree,
    slot: usize,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct JsonElement {
    rank: usize,
    terms: Vec<JsonTerm>,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(b, c)| JsonTerm { alpha: b.alpha.clone(), slot: b.slot, coeff: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = JsonElement::deserialize(d)?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let c: Scalar = t.coeff.parse().map_err(D::Error::custom)?;
            terms.push((BasisVector { alpha: t.alpha, slot: t.slot }, c));
        }
        Element::from_terms(j.rank, terms).map_err(D::Error::custom)
    }
}

//! The ideals `I_λ` of `u_n`, one for each ordinal `λ ∈ [0, ω^{n−1}+⋯+ω+1]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lie::{BasisVector, Element};
use crate::multidegree::Multidegree;
use crate::ordinal::Ordinal;

/// `I_λ ⊆ u_n`: the span of the basis vectors of ordinal degree `≤ λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHandle")]
pub struct IdealHandle {
    pub rank: usize,
    pub lambda: Ordinal,
}

#[derive(Deserialize)]
struct RawHandle {
    rank: usize,
    lambda: Ordinal,
}

impl TryFrom<RawHandle> for IdealHandle {
    type Error = Error;
    fn try_from(r: RawHandle) -> Result<Self> {
        IdealHandle::new(r.rank, r.lambda)
    }
}

/// First vectors of an ideal in ascending order, with its dimension when finite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisPrefix {
    pub vectors: Vec<BasisVector>,
    pub finite: bool,
    pub dimension: Option<u64>,
}

/// The lower central series `G, [G,G], [G,[G,G]], …`, which is constant
/// from its second term on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerCentralSeries {
    pub first: IdealHandle,
    pub stable: IdealHandle,
    pub stabilizes_at: usize,
}

impl IdealHandle {
    pub fn new(rank: usize, lambda: Ordinal) -> Result<Self> {
        if rank < 2 {
            return domain(format!("ideals are indexed for u_n with n >= 2, got u{rank}"));
        }
        let top = Ordinal::stack(rank as u32);
        if lambda > top {
            return domain(format!("I[{lambda}] exceeds u{rank} = I[{top}]"));
        }
        Ok(Self { rank, lambda })
    }

    pub fn zero(rank: usize) -> Result<Self> {
        Self::new(rank, Ordinal::zero())
    }

    pub fn whole(rank: usize) -> Result<Self> {
        Self::new(rank, Ordinal::stack(rank as u32))
    }

    pub fn is_whole(&self) -> bool {
        self.lambda == Ordinal::stack(self.rank as u32)
    }

    pub fn contains_basis(&self, b: &BasisVector) -> bool {
        b.slot <= self.rank && b.ord(self.rank).is_ok_and(|o| o <= self.lambda)
    }

    pub fn contains(&self, u: &Element) -> Result<bool> {
        if u.rank() != self.rank {
            return Err(Error::RankMismatch(u.rank(), self.rank));
        }
        Ok(u.is_zero() || u.ord()? <= self.lambda)
    }

    /// The first `min(limit, dim)` basis vectors in ascending order.
    ///
    /// Every basis vector has an immediate successor obtained by raising the
    /// `x₁` exponent, so the finite positions of the well-order are exactly
    /// `x₁^k∂_n`.
    pub fn basis_prefix(&self, limit: usize) -> BasisPrefix {
        let dim = self.lambda.as_u64();
        let take = dim.map_or(limit, |d| limit.min(d as usize));
        let vectors =
            (0..take).map(|k| BasisVector { alpha: Multidegree::var_pow(1, k as u32), slot: self.rank }).collect();
        BasisPrefix { vectors, finite: dim.is_some(), dimension: dim }
    }

    /// The basis vectors of the ideal with `|α| ≤ max_deg`, ascending.
    pub fn basis_in_window(&self, max_deg: u32) -> Vec<BasisVector> {
        BasisVector::enumerate(self.rank, max_deg).into_iter().filter(|b| self.contains_basis(b)).collect()
    }

    /// `Cen_{u_n}(I_λ)`, which is again one of the `I_μ`.
    pub fn centralizer(&self) -> Result<IdealHandle> {
        let n = self.rank as u32;
        let l = &self.lambda;
        if l.is_zero() {
            return domain("the centralizer of I[0] is u_n but is not indexed by the formula; use λ >= 1");
        }
        if *l == Ordinal::one() {
            return IdealHandle::whole(self.rank);
        }
        if self.is_whole() {
            return IdealHandle::new(self.rank, Ordinal::one());
        }
        // λ ∈ (ω^{m−1}, ω^m] for m = 1..n−1
        for m in 1..n {
            if *l <= Ordinal::omega_pow(m) {
                return IdealHandle::new(self.rank, Ordinal::stack_range(n, m));
            }
        }
        // λ ∈ (ω^{n−1}+⋯+ω^{i+1}, ω^{n−1}+⋯+ω^i] for i = n−2..1
        for i in (1..n - 1).rev() {
            if *l <= Ordinal::stack_range(n, i) {
                return IdealHandle::new(self.rank, Ordinal::omega_pow(i));
            }
        }
        unreachable!("λ < ω^{{n−1}}+⋯+ω+1 falls in some band")
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.lambda.as_u64().is_some()
    }
}

/// `(v₁, …, v_k) = I_λ` with `λ = max ord(v_i)`.
pub fn generated_ideal(gens: &[Element]) -> Result<IdealHandle> {
    let Some(first) = gens.first() else {
        return domain("ideal generated by an empty set has no rank");
    };
    let rank = first.rank();
    let mut lambda = Ordinal::zero();
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch(rank, g.rank()));
        }
        if !g.is_zero() {
            lambda = lambda.max(g.ord()?);
        }
    }
    IdealHandle::new(rank, lambda)
}

/// The `2n−1` distinct centralizers of ideals of `u_n`, ascending.
pub fn centralizer_set(n: usize) -> Result<Vec<IdealHandle>> {
    let n32 = n as u32;
    let mut lambdas = vec![Ordinal::one()];
    lambdas.extend((1..n32).map(Ordinal::omega_pow));
    lambdas.extend((1..n32 - 1).rev().map(|m| Ordinal::stack_range(n32, m)));
    lambdas.push(Ordinal::stack(n32));
    lambdas.into_iter().map(|l| IdealHandle::new(n, l)).collect()
}

/// `u_{n,i} = ⊕_{j ≥ i} P_{j−1}∂_j = I_{ω^{n−1}+⋯+ω^{i−1}}`, `1 ≤ i ≤ n+1`.
pub fn u_ni(n: usize, i: usize) -> Result<IdealHandle> {
    if i == 0 || i > n + 1 {
        return Err(Error::InvalidIndex(format!("u_{{{n},{i}}}")));
    }
    IdealHandle::new(n, Ordinal::stack_range(n as u32, i as u32 - 1))
}

/// `u_n ⊃ u_{n,2} ⊃ ⋯ ⊃ u_{n,n} ⊃ 0`.
pub fn derived_series(n: usize) -> Result<Vec<IdealHandle>> {
    (1..=n + 1).map(|i| u_ni(n, i)).collect()
}

/// `G^{(i)} = [G, G^{(i−1)}]`, which is `u_n` and then `u_{n,2}` forever.
/// Some authors call this the upper central series.
pub fn lower_central_series(n: usize) -> Result<LowerCentralSeries> {
    Ok(LowerCentralSeries { first: IdealHandle::whole(n)?, stable: u_ni(n, 2)?, stabilizes_at: 1 })
}

/// `Z^{(λ)}(u_n) = I_λ` for `1 ≤ λ ≤ ω^{n−1}+⋯+ω+1`.
pub fn central_series_term(n: usize, lambda: &Ordinal) -> Result<IdealHandle> {
    if lambda.is_zero() {
        return domain("central series terms are indexed from 1");
    }
    IdealHandle::new(n, lambda.clone())
}

/// Ordinal rendered without spaces, as used inside handles.
pub(crate) fn compact(o: &Ordinal) -> String {
    o.to_string().replace(' ', "")
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I[{}]@u{}", compact(&self.lambda), self.rank)
    }
}

impl fmt::Display for BasisPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vectors.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", v.join(", "))?;
        match self.dimension {
            Some(d) => write!(f, " finite, dim {d}"),
            None => write!(f, " infinite"),
        }
    }
}

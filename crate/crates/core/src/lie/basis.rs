use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multidegree::{write_monomial, Multidegree};
use crate::ordinal::Ordinal;

/// `X_{α,i} = x^α ∂_i` with `α ∈ N^{i−1}`.
///
/// `Ord` is the Artinian well-order: lower slots are larger, and within a
/// slot the exponents compare reverse-lexicographically. It does not depend
/// on the ambient rank, so the last key of any ordered map of basis vectors
/// is the leading term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisVector {
    pub alpha: Multidegree,
    pub slot: usize,
}

impl BasisVector {
    pub fn new(alpha: Multidegree, slot: usize) -> Result<Self> {
        if slot == 0 {
            return Err(Error::InvalidIndex("slot 0 (derivations are d1, d2, ...)".into()));
        }
        if alpha.max_index() >= slot {
            return Err(Error::InvalidIndex(format!(
                "x{} cannot multiply d{slot}; coefficients of d{slot} live in x1..x{}",
                alpha.max_index(),
                slot - 1
            )));
        }
        Ok(Self { alpha, slot })
    }

    /// `∂_i`.
    pub fn d(slot: usize) -> Self {
        Self::new(Multidegree::zero(), slot).expect("slot >= 1")
    }

    /// `x^α∂_i` from raw exponents; panics on invalid input (test helper).
    pub fn of(exps: &[u32], slot: usize) -> Self {
        Self::new(Multidegree::new(exps.to_vec()), slot).expect("valid basis vector")
    }

    pub fn total_degree(&self) -> u32 {
        self.alpha.total_degree()
    }

    /// Position in the well-ordered basis of `u_n`, counted from 1.
    ///
    /// Slot `n` vectors come first, ordered like `α_{n−1}ω^{n−2}+⋯+α₁`; each
    /// smaller slot `i` is preceded by the full blocks of slots `n, …, i+1`,
    /// which contribute `ω^{n−1}+⋯+ω^i`.
    pub fn ord(&self, n: usize) -> Result<Ordinal> {
        if self.slot > n {
            return Err(Error::InvalidIndex(format!("d{} does not lie in u{n}", self.slot)));
        }
        let mut digits: Vec<u64> = (1..self.slot).map(|k| self.alpha.get(k) as u64).collect();
        if digits.is_empty() {
            digits.push(0);
        }
        digits[0] += 1;
        let own = Ordinal::from_digits(&digits);
        Ordinal::stack_range(n as u32, self.slot as u32).add(&own)
    }

    /// Every basis vector of `u_n` with `|α| ≤ max_deg`, ascending.
    pub fn enumerate(n: usize, max_deg: u32) -> Vec<BasisVector> {
        let mut out: Vec<BasisVector> = (1..=n)
            .flat_map(|i| {
                Multidegree::enumerate(i - 1, max_deg).into_iter().map(move |alpha| BasisVector { alpha, slot: i })
            })
            .collect();
        out.sort();
        out
    }
}

impl Ord for BasisVector {
    fn cmp(&self, other: &Self) -> Ordering {
        other.slot.cmp(&self.slot).then_with(|| self.alpha.cmp(&other.alpha))
    }
}

impl PartialOrd for BasisVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.alpha.is_zero() {
            write_monomial(f, 'x', &self.alpha)?;
            write!(f, " ")?;
        }
        write!(f, "d{}", self.slot)
    }
}

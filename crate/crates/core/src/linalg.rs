//! Sparse row reduction over the rationals.
//!
//! Vectors are maps from an ordered key (a basis vector, a monomial, a Weyl
//! monomial) to a coefficient. [`Echelon`] keeps a fully reduced row echelon
//! basis, so the coordinates of a vector in the span are just its values at
//! the pivot keys.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::{accumulate, Scalar};

pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Scalar, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        accumulate(y, k.clone(), a * v);
    }
}

#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    /// pivot key → row with coefficient 1 at the pivot and 0 at other pivots
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = out.get(pivot).cloned() {
                axpy(&mut out, &-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the new pivot, or `None` if `v` was
    /// already in the span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<K> {
        let mut r = self.reduce(v);
        let (pivot, lead) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))?;
        let inv = Scalar::one() / lead;
        for c in r.values_mut() {
            *c *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.rows.insert(pivot.clone(), r);
        Some(pivot)
    }

    /// Coordinates of `v` against [`Echelon::rows`], if `v` is in the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.keys().map(|p| v.get(p).cloned().unwrap_or_else(Scalar::zero)).collect())
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Reduced rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    /// True iff both spans coincide.
    pub fn same_span(&self, other: &Echelon<K>) -> bool {
        self.rank() == other.rank() && other.rows().all(|r| self.contains(r))
    }
}

/// Key used to carry the combination coefficients alongside a vector. Tags
/// sort below every real key so pivots land on real coordinates first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Aug<K> {
    Tag(usize),
    Key(K),
}

/// Expresses vectors in terms of a fixed family, tracking coefficients.
#[derive(Debug, Clone)]
pub struct Solver<K: Ord + Clone> {
    ech: Echelon<Aug<K>>,
    len: usize,
}

impl<K: Ord + Clone> Solver<K> {
    pub fn new(family: &[SparseVec<K>]) -> Self {
        let mut ech = Echelon::new();
        for (i, v) in family.iter().enumerate() {
            let mut aug: SparseVec<Aug<K>> = v.iter().map(|(k, c)| (Aug::Key(k.clone()), c.clone())).collect();
            aug.insert(Aug::Tag(i), Scalar::one());
            ech.insert(&aug);
        }
        Self { ech, len: family.len() }
    }

    /// Coefficients `c` with `Σ c_i family_i = v`, or `None` outside the span.
    /// When the family is dependent, one particular solution is returned.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<Vec<Scalar>> {
        let aug: SparseVec<Aug<K>> = v.iter().map(|(k, c)| (Aug::Key(k.clone()), c.clone())).collect();
        let r = self.ech.reduce(&aug);
        if r.keys().any(|k| matches!(k, Aug::Key(_))) {
            return None;
        }
        // Tag-only rows encode dependencies; zeroing their pivots picks a
        // particular solution. Remaining tag coordinates are −coefficients.
        let mut coeffs = vec![Scalar::zero(); self.len];
        for (k, c) in r {
            if let Aug::Tag(i) = k {
                coeffs[i] = -c;
            }
        }
        Some(coeffs)
    }

    /// A basis of the relations `{c | Σ c_i family_i = 0}`.
    pub fn kernel(&self) -> Vec<SparseVec<usize>> {
        self.ech
            .rows()
            .filter(|r| matches!(r.keys().next_back(), Some(Aug::Tag(_))))
            .map(|r| {
                r.iter()
                    .filter_map(|(k, c)| match k {
                        Aug::Tag(i) => Some((*i, c.clone())),
                        Aug::Key(_) => None,
                    })
                    .collect()
            })
            .collect()
    }
}

/// Basis of the null space of `c ↦ Σ c_i family_i`.
pub fn kernel<K: Ord + Clone>(family: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    Solver::new(family).kernel()
}

use std::collections::BTreeMap;

use serde::Serialize;

use super::basis::BasisVector;
use super::element::Element;
use crate::error::{domain, Error, Result};
use crate::linalg::Echelon;
use crate::scalar::Scalar;

/// A finite-dimensional Lie subalgebra of `u_n`, stored in reduced echelon
/// form against the canonical basis.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteSubalgebra {
    pub rank: usize,
    pub basis: Vec<Element>,
    pub dimension: usize,
    pub nilpotency_class: usize,
    /// `(i, j) ↦` coordinates of `[b_i, b_j]` for `i < j`.
    #[serde(serialize_with = "ser_constants")]
    pub structure_constants: BTreeMap<(usize, usize), Vec<Scalar>>,
}

fn ser_constants<S: serde::Serializer>(
    m: &BTreeMap<(usize, usize), Vec<Scalar>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for ((i, j), c) in m {
        let c: Vec<String> = c.iter().map(ToString::to_string).collect();
        seq.serialize_element(&(i, j, c))?;
    }
    seq.end()
}

fn span(elems: &[Element]) -> Echelon<BasisVector> {
    let mut e = Echelon::new();
    for u in elems {
        e.insert(&u.to_sparse());
    }
    e
}

/// The Lie subalgebra generated by `gens`, with its nilpotency class.
///
/// Termination is a theorem (every finitely generated subalgebra of `u_n` is
/// finite dimensional and nilpotent); `cap` bounds the dimension and the
/// length of the lower central series as a guard.
pub fn subalgebra_closure(gens: &[Element], cap: usize) -> Result<FiniteSubalgebra> {
    let Some(first) = gens.first() else {
        return domain("closure of an empty generating set");
    };
    let rank = first.rank();
    if let Some(g) = gens.iter().find(|g| g.rank() != rank) {
        return Err(Error::RankMismatch(rank, g.rank()));
    }

    let mut ech = Echelon::new();
    let mut basis: Vec<Element> = Vec::new();
    let mut sorted: Vec<&Element> = gens.iter().collect();
    sorted.sort_by(|a, b| a.terms().rev().cmp(b.terms().rev()));
    for g in sorted {
        if ech.insert(&g.to_sparse()).is_some() {
            basis.push(g.clone());
        }
    }
    // Every pair (i, j) with i < j is bracketed exactly once.
    let mut i = 0;
    while i < basis.len() {
        let mut fresh = Vec::new();
        for j in 0..i {
            let b = basis[j].bracket(&basis[i])?;
            if !b.is_zero() && ech.insert(&b.to_sparse()).is_some() {
                fresh.push(b);
            }
        }
        fresh.sort_by(|a, b| a.terms().rev().cmp(b.terms().rev()));
        basis.extend(fresh);
        if basis.len() > cap {
            return Err(Error::TheoryViolation { what: "subalgebra closure dimension", cap });
        }
        i += 1;
    }

    let basis: Vec<Element> = ech.rows().map(|r| Element::from_sparse(rank, r.clone())).collect();
    let mut structure_constants = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let b = basis[i].bracket(&basis[j])?;
            let c = ech
                .coordinates(&b.to_sparse())
                .ok_or(Error::TheoryViolation { what: "closure bracket outside span", cap })?;
            structure_constants.insert((i, j), c);
        }
    }
    let nilpotency_class = nilpotency_class(&basis, cap)?;
    Ok(FiniteSubalgebra { rank, dimension: basis.len(), basis, nilpotency_class, structure_constants })
}

/// Least `c` with `C^{c+1} = 0` for the lower central series
/// `C¹ = g`, `C^{k+1} = [g, C^k]`; 0 for the zero algebra.
pub fn nilpotency_class(basis: &[Element], cap: usize) -> Result<usize> {
    let mut cur: Vec<Element> = basis.to_vec();
    let mut class = 0;
    while !cur.is_empty() {
        class += 1;
        if class > cap {
            return Err(Error::TheoryViolation { what: "lower central series length", cap });
        }
        let mut products = Vec::new();
        for g in basis {
            for c in &cur {
                let b = g.bracket(c)?;
                if !b.is_zero() {
                    products.push(b);
                }
            }
        }
        let next: Vec<Element> =
            span(&products).rows().map(|r| Element::from_sparse(basis[0].rank(), r.clone())).collect();
        if next.len() >= cur.len() && !next.is_empty() {
            return Err(Error::TheoryViolation { what: "lower central series stalled", cap });
        }
        cur = next;
    }
    Ok(class)
}

impl FiniteSubalgebra {
    /// True iff `u` lies in the span of the basis.
    pub fn contains(&self, u: &Element) -> bool {
        span(&self.basis).contains(&u.to_sparse())
    }
}

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::multidegree::{write_monomial, Multidegree};
use crate::scalar::{accumulate, int, write_combination, Scalar};

/// A polynomial in `P_∞ = K[x₁, x₂, …]` with exact rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Multidegree, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Multidegree::zero(), c)
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn monomial(alpha: Multidegree) -> Self {
        Self::term(alpha, int(1))
    }

    pub fn term(alpha: Multidegree, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(alpha, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Multidegree, Scalar)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, alpha: Multidegree, c: Scalar) {
        accumulate(&mut self.terms, alpha, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Multidegree, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &Multidegree) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in the reverse-lexicographic order.
    pub fn leading_monomial(&self) -> Option<&Multidegree> {
        self.terms.keys().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Multidegree::total_degree).max()
    }

    /// Highest variable index that occurs.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Multidegree::max_index).max().unwrap_or(0)
    }

    /// Largest exponent of `x_i` that occurs.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.get(i)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }

    /// Multiplies by the monomial `x^alpha`.
    pub fn shift(&self, alpha: &Multidegree) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.add(alpha), c.clone())).collect() }
    }

    /// `∂p/∂x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e == 0 {
                continue;
            }
            out.add_term(m.sub_var(i, 1).expect("positive exponent"), c * int(e as i64));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(m, c)| (c, MonomialBody(m).to_string()));
        write_combination(f, terms)
    }
}

pub(crate) struct MonomialBody<'a>(&'a Multidegree);

impl fmt::Display for MonomialBody<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, 'x', self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonMono {
    alpha: Multidegree,
    coeff: String,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<JsonMono> =
            self.terms.iter().rev().map(|(m, c)| JsonMono { alpha: m.clone(), coeff: c.to_string() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<JsonMono>::deserialize(d)?;
        let mut p = Polynomial::zero();
        for t in v {
            let c: Scalar = t.coeff.parse().map_err(serde::de::Error::custom)?;
            p.add_term(t.alpha, c);
        }
        Ok(p)
    }
}

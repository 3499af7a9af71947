//! Ordinals below ω^ω in Cantor normal form.
//!
//! Every ideal lattice in this crate is indexed by such ordinals. The value
//! ω^ω itself only ever shows up as a reported uniserial dimension, so it is
//! carried as a separate marker ([`Ordinal::top`]) that can be compared but
//! not used in arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// One summand `coeff·ω^exp` of a Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exp: u32,
    pub coeff: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Strictly decreasing exponents, nonzero coefficients.
    Cnf(Vec<Term>),
    /// ω^ω.
    Top,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordinal {
    repr: Repr,
}

/// The four numbers read off the leading and trailing CNF terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalStructure {
    pub multiplicity: BigUint,
    pub degree: u32,
    pub co_multiplicity: BigUint,
    pub co_degree: u32,
}

impl Ordinal {
    pub fn zero() -> Self {
        Self { repr: Repr::Cnf(Vec::new()) }
    }

    pub fn one() -> Self {
        Self::finite(1u32)
    }

    pub fn top() -> Self {
        Self { repr: Repr::Top }
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        Self::monomial(0, n)
    }

    /// `coeff·ω^exp`.
    pub fn monomial(exp: u32, coeff: impl Into<BigUint>) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        Self { repr: Repr::Cnf(vec![Term { exp, coeff }]) }
    }

    /// ω^k.
    pub fn omega_pow(k: u32) -> Self {
        Self::monomial(k, 1u32)
    }

    /// Builds `Σ coeff·ω^exp` from arbitrary terms; equal exponents are
    /// merged and zero coefficients dropped.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, BigUint)>,
    {
        let mut merged: std::collections::BTreeMap<u32, BigUint> = Default::default();
        for (exp, coeff) in terms {
            *merged.entry(exp).or_default() += coeff;
        }
        let terms =
            merged.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(exp, coeff)| Term { exp, coeff }).collect();
        Self { repr: Repr::Cnf(terms) }
    }

    /// `digits[i]` is the coefficient of ω^i.
    pub fn from_digits(digits: &[u64]) -> Self {
        Self::from_terms(digits.iter().enumerate().map(|(i, &d)| (i as u32, BigUint::from(d))))
    }

    /// ω^{n−1} + ω^{n−2} + ⋯ + ω + 1, the order type of the canonical basis of u_n.
    pub fn stack(n: u32) -> Self {
        assert!(n >= 1, "stack is defined for n >= 1");
        Self::from_terms((0..n).map(|e| (e, BigUint::one())))
    }

    /// ω^{hi−1} + ⋯ + ω^{lo}; zero when `lo >= hi`.
    pub fn stack_range(hi: u32, lo: u32) -> Self {
        Self::from_terms((lo..hi).map(|e| (e, BigUint::one())))
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Cnf(t) if t.is_empty())
    }

    pub fn is_top(&self) -> bool {
        matches!(self.repr, Repr::Top)
    }

    /// The CNF terms in descending exponent order; `None` for ω^ω.
    pub fn terms(&self) -> Option<&[Term]> {
        match &self.repr {
            Repr::Cnf(t) => Some(t),
            Repr::Top => None,
        }
    }

    fn cnf(&self, op: &str) -> Result<&[Term]> {
        match &self.repr {
            Repr::Cnf(t) => Ok(t),
            Repr::Top => domain(format!("w^w is not a valid operand of {op}")),
        }
    }

    /// Coefficient of ω^exp (zero when absent).
    pub fn coeff(&self, exp: u32) -> BigUint {
        self.terms().and_then(|t| t.iter().find(|t| t.exp == exp)).map(|t| t.coeff.clone()).unwrap_or_default()
    }

    /// Coefficient of ω^exp as a machine integer, if it fits.
    pub fn digit(&self, exp: u32) -> Option<u64> {
        self.coeff(exp).to_u64()
    }

    /// Largest exponent present, `None` for zero or ω^ω.
    pub fn leading_exp(&self) -> Option<u32> {
        self.terms().and_then(|t| t.first()).map(|t| t.exp)
    }

    pub fn trailing_exp(&self) -> Option<u32> {
        self.terms().and_then(|t| t.last()).map(|t| t.exp)
    }

    /// `Some(n)` when the ordinal is a natural number.
    pub fn as_natural(&self) -> Option<BigUint> {
        match self.terms()? {
            [] => Some(BigUint::zero()),
            [Term { exp: 0, coeff }] => Some(coeff.clone()),
            _ => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_natural()?.to_u64()
    }

    /// True iff the ordinal is below ω^k.
    pub fn lt_omega_pow(&self, k: u32) -> bool {
        match &self.repr {
            Repr::Top => false,
            Repr::Cnf(t) => t.first().is_none_or(|t| t.exp < k),
        }
    }

    /// Ordinal sum (left terms below the right's leading exponent are absorbed).
    pub fn add(&self, other: &Ordinal) -> Result<Ordinal> {
        let a = self.cnf("add")?;
        let b = other.cnf("add")?;
        let Some(lead) = b.first() else {
            return Ok(self.clone());
        };
        let mut out: Vec<Term> = a.iter().filter(|t| t.exp > lead.exp).cloned().collect();
        let mut rest = b.iter();
        if let Some(same) = a.iter().find(|t| t.exp == lead.exp) {
            out.push(Term { exp: lead.exp, coeff: &same.coeff + &lead.coeff });
            rest.next();
        }
        out.extend(rest.cloned());
        Ok(Ordinal { repr: Repr::Cnf(out) })
    }

    pub fn succ(&self) -> Result<Ordinal> {
        self.add(&Ordinal::one())
    }

    /// The unique `x` with `self + x = other`; requires `self <= other`.
    pub fn sub_left(&self, other: &Ordinal) -> Result<Ordinal> {
        let a = self.cnf("sub_left")?;
        let b = other.cnf("sub_left")?;
        for (k, tb) in b.iter().enumerate() {
            let Some(ta) = a.get(k) else {
                return Ok(Ordinal { repr: Repr::Cnf(b[k..].to_vec()) });
            };
            if ta == tb {
                continue;
            }
            return match ta.exp.cmp(&tb.exp).then_with(|| ta.coeff.cmp(&tb.coeff)) {
                Ordering::Less if ta.exp == tb.exp => {
                    let mut out = vec![Term { exp: tb.exp, coeff: &tb.coeff - &ta.coeff }];
                    out.extend(b[k + 1..].iter().cloned());
                    Ok(Ordinal { repr: Repr::Cnf(out) })
                }
                Ordering::Less => Ok(Ordinal { repr: Repr::Cnf(b[k..].to_vec()) }),
                _ => domain(format!("sub_left: {self} > {other}")),
            };
        }
        if a.len() > b.len() {
            return domain(format!("sub_left: {self} > {other}"));
        }
        Ok(Ordinal::zero())
    }

    /// Splits `self = ω^k·q + r` with `r < ω^k`.
    pub fn divmod_omega_pow(&self, k: u32) -> Result<(Ordinal, Ordinal)> {
        let t = self.cnf("divmod_omega_pow")?;
        let q = t.iter().filter(|t| t.exp >= k).map(|t| Term { exp: t.exp - k, coeff: t.coeff.clone() }).collect();
        let r = t.iter().filter(|t| t.exp < k).cloned().collect();
        Ok((Ordinal { repr: Repr::Cnf(q) }, Ordinal { repr: Repr::Cnf(r) }))
    }

    /// `ω^k · self`.
    pub fn shl_omega(&self, k: u32) -> Result<Ordinal> {
        let t = self.cnf("shl_omega")?;
        let terms = t.iter().map(|t| Term { exp: t.exp + k, coeff: t.coeff.clone() }).collect();
        Ok(Ordinal { repr: Repr::Cnf(terms) })
    }

    /// Multiplicity, degree, co-multiplicity and co-degree.
    pub fn structure(&self) -> Result<OrdinalStructure> {
        let t = self.cnf("structure")?;
        let (Some(first), Some(last)) = (t.first(), t.last()) else {
            return domain("structure of 0 is undefined");
        };
        Ok(OrdinalStructure {
            multiplicity: first.coeff.clone(),
            degree: first.exp,
            co_multiplicity: last.coeff.clone(),
            co_degree: last.exp,
        })
    }

    /// Zero is not treated as a limit.
    pub fn is_limit(&self) -> Result<bool> {
        let t = self.cnf("is_limit")?;
        Ok(t.last().is_some_and(|t| t.exp > 0))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Top, Repr::Top) => Ordering::Equal,
            (Repr::Top, _) => Ordering::Greater,
            (_, Repr::Top) => Ordering::Less,
            (Repr::Cnf(a), Repr::Cnf(b)) => {
                for (x, y) in a.iter().zip(b) {
                    let c = x.exp.cmp(&y.exp).then_with(|| x.coeff.cmp(&y.coeff));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = self.coeff.is_one();
        match (self.exp, one) {
            (0, _) => write!(f, "{}", self.coeff),
            (1, true) => write!(f, "w"),
            (1, false) => write!(f, "w*{}", self.coeff),
            (e, true) => write!(f, "w^{e}"),
            (e, false) => write!(f, "w^{e}*{}", self.coeff),
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Top => write!(f, "w^w"),
            Repr::Cnf(t) if t.is_empty() => write!(f, "0"),
            Repr::Cnf(t) => {
                for (i, term) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{term}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: u32,
    coeff: JsonCoeff,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Small(u64),
    Big(String),
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.repr {
            Repr::Top => s.serialize_str("w^w"),
            Repr::Cnf(terms) => {
                let mut seq = s.serialize_seq(Some(terms.len()))?;
                for t in terms {
                    let coeff = match t.coeff.to_u64() {
                        Some(c) => JsonCoeff::Small(c),
                        None => JsonCoeff::Big(t.coeff.to_string()),
                    };
                    seq.serialize_element(&JsonTerm { exp: t.exp, coeff })?;
                }
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Top(String),
            Terms(Vec<JsonTerm>),
        }
        match Raw::deserialize(d)? {
            Raw::Top(s) if s == "w^w" => Ok(Ordinal::top()),
            Raw::Top(s) => Err(de::Error::custom(format!("unexpected ordinal string {s:?}"))),
            Raw::Terms(terms) => {
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    let coeff = match t.coeff {
                        JsonCoeff::Small(c) => BigUint::from(c),
                        JsonCoeff::Big(s) => s.parse().map_err(de::Error::custom)?,
                    };
                    if coeff.is_zero() {
                        return Err(de::Error::custom("zero coefficient in CNF"));
                    }
                    out.push(Term { exp: t.exp, coeff });
                }
                if out.windows(2).any(|w| w[0].exp <= w[1].exp) {
                    return Err(de::Error::custom("CNF exponents must strictly decrease"));
                }
                Ok(Ordinal { repr: Repr::Cnf(out) })
            }
        }
    }
}

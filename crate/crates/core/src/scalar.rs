use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficients.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(k: u32) -> Scalar {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

/// `C(n, k)` as an integer scalar.
pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    BigRational::from_integer(acc)
}

/// Writes `Σ c·body` in the shared text grammar. An empty body is a bare
/// constant, so its coefficient is always printed.
pub(crate) fn write_combination<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Scalar, String)>,
{
    let mut first = true;
    for (c, body) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        match (first, neg) {
            (true, false) => {}
            (true, true) => write!(f, "-")?,
            (false, false) => write!(f, " + ")?,
            (false, true) => write!(f, " - ")?,
        }
        first = false;
        if body.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{body}")?;
        } else {
            write!(f, "{mag} {body}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Adds `c` to `map[k]`, dropping the entry if it cancels.
pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Serde adapter writing scalar sequences as strings such as `"3/2"`.
pub mod serde_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Scalar;

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|t| t.parse().map_err(serde::de::Error::custom)).collect()
    }
}

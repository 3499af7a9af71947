use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `(α₁, …, α_k)` of a monomial `x^α`.
///
/// Trailing zeros are stripped, so the same vector denotes the same monomial
/// in every `P_n` that contains it. Indices are 1-based to match variable
/// names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Multidegree(exps)
    }

    pub fn zero() -> Self {
        Multidegree(Vec::new())
    }

    /// `e_i`, the exponent of the single variable `x_i`.
    pub fn unit(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    /// `k·e_i`.
    pub fn var_pow(i: usize, k: u32) -> Self {
        assert!(i >= 1, "variables are 1-based");
        let mut v = vec![0; i];
        v[i - 1] = k;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent of `x_i` (1-based).
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Highest variable index with a nonzero exponent; 0 for the unit monomial.
    pub fn max_index(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        let len = self.0.len().max(other.0.len());
        Multidegree::new((1..=len).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// `α − k·e_i`, or `None` if the exponent would go negative.
    pub fn sub_var(&self, i: usize, k: u32) -> Option<Multidegree> {
        let e = self.get(i);
        if e < k {
            return None;
        }
        let mut v = self.0.clone();
        v[i - 1] = e - k;
        Some(Multidegree::new(v))
    }

    pub fn with(&self, i: usize, k: u32) -> Multidegree {
        let mut v = self.0.clone();
        if v.len() < i {
            v.resize(i, 0);
        }
        v[i - 1] = k;
        Multidegree::new(v)
    }

    /// Componentwise `self ≤ other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Multidegree) -> bool {
        (1..=self.0.len()).all(|i| self.get(i) <= other.get(i))
    }

    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        let len = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(len);
        for i in 1..=len {
            v.push(self.get(i).checked_sub(other.get(i))?);
        }
        Some(Multidegree::new(v))
    }

    /// Every exponent vector in `N^vars` of total degree at most `max_deg`.
    pub fn enumerate(vars: usize, max_deg: u32) -> Vec<Multidegree> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; vars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
            if i == cur.len() {
                out.push(Multidegree::new(cur.clone()));
                return;
            }
            for k in 0..=left {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, max_deg, &mut cur, &mut out);
        out.sort();
        out
    }
}

/// Reverse-lexicographic: the highest-index differing exponent decides.
impl Ord for Multidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.0.len().max(other.0.len());
        for i in (1..=len).rev() {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => continue,
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for Multidegree {
    fn from(v: Vec<u32>) -> Self {
        Multidegree::new(v)
    }
}

impl From<Multidegree> for Vec<u32> {
    fn from(m: Multidegree) -> Self {
        m.0
    }
}

/// Writes `x^α` in the shared grammar (`x1^2 x3`), or nothing for the unit.
pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, var: char, m: &Multidegree) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, " ")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{var}{}", i + 1)?;
        } else {
            write!(f, "{var}{}^{e}", i + 1)?;
        }
    }
    Ok(())
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        write_monomial(f, 'x', self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(Multidegree::new(vec![1, 0, 0]), Multidegree::new(vec![1]));
        assert_eq!(Multidegree::new(vec![0, 0]).max_index(), 0);
    }

    #[test]
    fn reverse_lex() {
        let m = |v: Vec<u32>| Multidegree::new(v);
        // x1^5 < x2 < x1 x2 < x2^2
        assert!(m(vec![5]) < m(vec![0, 1]));
        assert!(m(vec![0, 1]) < m(vec![1, 1]));
        assert!(m(vec![9, 1]) < m(vec![0, 2]));
        assert!(m(vec![]) < m(vec![1]));
    }

    #[test]
    fn enumerate_counts() {
        // C(d + v, v)
        assert_eq!(Multidegree::enumerate(2, 3).len(), 10);
        assert_eq!(Multidegree::enumerate(3, 2).len(), 10);
        assert_eq!(Multidegree::enumerate(0, 4), vec![Multidegree::zero()]);
    }
}

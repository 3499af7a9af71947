//! `P_n = K[x₁, …, x_n]` as a `u_n`-module: its submodules `P_{λ,n}`, the
//! monomial enlargements `P′` and `P″`, annihilators and endomorphisms.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::ideals::{compact, IdealHandle};
use crate::multidegree::{write_monomial, Multidegree};
use crate::ordinal::Ordinal;
use crate::polynomial::Polynomial;
use crate::scalar::{int, Scalar};

/// Position of `x^α` in the well-ordered monomials of `P_n`:
/// `α_nω^{n−1} + ⋯ + α₂ω + α₁ + 1`.
pub fn ord_monomial(alpha: &Multidegree, n: usize) -> Result<Ordinal> {
    if alpha.max_index() > n {
        return Err(Error::InvalidIndex(format!("x{} is not a variable of P{n}", alpha.max_index())));
    }
    let mut digits: Vec<u64> = alpha.exps().iter().map(|&e| e as u64).collect();
    if digits.is_empty() {
        digits.push(0);
    }
    digits[0] += 1;
    Ok(Ordinal::from_digits(&digits))
}

/// The monomial `x^α` with `ord_monomial(α) = λ + 1`, i.e. the exponents
/// are the CNF digits of `λ`.
fn digits_monomial(lambda: &Ordinal) -> Multidegree {
    let top = lambda.leading_exp().unwrap_or(0);
    Multidegree::new((0..=top).map(|e| lambda.digit(e).expect("small coefficient") as u32).collect())
}

/// `P_{λ,n}`, the span of the monomials of ordinal degree `≤ λ`, `1 ≤ λ ≤ ω^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSub")]
pub struct SubmoduleHandle {
    pub rank: usize,
    pub lambda: Ordinal,
}

#[derive(Deserialize)]
struct RawSub {
    rank: usize,
    lambda: Ordinal,
}

impl TryFrom<RawSub> for SubmoduleHandle {
    type Error = Error;
    fn try_from(r: RawSub) -> Result<Self> {
        SubmoduleHandle::new(r.rank, r.lambda)
    }
}

/// One block `x_m^{a_m}⋯x_{k+1}^{a_{k+1}} · Σ_{i<count} x_k^i P_{k−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub prefix: Multidegree,
    pub var: usize,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Decomposition {
    Whole,
    Sum(Vec<Summand>),
}

impl SubmoduleHandle {
    pub fn new(rank: usize, lambda: Ordinal) -> Result<Self> {
        if rank < 2 {
            return domain(format!("submodules are indexed for P_n with n >= 2, got P{rank}"));
        }
        if lambda.is_zero() || lambda > Ordinal::omega_pow(rank as u32) {
            return domain(format!("P[{lambda}] is outside [1, w^{rank}]"));
        }
        Ok(Self { rank, lambda })
    }

    pub fn is_whole(&self) -> bool {
        self.lambda == Ordinal::omega_pow(self.rank as u32)
    }

    fn proper(&self, what: &str) -> Result<()> {
        if self.is_whole() {
            return domain(format!("{what} needs λ < w^{}", self.rank));
        }
        Ok(())
    }

    pub fn contains_monomial(&self, alpha: &Multidegree) -> Result<bool> {
        Ok(ord_monomial(alpha, self.rank)? <= self.lambda)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        for (m, _) in p.terms() {
            if !self.contains_monomial(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The monomials of the submodule with total degree `≤ max_deg`.
    pub fn monomials_in_window(&self, max_deg: u32) -> Vec<Multidegree> {
        Multidegree::enumerate(self.rank, max_deg)
            .into_iter()
            .filter(|m| self.contains_monomial(m).unwrap_or(false))
            .collect()
    }

    /// `P_{λ,n} = Σ_{i<α_m} x_m^i P_{m−1} + x_m^{α_m} Σ_{i<α_{m−1}} x_{m−1}^i P_{m−2} + ⋯`.
    pub fn summands(&self) -> Decomposition {
        if self.is_whole() {
            return Decomposition::Whole;
        }
        let top = self.lambda.leading_exp().expect("λ >= 1") as usize + 1;
        let mut prefix = Multidegree::zero();
        let mut out = Vec::new();
        for k in (1..=top).rev() {
            let a = self.lambda.digit(k as u32 - 1).expect("small coefficient") as u32;
            if a > 0 {
                out.push(Summand { prefix: prefix.clone(), var: k, count: a });
                prefix = prefix.with(k, a);
            }
        }
        Decomposition::Sum(out)
    }

    /// `P′_{λ,n} = {p | ∂p/∂x_i ∈ P_{λ,n} ∀i} = P_{λ,n} ⊕ ⨁_{i=j}^n Kθ_i`.
    /// Returns the `θ_i` and `n−j+1`, where `j−1` is the co-degree of `λ`.
    pub fn p_prime(&self) -> Result<(Vec<Multidegree>, usize)> {
        self.proper("P'")?;
        let n = self.rank;
        let alpha = digits_monomial(&self.lambda);
        let j = self.lambda.trailing_exp().expect("λ >= 1") as usize + 1;
        let mut thetas = vec![alpha.clone()];
        for i in j + 1..=n {
            let tail = Multidegree::new((1..=n).map(|k| if k >= i { alpha.get(k) } else { 0 }).collect());
            thetas.push(tail.add(&Multidegree::unit(i)));
        }
        Ok((thetas, n - j + 1))
    }

    /// `P″_{λ,n} = P_{λ,n} ⊕ Kx^α = P_{λ+1,n}`.
    pub fn p_doubleprime(&self) -> Result<(Multidegree, SubmoduleHandle)> {
        self.proper("P''")?;
        let next = SubmoduleHandle::new(self.rank, self.lambda.succ()?)?;
        Ok((digits_monomial(&self.lambda), next))
    }

    /// `ann_{u_n}(P_{λ,n})`; `None` when the submodule is faithful.
    pub fn annihilator(&self) -> Result<Option<IdealHandle>> {
        let n = self.rank as u32;
        if self.lambda == Ordinal::one() {
            return IdealHandle::whole(self.rank).map(Some);
        }
        for m in 1..n {
            if self.lambda <= Ordinal::omega_pow(m) {
                return IdealHandle::new(self.rank, Ordinal::stack_range(n, m)).map(Some);
            }
        }
        Ok(None)
    }
}

impl fmt::Display for SubmoduleHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[{}]@P{}", compact(&self.lambda), self.rank)
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_zero() {
            write_monomial(f, 'x', &self.prefix)?;
            write!(f, " ")?;
        }
        match self.count {
            1 => {}
            2 => write!(f, "{{1, x{}}} ", self.var)?,
            c => write!(f, "{{1, ..., x{}^{}}} ", self.var, c - 1)?,
        }
        write!(f, "P{}", self.var - 1)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decomposition::Whole => write!(f, "whole module"),
            Decomposition::Sum(s) => {
                let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// An endomorphism of the `u_n`-module `P_n`, determined by its restriction
/// `φ′ = Σ λ_j ∂_n^j` to `K[x_n]`.
///
/// With `order = None` the listed coefficients are the whole series. With
/// `order = Some(D)` only `λ₀, …, λ_D` are known, so inputs of `x_n`-degree
/// above `D` are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEndo {
    pub rank: usize,
    #[serde(with = "crate::scalar::serde_vec")]
    pub coeffs: Vec<Scalar>,
    pub order: Option<u32>,
}

/// `ker φ = ⊕_{i<d} P_{n−1} x_n^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndoKernel {
    pub rank: usize,
    pub d: u32,
}

impl SeriesEndo {
    pub fn new(rank: usize, mut coeffs: Vec<Scalar>, order: Option<u32>) -> Result<Self> {
        if rank < 1 {
            return domain("rank must be at least 1");
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if let Some(d) = order {
            if coeffs.len() > d as usize + 1 {
                return domain(format!("{} coefficients exceed the truncation order {d}", coeffs.len()));
            }
        }
        Ok(Self { rank, coeffs, order })
    }

    /// `(∂/∂x_n)^d`.
    pub fn d_power(rank: usize, d: u32) -> Self {
        let mut c = vec![Scalar::zero(); d as usize];
        c.push(int(1));
        Self { rank, coeffs: c, order: None }
    }

    fn coeff(&self, j: usize) -> Scalar {
        self.coeffs.get(j).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `φ′` on a polynomial in `x_n` alone.
    fn restricted(&self, p: &Polynomial) -> Polynomial {
        let n = self.rank;
        let mut out = Polynomial::zero();
        let mut dp = p.clone();
        for j in 0..self.coeffs.len() {
            if dp.is_zero() {
                break;
            }
            out = out.add(&dp.scale(&self.coeff(j)));
            dp = dp.derivative(n);
        }
        out
    }

    /// `φ(x^β x_n^i) = X_{β,n} φ′(x_n^{i+1}/(i+1))`, extended linearly.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let n = self.rank;
        if p.max_var() > n {
            return Err(Error::InvalidIndex(format!("x{} is not a variable of P{n}", p.max_var())));
        }
        let deg = p.degree_in(n);
        if let Some(d) = self.order {
            if deg > d {
                return domain(format!("x{n}-degree {deg} exceeds the truncation order {d}"));
            }
        }
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let i = m.get(n);
            let beta = m.with(n, 0);
            let lifted = Polynomial::term(Multidegree::var_pow(n, i + 1), Scalar::new(1.into(), (i + 1).into()));
            let image = self.restricted(&lifted);
            // X_{β,n} = x^β ∂_n
            out = out.add(&image.derivative(n).shift(&beta).scale(c));
        }
        Ok(out)
    }

    /// `d = ind(φ′)`, the index of the first nonzero coefficient.
    pub fn kernel(&self) -> Result<EndoKernel> {
        let d = self.coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroElement("kernel"))?;
        Ok(EndoKernel { rank: self.rank, d: d as u32 })
    }

    pub fn is_automorphism(&self) -> bool {
        self.coeffs.first().is_some_and(|c| !c.is_zero())
    }
}

impl EndoKernel {
    pub fn contains(&self, p: &Polynomial) -> bool {
        p.is_zero() || p.degree_in(self.rank) < self.d
    }
}

impl fmt::Display for EndoKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "0");
        }
        let n = self.rank;
        let parts: Vec<String> = (0..self.d)
            .map(|i| match i {
                0 => format!("P{}", n - 1),
                1 => format!("P{} x{n}", n - 1),
                _ => format!("P{} x{n}^{i}", n - 1),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

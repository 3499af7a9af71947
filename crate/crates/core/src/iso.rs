//! When is `u_n/I_λ ≅ u_m/I_μ`?
//!
//! Every factor reduces to a normal form: strip the longest prefix
//! `ω^{n−1}+⋯+ω^s` from `λ` (the factor is then `u_s/I_{λ′}`), and inside
//! `u_s` forget multiples of `ω^{s−2}`, which `f_s` kills without changing
//! the algebra. Two factors are isomorphic iff their normal forms agree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::ideals::{compact, IdealHandle};
use crate::lie::{BasisVector, Element};
use crate::ordinal::Ordinal;
use crate::scalar::{accumulate, int};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorSignature {
    /// The factor is finite dimensional of dimension `0` or `1`.
    FiniteDim(u8),
    /// The factor is `u_s/I_ν` with `ν < ω^{s−2}`.
    Residue { s: usize, nu: Ordinal },
}

pub fn canonical_signature(h: &IdealHandle) -> Result<FactorSignature> {
    let top = Ordinal::stack(h.rank as u32);
    if h.lambda > top {
        return domain(format!("I[{}] exceeds u{}", h.lambda, h.rank));
    }
    let mut s = h.rank;
    let mut rem = h.lambda.clone();
    while s >= 2 {
        let head = Ordinal::omega_pow(s as u32 - 1);
        if rem < head {
            break;
        }
        rem = head.sub_left(&rem)?;
        s -= 1;
    }
    if s >= 2 {
        let (_, nu) = rem.divmod_omega_pow(s as u32 - 2)?;
        return Ok(FactorSignature::Residue { s, nu });
    }
    // only 0 or 1 is left once the whole prefix down to ω is gone
    let eps = rem.as_u64().filter(|&e| e <= 1).expect("λ <= stack(n) leaves ε ∈ {0, 1}");
    Ok(FactorSignature::FiniteDim(1 - eps as u8))
}

pub fn iso_factors(h1: &IdealHandle, h2: &IdealHandle) -> Result<bool> {
    Ok(canonical_signature(h1)? == canonical_signature(h2)?)
}

/// Uniserial dimension of `u_n/I_λ`.
pub fn udim_factor(h: &IdealHandle) -> Result<Ordinal> {
    Ok(match canonical_signature(h)? {
        FactorSignature::Residue { s, .. } => Ordinal::stack(s as u32),
        FactorSignature::FiniteDim(d) => Ordinal::finite(d as u64),
    })
}

/// The epimorphism `f_n`: identity on `u_{n−1}`, `ad ∂_{n−1}` on `P_{n−1}∂_n`.
pub fn f_map(u: &Element) -> Result<Element> {
    let n = u.rank();
    if n < 2 {
        return domain("f_n is defined for n >= 2");
    }
    let mut out = BTreeMap::new();
    for (b, c) in u.terms() {
        if b.slot != n {
            accumulate(&mut out, b.clone(), c.clone());
            continue;
        }
        let e = b.alpha.get(n - 1);
        if let Some(alpha) = b.alpha.sub_var(n - 1, 1) {
            accumulate(&mut out, BasisVector { alpha, slot: n }, c * int(e as i64));
        }
    }
    Ok(Element::from_sparse(n, out))
}

/// `ker f_n^i = I_{iω^{n−2}}`.
pub fn f_power_kernel(n: usize, i: u64) -> Result<IdealHandle> {
    if n < 2 || i == 0 {
        return domain(format!("f_power_kernel needs n >= 2 and i >= 1, got n = {n}, i = {i}"));
    }
    IdealHandle::new(n, Ordinal::monomial(n as u32 - 2, i))
}

impl fmt::Display for FactorSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSignature::FiniteDim(d) => write!(f, "FiniteDim({d})"),
            FactorSignature::Residue { s, nu } => write!(f, "Residue(s={s}, nu={})", compact(nu)),
        }
    }
}

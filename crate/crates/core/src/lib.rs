//! The Lie algebras `u_n` of triangular polynomial derivations, their ideals
//! and factors, the polynomial modules `P_n`, and the limit `u_∞`.

pub mod error;
pub mod ideals;
pub mod infinity;
pub mod iso;
pub mod lie;
pub mod linalg;
pub mod multidegree;
pub mod ordinal;
pub mod poly_module;
pub mod polynomial;
pub mod scalar;
pub mod weyl;

pub use error::{Error, Result};
pub use ideals::IdealHandle;
pub use lie::{BasisVector, Element};
pub use multidegree::Multidegree;
pub use ordinal::Ordinal;
pub use polynomial::Polynomial;
pub use scalar::Scalar;

/// Default bound for loops whose termination the theory guarantees.
pub const DEFAULT_CAP: usize = 10_000;

//! The Lie algebras `u_n` of triangular polynomial derivations.

mod basis;
mod closure;
mod element;

pub use basis::BasisVector;
pub use closure::{nilpotency_class, subalgebra_closure, FiniteSubalgebra};
pub use element::{bracket_basis, embed_heisenberg, embed_ut, Element, Heisenberg};

//! Numerical laboratory for the Kato square-root property of sectorial forms
//! `a(u, v) = <(I + iT) u, v>` on `V = C^n` (standard inner product), viewed
//! in the space `H` with inner product `<Q u, v>`, so that the associated
//! operator is `L_H = Q^{-1} (I + iT)`.
//!
//! The crate computes the Kato equivalence constant `kappa` of a pair
//! `(T, Q)`, Cayley/Ritt and functional-calculus diagnostics, positive
//! similarity witnesses, and runs seeded dimension sweeps over instance
//! families.

pub mod certificates;
pub mod diagnostics;
pub mod error;
pub mod factory;
pub mod form;
pub mod harness;
pub mod linalg;
pub mod spectral;

pub use error::{Error, Result};

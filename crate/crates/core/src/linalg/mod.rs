//! Dense complex linear algebra used throughout the crate.

pub mod cholesky;
pub mod eigh;
pub mod expm;
pub mod io;
pub mod lu;
pub mod lyapunov;
pub mod matrix;
pub mod norms;
pub mod random;
pub mod schur;
pub mod sqrtm;
pub mod svd;
pub mod triangular;

pub use eigh::{eigvalsh, hermitian_eig, HermitianEig, PositiveMatrix};
pub use matrix::{ComplexMatrix, HermitianMatrix, C64};
pub use norms::{resolvent_apply, spectral_norm};
pub use schur::{complex_schur, Schur};
pub use sqrtm::sqrtm_principal;
pub use svd::singular_values;

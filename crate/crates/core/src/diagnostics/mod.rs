//! Constants and transforms attached to a form pair.

pub mod calculus;
pub mod cayley;
pub mod kato;
pub mod numrange;
pub mod report;
pub mod ritt;
pub mod sectorial;

pub use calculus::{hinfty_lower, polynomial_bound_lower};
pub use cayley::{cayley_transform, fan_form};
pub use kato::{kato_constants, KatoConstants};
pub use numrange::{numerical_range_boundary, NumericalRange};
pub use report::{diagnose_pair, DiagnosticOptions, DiagnosticsReport};
pub use ritt::{ritt_constants, ExteriorGrid, RittConstants};
pub use sectorial::{sectoriality_profile, LeftHalfPlaneGrid, SectorialProfile};

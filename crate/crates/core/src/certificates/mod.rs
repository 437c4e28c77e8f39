//! Positive witnesses for accretivity and contraction-similarity, and their
//! independent validation.

mod contraction;
mod reweight;
mod sector;
mod slab;
mod validate;

pub use contraction::{contraction_similarity, fan_check, FAN_RESIDUAL_TOL, TRANSFORMED_NORM_TOL};
pub use reweight::{accretive_reweight, reweight_margin, theta_for_witness};
pub use sector::{gauss_legendre, sector_integral_s, spectral_angle, SectorQuadrature};
pub use validate::{validate_certificate, Validation, ValidationTarget};

use crate::linalg::matrix::HermitianMatrix;
use std::fmt;

/// Relative tolerance in `margin >= -VALID_REL_TOL * scale`.
pub const VALID_REL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    AccretiveReweight,
    SectorIntegralS,
    ContractionSimilarity,
    FanForm,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::AccretiveReweight => "accretive_reweight",
            CertificateKind::SectorIntegralS => "sector_integral",
            CertificateKind::ContractionSimilarity => "contraction",
            CertificateKind::FanForm => "fan",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::AccretiveReweight, Self::SectorIntegralS, Self::ContractionSimilarity, Self::FanForm]
            .into_iter()
            .find(|k| k.name() == s)
    }

    /// Whether the witness certifies `Re <Q S (I + iT) u, u> >= 0` (as
    /// opposed to `C* P C <= P`).
    pub fn is_form_kind(self) -> bool {
        matches!(self, CertificateKind::AccretiveReweight | CertificateKind::SectorIntegralS)
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolverTrace {
    pub iterations: usize,
    pub final_objective: f64,
    /// Best feasible `t` after each bisection step.
    pub best_t: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Hermitian witness `S` or `P`. Positive for every certificate the
    /// solvers return; kept Hermitian so tampered witnesses can be replayed.
    pub witness: HermitianMatrix,
    /// Smallest eigenvalue of the certified inequality's slack.
    pub margin: f64,
    /// Condition number of the witness.
    pub cond: f64,
    /// Normalization in the validity test.
    pub scale: f64,
    pub valid: bool,
    /// Sector half-angle of `<Q S (I + iT) u, u>` for form kinds.
    pub theta_certified: Option<f64>,
    pub trace: SolverTrace,
    /// Fan data: `lambda_min(Q)` and the identity residual.
    pub fan_delta: Option<f64>,
    pub fan_residual: Option<f64>,
    /// `||P^{1/2} C P^{-1/2}||_2` for contraction kinds.
    pub transformed_norm: Option<f64>,
}

impl Certificate {
    /// `sqrt(cond(P))`, the similarity constant of a contraction witness.
    pub fn similarity_constant(&self) -> f64 {
        self.cond.sqrt()
    }
}

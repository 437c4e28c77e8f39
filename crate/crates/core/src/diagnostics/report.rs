use super::calculus::{hinfty_lower, polynomial_bound_lower};
use super::cayley::cayley_transform;
use super::kato::kato_constants;
use super::ritt::{ritt_constants, ExteriorGrid};
use super::sectorial::{sectoriality_profile, LeftHalfPlaneGrid};
use crate::error::Result;
use crate::form::{assemble_bundle, FormPair};
use crate::linalg::spectral_norm;
use std::fmt;

/// Which diagnostics to run and with which grids.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticOptions {
    pub ritt: bool,
    pub polynomial: bool,
    pub hinfty: bool,
    pub sector_profile: bool,
    pub power_cap: usize,
    pub exterior_radii: usize,
    pub exterior_args: usize,
    pub profile_radii: usize,
    pub profile_angles: usize,
    pub poly_degree: usize,
    pub poly_trials: usize,
    pub blaschke_products: usize,
    pub blaschke_factors: usize,
    pub seed: u64,
}

impl Default for DiagnosticOptions {
    fn default() -> Self {
        Self {
            ritt: true,
            polynomial: true,
            hinfty: true,
            sector_profile: true,
            power_cap: 1000,
            exterior_radii: 28,
            exterior_args: 64,
            profile_radii: 25,
            profile_angles: 17,
            poly_degree: 8,
            poly_trials: 100,
            blaschke_products: 64,
            blaschke_factors: 4,
            seed: 0,
        }
    }
}

impl DiagnosticOptions {
    /// Only the Kato constants.
    pub fn kato_only() -> Self {
        Self { ritt: false, polynomial: false, hinfty: false, sector_profile: false, ..Self::default() }
    }
}

/// Constants of one pair. Optional fields are `None` when the
/// corresponding diagnostic was not requested.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsReport {
    pub dim: usize,
    pub beta: f64,
    pub theta: f64,
    pub cond_q: f64,
    pub c_minus: f64,
    pub c_plus: f64,
    pub kappa: f64,
    pub ritt_const: Option<f64>,
    pub power_bound: Option<f64>,
    pub ritt_discrete: Option<f64>,
    pub ritt_discrete_argmax: Option<usize>,
    pub poly_bound_lb: Option<f64>,
    pub hinfty_lb: Option<f64>,
    pub sector_profile_sup: Option<f64>,
    pub sector_inverse_sup: Option<f64>,
    pub options: DiagnosticOptions,
}

pub fn diagnose_pair(fp: &FormPair, opts: &DiagnosticOptions) -> Result<DiagnosticsReport> {
    let k = kato_constants(fp)?;
    let mut report = DiagnosticsReport {
        dim: fp.dim(),
        beta: fp.beta(),
        theta: fp.theta(),
        cond_q: fp.cond_q(),
        c_minus: k.c_minus,
        c_plus: k.c_plus,
        kappa: k.kappa,
        ritt_const: None,
        power_bound: None,
        ritt_discrete: None,
        ritt_discrete_argmax: None,
        poly_bound_lb: None,
        hinfty_lb: None,
        sector_profile_sup: None,
        sector_inverse_sup: None,
        options: opts.clone(),
    };
    if opts.ritt || opts.polynomial {
        let c = cayley_transform(fp)?;
        if opts.ritt {
            let grid = ExteriorGrid::standard(opts.exterior_radii, opts.exterior_args)?;
            let r = ritt_constants(&c, opts.power_cap, &grid)?;
            report.ritt_const = Some(r.ritt_const);
            report.power_bound = Some(r.power_bound);
            report.ritt_discrete = Some(r.ritt_discrete);
            report.ritt_discrete_argmax = Some(r.ritt_discrete_argmax);
        }
        if opts.polynomial {
            report.poly_bound_lb = Some(polynomial_bound_lower(&c, opts.poly_degree, opts.poly_trials, opts.seed)?);
        }
    }
    if opts.hinfty || opts.sector_profile {
        let a = assemble_bundle(fp)?.a_op;
        if opts.sector_profile {
            let grid = LeftHalfPlaneGrid::standard(spectral_norm(&a)?, opts.profile_radii, opts.profile_angles)?;
            let p = sectoriality_profile(&a, fp, &grid)?;
            report.sector_profile_sup = Some(p.sup_z_resolvent);
            report.sector_inverse_sup = Some(p.sup_inverse_bound);
        }
        if opts.hinfty {
            report.hinfty_lb = Some(hinfty_lower(&a, opts.blaschke_products, opts.blaschke_factors, opts.seed)?);
        }
    }
    Ok(report)
}

/// Formats an optional value, `NA` when absent.
pub fn fmt_opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

impl fmt::Display for DiagnosticsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| format!("{x:.10e}"));
        writeln!(f, "dim                 {}", self.dim)?;
        writeln!(f, "beta                {:.10e}", self.beta)?;
        writeln!(f, "theta               {:.10e}", self.theta)?;
        writeln!(f, "cond(Q)             {:.6e}", self.cond_q)?;
        writeln!(f, "c_minus             {:.10e}", self.c_minus)?;
        writeln!(f, "c_plus              {:.10e}", self.c_plus)?;
        writeln!(f, "kappa               {:.10e}", self.kappa)?;
        writeln!(f, "ritt_const          {}", o(self.ritt_const))?;
        writeln!(f, "power_bound         {}", o(self.power_bound))?;
        writeln!(f, "ritt_discrete       {} (argmax n = {})", o(self.ritt_discrete), fmt_opt(self.ritt_discrete_argmax))?;
        writeln!(f, "poly_bound_lb       {}", o(self.poly_bound_lb))?;
        writeln!(f, "hinfty_lb           {}", o(self.hinfty_lb))?;
        writeln!(f, "sector_profile_sup  {}", o(self.sector_profile_sup))?;
        writeln!(f, "sector_inverse_sup  {}", o(self.sector_inverse_sup))?;
        let g = &self.options;
        write!(
            f,
            "grids               power cap {}, exterior {}x{}, left half-plane {}x{}, polynomials deg {} x {}, blaschke {}x{}, seed {}",
            g.power_cap,
            g.exterior_radii,
            g.exterior_args,
            g.profile_radii,
            g.profile_angles,
            g.poly_degree,
            g.poly_trials,
            g.blaschke_products,
            g.blaschke_factors,
            g.seed
        )
    }
}

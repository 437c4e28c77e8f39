//! Form pairs `(T, Q)`, the operators they induce, and the `(A, S)`
//! representation of regular accretive forms.
//!
//! Coordinates are chosen so that the real part of the form is the standard
//! inner product: the form is `a(u, v) = <(I + iT) u, v>` and the ambient
//! inner product is `<Q u, v>`.

use crate::error::{Error, Result};
use crate::linalg::io::{read_matrix, write_matrix};
use crate::linalg::lu::{inverse_checked, right_divide};
use crate::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64, I};
use crate::linalg::norms::hermitian_norm;
use crate::linalg::PositiveMatrix;
use std::collections::BTreeMap;
use std::path::Path;

/// Largest accepted condition number of `Q` when forming operators.
pub const MAX_EMBEDDING_COND: f64 = 1e14;

#[derive(Clone, Debug)]
pub struct FormPair {
    t: HermitianMatrix,
    q: PositiveMatrix,
    label: String,
    beta: f64,
    meta: BTreeMap<String, String>,
}

pub fn make_form_pair(t_raw: &ComplexMatrix, q_raw: &ComplexMatrix, label: &str) -> Result<FormPair> {
    if !t_raw.is_square() || !q_raw.is_square() || t_raw.rows() != q_raw.rows() {
        return Err(Error::DimensionMismatch(format!(
            "T is {}x{} but Q is {}x{}",
            t_raw.rows(),
            t_raw.cols(),
            q_raw.rows(),
            q_raw.cols()
        )));
    }
    let t = HermitianMatrix::symmetrized(t_raw);
    let q = PositiveMatrix::new(HermitianMatrix::symmetrized(q_raw))?;
    let beta = hermitian_norm(&t)?;
    Ok(FormPair { t, q, label: label.to_string(), beta, meta: BTreeMap::new() })
}

impl FormPair {
    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    pub fn t(&self) -> &HermitianMatrix {
        &self.t
    }

    pub fn q(&self) -> &PositiveMatrix {
        &self.q
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Sectoriality bound `beta = ||T||_2`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Sector half-angle `arctan(beta)`.
    pub fn theta(&self) -> f64 {
        self.beta.atan()
    }

    pub fn cond_q(&self) -> f64 {
        self.q.condition()
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// `I + iT`, the operator of the form in V coordinates.
    pub fn form_operator(&self) -> ComplexMatrix {
        self.t.scale(I).shift_diag(C64::new(1.0, 0.0))
    }

    /// `I - iT`.
    pub fn adjoint_form_operator(&self) -> ComplexMatrix {
        self.t.scale(-I).shift_diag(C64::new(1.0, 0.0))
    }

    /// `||I + iT||_2 = sqrt(1 + beta^2)`.
    pub fn form_operator_norm(&self) -> f64 {
        (1.0 + self.beta * self.beta).sqrt()
    }

    /// Whether both `T` and `Q` have real entries.
    pub fn is_real(&self) -> bool {
        self.t.is_real() && self.q.is_real()
    }
}

/// The adjoint form has the pair `(-T, Q)`.
pub fn adjoint_pair(fp: &FormPair) -> FormPair {
    FormPair { t: fp.t.neg(), ..fp.clone() }
}

/// The operators induced by a pair.
#[derive(Clone, Debug)]
pub struct OperatorBundle {
    /// `Q^{-1}(I + iT)`, the operator associated with the form on H.
    pub l_h: ComplexMatrix,
    /// `Q (I + iT)^{-1}`.
    pub a_op: ComplexMatrix,
    /// `(I + iT) Q^{-1}`, the coordinate representative of the dual operator.
    pub l_dual_rep: ComplexMatrix,
    /// `Q^{-1}(I - iT)`.
    pub l_h_adjoint: ComplexMatrix,
}

pub fn assemble_bundle(fp: &FormPair) -> Result<OperatorBundle> {
    let cond = fp.cond_q();
    if cond > MAX_EMBEDDING_COND {
        return Err(Error::IllConditionedEmbedding { cond });
    }
    let q_inv = fp.q.inverse();
    let l = fp.form_operator();
    let l_h = q_inv.matrix() * &l;
    let l_dual_rep = &l * q_inv.matrix();
    let a_op = right_divide(fp.q.hermitian().matrix(), &l)?;
    let l_h_adjoint = q_inv.matrix() * &fp.adjoint_form_operator();
    Ok(OperatorBundle { l_h, a_op, l_dual_rep, l_h_adjoint })
}

/// Regular accretive form `a(u, v) = <A S u, S v>` with diagonal `S`.
#[derive(Clone, Debug)]
pub struct AccretiveModel {
    a: ComplexMatrix,
    s_diag: Vec<f64>,
    re_a: PositiveMatrix,
}

impl AccretiveModel {
    pub fn new(a: ComplexMatrix, s_diag: Vec<f64>) -> Result<Self> {
        if !a.is_square() || a.rows() != s_diag.len() {
            return Err(Error::DimensionMismatch(format!(
                "A is {}x{} but S has {} diagonal entries",
                a.rows(),
                a.cols(),
                s_diag.len()
            )));
        }
        if let Some(bad) = s_diag.iter().find(|&&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::BadParameter(format!("S diagonal entries must be positive, got {bad}")));
        }
        let re_a = PositiveMatrix::new(HermitianMatrix::symmetrized(&a)).map_err(|e| match e {
            Error::NotPositive { lambda_min, .. } => Error::NotAccretive { lambda_min },
            other => other,
        })?;
        inverse_checked(&a, 1e14)?;
        Ok(Self { a, s_diag, re_a })
    }

    pub fn dim(&self) -> usize {
        self.s_diag.len()
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn s_diag(&self) -> &[f64] {
        &self.s_diag
    }

    /// Hermitian part of `A`.
    pub fn re_a(&self) -> &PositiveMatrix {
        &self.re_a
    }

    /// `(A - A*) / 2i`.
    pub fn im_a(&self) -> HermitianMatrix {
        HermitianMatrix::symmetrized(&(&self.a - &self.a.adjoint()).scale(C64::new(0.0, -0.5)))
    }
}

/// Pair of the form `<A S u, S v>` in a frame orthonormal for its real part.
///
/// The frame is `x = (Re A)^{1/2} S u`, which differs from the symmetric
/// square-root frame of `S (Re A) S` by a unitary change of coordinates:
/// `T = (Re A)^{-1/2} Im A (Re A)^{-1/2}` and
/// `Q = (Re A)^{-1/2} S^{-2} (Re A)^{-1/2}`.
pub fn from_accretive_model(m: &AccretiveModel) -> Result<FormPair> {
    let r = m.re_a.inv_sqrt();
    let t = &(r.matrix() * m.im_a().matrix()) * r.matrix();
    let s_inv2: Vec<C64> = m.s_diag.iter().map(|s| C64::new(1.0 / (s * s), 0.0)).collect();
    let q = &r.scale_columns(&s_inv2) * r.matrix();
    make_form_pair(&t, &q, "accretive-model")
}

const META_FILE: &str = "meta";

/// Write `T.mat`, `Q.mat` and a `key=value` meta file into `dir`.
pub fn write_pair_dir(dir: &Path, fp: &FormPair) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_matrix(&dir.join("T.mat"), fp.t.matrix())?;
    write_matrix(&dir.join("Q.mat"), fp.q.hermitian().matrix())?;
    let mut meta = fp.meta.clone();
    meta.insert("dim".into(), fp.dim().to_string());
    meta.insert("label".into(), fp.label.clone());
    let text: String = meta.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
    std::fs::write(dir.join(META_FILE), text)?;
    Ok(())
}

pub fn read_pair_dir(dir: &Path) -> Result<FormPair> {
    let t = read_matrix(&dir.join("T.mat"))?;
    let q = read_matrix(&dir.join("Q.mat"))?;
    let meta = match std::fs::read_to_string(dir.join(META_FILE)) {
        Ok(text) => parse_meta(&text)?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
        Err(e) => return Err(e.into()),
    };
    let label = meta.get("label").cloned().unwrap_or_else(|| dir.display().to_string());
    let mut fp = make_form_pair(&t, &q, &label)?;
    if let Some(d) = meta.get("dim") {
        if d.parse::<usize>().ok() != Some(fp.dim()) {
            return Err(Error::DimensionMismatch(format!("meta says dim={d} but matrices are {0}x{0}", fp.dim())));
        }
    }
    for (k, v) in meta {
        if k != "dim" && k != "label" {
            fp.meta.insert(k, v);
        }
    }
    Ok(fp)
}

pub fn parse_meta(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

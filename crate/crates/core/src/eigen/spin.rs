//! Spin of eigentopes: least `q` with `X^q = λ_q·Id`, pseudo-orthogonality
//! of the normalized cycle and conformal scaling of the metric.

use std::fmt;

use nalgebra::Matrix4;
use serde::Serialize;

use crate::error::{div, Error, Result};
use crate::metric::gram_of;
use crate::symbols::ESymbol4;
use crate::words::{word_matrix_limit, Context, Word};

#[derive(Debug, Clone, Copy)]
pub struct SpinConfig {
    pub max_q: u32,
    /// relative proportionality-to-identity tolerance
    pub tol: f64,
    /// reject even q with negative λ_q instead of flagging it
    pub strict: bool,
}

impl Default for SpinConfig {
    fn default() -> Self {
        SpinConfig {
            max_q: 32,
            tol: 1e-7,
            strict: false,
        }
    }
}

/// `J = (q − 1)/2` as text (`"3/2"`, `"2"`).
pub fn spin_text(q: u32) -> String {
    let n = q - 1;
    if n.is_multiple_of(2) {
        format!("{}", n / 2)
    } else {
        format!("{n}/2")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinResult {
    pub word: String,
    pub evec: [f64; 3],
    pub q: u32,
    pub lambda_q: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub det: f64,
    /// relative | |λ_q|^{4/q} − |det X| |
    pub det_residual: f64,
    /// ‖U·G·Uᵀ − G‖ / ‖G‖ for the normalized cycle U
    pub ortho_residual: Option<f64>,
    /// metric scale of one application
    pub mu: Option<f64>,
    /// relative | μ − |λ_q|^{2/q} |
    pub mu_residual: Option<f64>,
    /// frame chain evaluated as a limit at a removable singularity
    pub limit: bool,
    /// even q with λ_q < 0: U is normalized by |λ_q|^{1/q} and U^q = −Id
    pub even_negative: bool,
}

impl fmt::Display for SpinResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} lambda={} J={}",
            self.q,
            crate::symbols::fmt_num(self.lambda_q),
            spin_text(self.q)
        )
    }
}

/// Off-diagonal and diagonal-spread test for `Y ∝ Id`.
pub fn proportional_to_identity(y: &Matrix4<f64>, tol: f64) -> Option<f64> {
    let scale = y.amax();
    if !(scale > 0.0) || !scale.is_finite() {
        return None;
    }
    let d = y.diagonal();
    let mut off: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                off = off.max(y[(i, j)].abs());
            }
        }
    }
    let dmax = d.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v));
    let dmin = d.iter().fold(f64::INFINITY, |m, v| m.min(*v));
    let dabs = d.amax();
    (off < tol * scale && dmax - dmin < tol * dabs).then(|| d.mean())
}

fn real_root(lambda: f64, q: u32) -> f64 {
    let r = lambda.abs().powf(1.0 / q as f64);
    if lambda < 0.0 && q % 2 == 1 {
        -r
    } else {
        r
    }
}

fn frame_matrix(w: &Word, evec: ESymbol4) -> Result<(Matrix4<f64>, bool)> {
    if w.context == Context::E3 {
        return Err(Error::InvalidArgument("spin needs a 4-dimensional word".into()));
    }
    let lm = word_matrix_limit(&w.in_context(Context::P4), evec)?;
    Ok((lm.matrix, lm.limit))
}

/// Spin data of a word at one of its fixed points.
pub fn spin(w: &Word, evec: ESymbol4, cfg: &SpinConfig) -> Result<SpinResult> {
    let (x, limit) = frame_matrix(w, evec)?;
    let mut y = Matrix4::identity();
    let mut found = None;
    for q in 1..=cfg.max_q {
        y = x * y;
        if let Some(l) = proportional_to_identity(&y, cfg.tol) {
            found = Some((q, l));
            break;
        }
    }
    let Some((q, lambda_q)) = found else {
        return Err(Error::NoFiniteQ { max_q: cfg.max_q });
    };
    let even_negative = q % 2 == 0 && lambda_q < 0.0;
    if even_negative && cfg.strict {
        return Err(Error::EvenQNegativeLambda { q, lambda: lambda_q });
    }
    let det = x.determinant();
    let det_residual = (lambda_q.abs().powf(4.0 / q as f64) - det.abs()).abs() / det.abs();
    let u = x / real_root(lambda_q, q);
    let (ortho_residual, mu, mu_residual) = match gram_of(&evec, 1.0) {
        Ok(g) => {
            let gn = g.0.amax();
            let ortho = (u * g.0 * u.transpose() - g.0).amax() / gn;
            let conf = conformal_from(&x, &g.0);
            let want = lambda_q.abs().powf(2.0 / q as f64);
            (Some(ortho), Some(conf.mu), Some((conf.mu - want).abs() / want))
        }
        Err(_) => (None, None, None),
    };
    Ok(SpinResult {
        word: crate::words::render(w),
        evec: evec.coords(),
        q,
        lambda_q,
        j: (q as f64 - 1.0) / 2.0,
        det,
        det_residual,
        ortho_residual,
        mu,
        mu_residual,
        limit,
        even_negative,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConformalReport {
    /// least-squares scalar with `X·G·Xᵀ ≈ μ·G`
    pub mu: f64,
    /// ‖X·G·Xᵀ − μ·G‖ / ‖μ·G‖
    pub conformal_residual: f64,
    /// relative | μ² − |det X| |
    pub det_residual: f64,
}

fn conformal_from(x: &Matrix4<f64>, g: &Matrix4<f64>) -> ConformalReport {
    let img = x * g * x.transpose();
    let mu = img.dot(g) / g.dot(g);
    let conformal_residual = (img - g * mu).amax() / (g.amax() * mu.abs());
    let det = x.determinant().abs();
    ConformalReport {
        mu,
        conformal_residual,
        det_residual: (mu * mu - det).abs() / det,
    }
}

/// Check `X·G·Xᵀ = μ·G` and `μ² = |det X|` at a fixed point.
pub fn conformal_check(w: &Word, evec: ESymbol4) -> Result<ConformalReport> {
    let (x, _) = frame_matrix(w, evec)?;
    let g = gram_of(&evec, 1.0)?;
    Ok(conformal_from(&x, &g.0))
}

/// Frame scalar of the sixfold vertex reflection, `A⁶ = λ·Id`.
#[allow(non_snake_case)]
pub fn lambda_sixfold_A(e: ESymbol4) -> Result<f64> {
    let [x, d, h] = e.coords();
    let num = -(1.0 - x - d) * (1.0 - d - h);
    div(num, x * d * h * (1.0 - x - d - h + x * h), "<A>^6 P4", "εδη(1−ε−δ−η+εη)")
}

//! Metric tensors of the natural frame `{p0..p3}` and of the orthogonal frame
//! `{p3, ³R2, ²R1, ¹R0}`, signature classification and explicit frames.

use std::fmt;

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbols::{e_to_h, h_to_rho, rho_to_e, ESymbol4, HSymbol, RhoVector};

/// Default relative tolerance for zero eigenvalues.
pub const SIGNATURE_TOL: f64 = 1e-9;

/// Symmetric 4×4 metric tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramMatrix(pub Matrix4<f64>);

impl GramMatrix {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.0[(0, 0)], self.0[(1, 1)], self.0[(2, 2)], self.0[(3, 3)]]
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.0 - self.0.transpose()).amax() <= tol
    }

    /// Max deviation from the natural pattern `g(i,j) = ρ_max(i,j)` built
    /// from the diagonal.
    pub fn natural_form_residual(&self) -> f64 {
        let d = self.diagonal();
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[(i, j)] - d[i.max(j)]).abs());
            }
        }
        worst
    }

    pub fn rho(&self) -> RhoVector {
        let d = self.diagonal();
        RhoVector::new(d[0], d[1], d[2], d[3])
    }
}

/// Natural-frame metric: entry `(i, j)` is `ρ_max(i,j)`.
pub fn gram_natural(rho: &RhoVector) -> GramMatrix {
    GramMatrix(Matrix4::from_fn(|i, j| rho.rho[i.max(j)]))
}

/// Natural-frame metric of an E-symbol at scale `ρ0`.
pub fn gram_of(e: &ESymbol4, rho0: f64) -> Result<GramMatrix> {
    Ok(gram_natural(&h_to_rho(&e_to_h(e)?, rho0)?))
}

/// Diagonal metric of the orthogonal frame:
/// `ρ0·diag(1/α, 1/β − 1/α, 1/γ − 1/β, 1 − 1/γ)`.
pub fn gram_orthogonal(h: &HSymbol, rho0: f64) -> Result<GramMatrix> {
    for (v, factor) in [(h.alpha, "α"), (h.beta, "β"), (h.gamma, "γ")] {
        if v == 0.0 {
            return Err(Error::DegenerateSymbol {
                context: "orthogonal metric",
                factor,
            });
        }
    }
    let (ia, ib, ig) = (1.0 / h.alpha, 1.0 / h.beta, 1.0 / h.gamma);
    Ok(GramMatrix(Matrix4::from_diagonal(&Vector4::new(
        rho0 * ia,
        rho0 * (ib - ia),
        rho0 * (ig - ib),
        rho0 * (1.0 - ig),
    ))))
}

/// The constant symmetric change-of-coordinates matrix between the natural
/// and orthogonal frames.
pub fn basis_change_matrix() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, 1.0, -1.0, //
        0.0, 1.0, -1.0, 0.0, //
        1.0, -1.0, 0.0, 0.0,
    )
}

/// `B · gp · B`; diagonal whenever `gp` has the natural form.
pub fn verify_basis_change(gp: &GramMatrix) -> GramMatrix {
    let b = basis_change_matrix();
    GramMatrix(b * gp.0 * b)
}

/// Eigenvalue sign counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignatureLabel {
    Euclidean,
    Minkowski,
    Degenerate,
    Other,
}

impl fmt::Display for SignatureLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignatureLabel::Euclidean => "EUCLIDEAN",
            SignatureLabel::Minkowski => "MINKOWSKI",
            SignatureLabel::Degenerate => "DEGENERATE",
            SignatureLabel::Other => "OTHER",
        };
        f.write_str(s)
    }
}

impl Signature {
    pub fn label(&self) -> SignatureLabel {
        match (self.plus, self.minus, self.zero) {
            (_, _, z) if z > 0 => SignatureLabel::Degenerate,
            (4, 0, 0) => SignatureLabel::Euclidean,
            (1, 3, 0) => SignatureLabel::Minkowski,
            _ => SignatureLabel::Other,
        }
    }

    /// Sign string such as `(+−−−)`.
    pub fn signs(&self) -> String {
        let mut s = String::from("(");
        s.push_str(&"+".repeat(self.plus));
        s.push_str(&"-".repeat(self.minus));
        s.push_str(&"0".repeat(self.zero));
        s.push(')');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub signature: Signature,
    pub label: SignatureLabel,
    /// ascending
    pub eigenvalues: [f64; 4],
    /// `α > β > γ > 1` (only for the H-symbol overload)
    pub euclidean_chain: Option<bool>,
    /// `0 < α < β < γ < 1` (only for the H-symbol overload)
    pub minkowski_chain: Option<bool>,
}

/// Count eigenvalue signs; `|λ| < tol·max|λ|` counts as zero.
pub fn classify_signature(g: &GramMatrix, tol: f64) -> SignatureReport {
    let sym = (g.0 + g.0.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym).eigenvalues;
    let mut ev = [eig[0], eig[1], eig[2], eig[3]];
    ev.sort_by(|a, b| a.total_cmp(b));
    let scale = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cut = tol * scale;
    let mut sig = Signature {
        plus: 0,
        minus: 0,
        zero: 0,
    };
    for &v in &ev {
        if v.abs() <= cut || scale == 0.0 {
            sig.zero += 1;
        } else if v > 0.0 {
            sig.plus += 1;
        } else {
            sig.minus += 1;
        }
    }
    SignatureReport {
        signature: sig,
        label: sig.label(),
        eigenvalues: ev,
        euclidean_chain: None,
        minkowski_chain: None,
    }
}

/// Signature of the orthogonal metric of an H-symbol (ρ0 = 1) together with
/// the direct chain tests.
pub fn classify_hsymbol(h: &HSymbol, tol: f64) -> Result<SignatureReport> {
    let g = gram_orthogonal(h, 1.0)?;
    let mut rep = classify_signature(&g, tol);
    rep.euclidean_chain = Some(h.euclidean_chain());
    rep.minkowski_chain = Some(h.minkowski_chain());
    Ok(rep)
}

/// Explicit coordinates of the natural frame in an ambient basis whose metric
/// is `diag(ambient)` with entries ±1.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameState {
    /// row i = coordinates of pᵢ
    pub coords: Matrix4<f64>,
    pub ambient: Vector4<f64>,
    pub gram: GramMatrix,
    pub esym: ESymbol4,
}

impl FrameState {
    pub fn dot(&self, a: &Vector4<f64>, b: &Vector4<f64>) -> f64 {
        a.component_mul(&self.ambient).dot(b)
    }

    /// `pᵢ` for i in 0..=4 (p4 = 0 is the polytope center).
    pub fn p(&self, i: usize) -> Vector4<f64> {
        if i == 4 {
            Vector4::zeros()
        } else {
            self.coords.row(i).transpose()
        }
    }

    /// `ⁱRⱼ = pⱼ − pᵢ` for `0 ≤ j < i ≤ 4`.
    pub fn cell_vector(&self, i: usize, j: usize) -> Vector4<f64> {
        assert!(j < i && i <= 4, "cell vector needs 0 <= j < i <= 4");
        self.p(j) - self.p(i)
    }

    /// Gram matrix recomputed from the coordinates.
    pub fn recomputed_gram(&self) -> GramMatrix {
        let m = Matrix4::from_diagonal(&self.ambient);
        GramMatrix(self.coords * m * self.coords.transpose())
    }
}

/// Build explicit frame coordinates for a Euclidean or Minkowski polytope.
pub fn build_frame(h: &HSymbol, rho0: f64) -> Result<FrameState> {
    let ortho = gram_orthogonal(h, rho0)?;
    let rep = classify_signature(&ortho, SIGNATURE_TOL);
    match rep.label {
        SignatureLabel::Euclidean | SignatureLabel::Minkowski => {}
        other => {
            return Err(Error::UnsupportedSignature(format!(
                "{other} {}",
                rep.signature.signs()
            )))
        }
    }
    let d = ortho.diagonal();
    let ambient = Vector4::from_fn(|i, _| d[i].signum());
    let len = Vector4::from_fn(|i, _| d[i].abs().sqrt());
    // orthogonal frame {p3, ³R2, ²R1, ¹R0} on the ambient axes
    let axis = |k: usize| {
        let mut v = Vector4::zeros();
        v[k] = len[k];
        v
    };
    let p3 = axis(0);
    let p2 = p3 + axis(1);
    let p1 = p2 + axis(2);
    let p0 = p1 + axis(3);
    let coords = Matrix4::from_rows(&[
        p0.transpose(),
        p1.transpose(),
        p2.transpose(),
        p3.transpose(),
    ]);
    let rho = h_to_rho(h, rho0)?;
    let esym = rho_to_e(&rho)?;
    Ok(FrameState {
        coords,
        ambient,
        gram: gram_natural(&rho),
        esym,
    })
}

/// `v − ((v,v)/(u,u))·u`: removes the projection of `v` onto `u` under the
/// scalar-product structure `(v, u) = (v, v)`.
pub fn complementary(
    v: &Vector4<f64>,
    u: &Vector4<f64>,
    dot: impl Fn(&Vector4<f64>, &Vector4<f64>) -> f64,
) -> Result<Vector4<f64>> {
    let uu = dot(u, u);
    if uu == 0.0 {
        return Err(Error::DegenerateSymbol {
            context: "complementary vector",
            factor: "(ᵏRᵢ)²",
        });
    }
    Ok(v - u * (dot(v, v) / uu))
}

/// Complementary 3-index vector `ⁱᵏrⱼ` for `0 ≤ i < j < k ≤ 4`.
pub fn r_vector(frame: &FrameState, i: usize, j: usize, k: usize) -> Result<Vector4<f64>> {
    if !(i < j && j < k && k <= 4) {
        return Err(Error::InvalidArgument(format!(
            "r-vector indices must satisfy 0 <= i < j < k <= 4, got ({i},{j},{k})"
        )));
    }
    let kj = frame.cell_vector(k, j);
    let ki = frame.cell_vector(k, i);
    complementary(&kj, &ki, |a, b| frame.dot(a, b))
}

//! Conversions among f-symbols, E-symbols, H-symbols and ρ-vectors.
//!
//! An f-symbol `{f1, ..., f(n-1)}` is the (possibly non-integer) Schläfli
//! symbol. The E-symbol holds `cos²(π/fᵢ)`, the H-symbol holds the ratios
//! `ρ0/ρ3, ρ0/ρ2, ρ0/ρ1` of the scalar squares `ρᵢ = (pᵢ)²` of the natural
//! frame vectors. All quantities are plain `f64`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{div, Error, Result};

/// Default absolute comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Schläfli symbol with real entries; `f64::INFINITY` is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct FSymbol {
    entries: Vec<f64>,
}

impl FSymbol {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() || entries.len() > 3 {
            return Err(Error::InvalidArgument(format!(
                "f-symbol needs 1 to 3 entries, got {}",
                entries.len()
            )));
        }
        for (index, &value) in entries.iter().enumerate() {
            if value.is_nan() || value <= 1.0 {
                return Err(Error::InvalidSymbol { index, value });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Dimension of the polytope (number of entries + 1).
    pub fn dimension(&self) -> usize {
        self.entries.len() + 1
    }
}

impl fmt::Display for FSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_num(*v))?;
        }
        write!(f, "}}")
    }
}

/// E-symbol of a 3-dimensional polytope `[ε, δ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ESymbol3 {
    pub epsilon: f64,
    pub delta: f64,
}

impl ESymbol3 {
    pub const fn new(epsilon: f64, delta: f64) -> Self {
        Self { epsilon, delta }
    }

    pub fn coords(&self) -> [f64; 2] {
        [self.epsilon, self.delta]
    }
}

/// E-symbol of a 4-dimensional polytope `[ε, δ, η]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ESymbol4 {
    pub epsilon: f64,
    pub delta: f64,
    pub eta: f64,
}

impl ESymbol4 {
    pub const fn new(epsilon: f64, delta: f64, eta: f64) -> Self {
        Self {
            epsilon,
            delta,
            eta,
        }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.epsilon, self.delta, self.eta]
    }

    pub fn from_slice(c: &[f64]) -> Self {
        Self::new(c[0], c[1], c[2])
    }
}

/// Either kind of E-symbol, for context-generic routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ESymbol {
    E3(ESymbol3),
    E4(ESymbol4),
}

impl ESymbol {
    pub fn from_coords(c: &[f64]) -> Result<Self> {
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "E-symbol components must be finite".into(),
            ));
        }
        match c.len() {
            2 => Ok(ESymbol::E3(ESymbol3::new(c[0], c[1]))),
            3 => Ok(ESymbol::E4(ESymbol4::new(c[0], c[1], c[2]))),
            n => Err(Error::InvalidArgument(format!(
                "E-symbol needs 2 or 3 components, got {n}"
            ))),
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        match self {
            ESymbol::E3(e) => e.coords().to_vec(),
            ESymbol::E4(e) => e.coords().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ESymbol::E3(_) => 2,
            ESymbol::E4(_) => 3,
        }
    }

    /// Max-norm distance; `inf` when dimensions differ.
    pub fn distance(&self, other: &ESymbol) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs_diff(&self.coords(), &other.coords())
    }
}

impl From<ESymbol3> for ESymbol {
    fn from(e: ESymbol3) -> Self {
        ESymbol::E3(e)
    }
}

impl From<ESymbol4> for ESymbol {
    fn from(e: ESymbol4) -> Self {
        ESymbol::E4(e)
    }
}

impl fmt::Display for ESymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join_nums(&self.coords()))
    }
}

impl fmt::Display for ESymbol4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ESymbol::E4(*self).fmt(f)
    }
}

impl fmt::Display for ESymbol3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ESymbol::E3(*self).fmt(f)
    }
}

/// H-symbol `[α, β, γ] = [ρ0/ρ3, ρ0/ρ2, ρ0/ρ1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HSymbol {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl HSymbol {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// Chain `α > β > γ > 1`: the orthogonal metric is Euclidean.
    pub fn euclidean_chain(&self) -> bool {
        self.alpha > self.beta && self.beta > self.gamma && self.gamma > 1.0
    }

    /// Chain `0 < α < β < γ < 1`: signature (+−−−) when ρ0 > 0.
    pub fn minkowski_chain(&self) -> bool {
        0.0 < self.alpha && self.alpha < self.beta && self.beta < self.gamma && self.gamma < 1.0
    }
}

impl fmt::Display for HSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join_nums(&self.coords()))
    }
}

/// Scalar squares `ρᵢ = (pᵢ)²` of the natural frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoVector {
    pub rho: [f64; 4],
}

impl RhoVector {
    pub const fn new(rho0: f64, rho1: f64, rho2: f64, rho3: f64) -> Self {
        Self {
            rho: [rho0, rho1, rho2, rho3],
        }
    }
}

impl fmt::Display for RhoVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join_nums(&self.rho))
    }
}

/// Vertex/edge/face counts of a (possibly statistical) 3-D polytope `{m, i}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoneycombStats {
    /// vertices
    pub y: f64,
    /// edges
    pub x: f64,
    /// faces
    pub n: f64,
    /// edges per face
    pub m: f64,
    /// vertex index (faces per vertex)
    pub i: f64,
}

impl HoneycombStats {
    /// Largest violation of `i·y = 2x = m·n` and `y − x + n = 2`.
    pub fn incidence_residual(&self) -> f64 {
        let iy = self.i * self.y;
        let two_x = 2.0 * self.x;
        let mn = self.m * self.n;
        let euler = self.y - self.x + self.n - 2.0;
        (iy - two_x)
            .abs()
            .max((two_x - mn).abs())
            .max(euler.abs())
    }
}

fn cos2_pi_over(f: f64) -> f64 {
    if f.is_infinite() {
        1.0
    } else {
        let c = (PI / f).cos();
        c * c
    }
}

/// Componentwise `cos²(π/fᵢ)`; `+∞` maps to 1.
pub fn f_to_e(f: &FSymbol) -> Result<ESymbol> {
    let c: Vec<f64> = f.entries().iter().map(|&v| cos2_pi_over(v)).collect();
    match c.len() {
        2 | 3 => ESymbol::from_coords(&c),
        _ => Err(Error::InvalidArgument(
            "E-symbols exist for 3- and 4-dimensional polytopes only".into(),
        )),
    }
}

/// Inverse of [`f_to_e`]: `fᵢ = π / arccos(√εᵢ)`, with component 1 ↦ `+∞`.
pub fn e_to_f(e: &ESymbol) -> Result<FSymbol> {
    let entries = e
        .coords()
        .iter()
        .enumerate()
        .map(|(index, &value)| component_to_f(value).ok_or(Error::NonRealSymbol { index, value }))
        .collect::<Result<Vec<_>>>()?;
    Ok(FSymbol { entries })
}

/// Single-component inverse; `None` when the component lies outside (0, 1].
pub fn component_to_f(value: f64) -> Option<f64> {
    if !(value > 0.0 && value <= 1.0) {
        return None;
    }
    if value == 1.0 {
        return Some(f64::INFINITY);
    }
    Some(PI / value.sqrt().acos())
}

/// H-symbol from an E-symbol.
pub fn e_to_h(e: &ESymbol4) -> Result<HSymbol> {
    let ESymbol4 {
        epsilon: x,
        delta: d,
        eta: h,
    } = *e;
    if x * d * h == 0.0 {
        return Err(Error::DegenerateSymbol {
            context: "E→H",
            factor: "εδη",
        });
    }
    if x * (1.0 - h) == 0.0 {
        return Err(Error::DegenerateSymbol {
            context: "E→H",
            factor: "ε(1−η)",
        });
    }
    let w = 1.0 - d - h;
    Ok(HSymbol {
        alpha: (1.0 - x - d) * w / (x * d * h),
        beta: (1.0 - x) * w / (x * d),
        gamma: w / (x * (1.0 - h)),
    })
}

fn degenerate(factor: &'static str) -> Error {
    Error::DegenerateSymbol {
        context: "ρ→E",
        factor,
    }
}

/// E-symbol from the scalar squares of the natural frame.
pub fn rho_to_e(rho: &RhoVector) -> Result<ESymbol4> {
    let [r0, r1, r2, r3] = rho.rho;
    if r0 == r2 {
        return Err(degenerate("ρ0−ρ2"));
    }
    if r1 == r3 {
        return Err(degenerate("ρ1−ρ3"));
    }
    if r2 == 0.0 {
        return Err(degenerate("ρ2"));
    }
    Ok(ESymbol4 {
        epsilon: (r1 - r2) / (r0 - r2),
        delta: (r2 - r3) * (r0 - r1) / ((r1 - r3) * (r0 - r2)),
        eta: r3 * (r1 - r2) / (r2 * (r1 - r3)),
    })
}

/// E-symbol of an n-dimensional polytope from `[ρ0, ..., ρ(n−1)]` (ρn = 0 is
/// the polytope center). Uses `(ⁱRⱼ)² = ρⱼ − ρᵢ`.
pub fn rho_to_e_general(rho: &[f64]) -> Result<Vec<f64>> {
    if rho.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two scalar squares".into(),
        ));
    }
    let mut r = rho.to_vec();
    r.push(0.0);
    let n = rho.len();
    let mut out = Vec::with_capacity(n - 1);
    out.push(div(r[1] - r[2], r[0] - r[2], "ρ→E", "ρ0−ρ2").map_err(|_| degenerate("ρ0−ρ2"))?);
    for i in 2..n {
        let num = (r[i] - r[i + 1]) * (r[i - 2] - r[i - 1]);
        let den = (r[i - 1] - r[i + 1]) * (r[i - 2] - r[i]);
        out.push(div(num, den, "ρ→E", "ρ(i−1)−ρ(i+1)").map_err(|_| degenerate("ρ(i−1)−ρ(i+1)"))?);
    }
    Ok(out)
}

/// `(ρ0, ρ0/γ, ρ0/β, ρ0/α)`.
pub fn h_to_rho(h: &HSymbol, rho0: f64) -> Result<RhoVector> {
    let ctx = "H→ρ";
    if h.alpha == 0.0 {
        return Err(Error::DegenerateSymbol { context: ctx, factor: "α" });
    }
    if h.beta == 0.0 {
        return Err(Error::DegenerateSymbol { context: ctx, factor: "β" });
    }
    if h.gamma == 0.0 {
        return Err(Error::DegenerateSymbol { context: ctx, factor: "γ" });
    }
    if rho0 == 0.0 {
        return Err(Error::DegenerateSymbol { context: ctx, factor: "ρ0" });
    }
    Ok(RhoVector::new(
        rho0,
        rho0 / h.gamma,
        rho0 / h.beta,
        rho0 / h.alpha,
    ))
}

/// Angular uncertainty `π·|Δm|/m` of the vertices of a non-integer polygon.
pub fn angle_uncertainty(m: f64, dm: f64) -> Result<f64> {
    if !(m > 0.0) {
        return Err(Error::InvalidArgument(format!("m must be positive, got {m}")));
    }
    Ok(PI * dm.abs() / m)
}

/// Deviation of `m` from the nearest integer.
pub fn nearest_integer_deviation(m: f64) -> f64 {
    m - m.round()
}

/// Element counts of `{m, i}` from the incidence relations and Euler's formula.
pub fn honeycomb_counts(m: f64, i: f64) -> Result<HoneycombStats> {
    let d = 4.0 - (m - 2.0) * (i - 2.0);
    if !(d > 0.0) {
        return Err(Error::InfiniteHoneycomb { denominator: d });
    }
    Ok(HoneycombStats {
        y: 4.0 * m / d,
        x: 2.0 * m * i / d,
        n: 4.0 * i / d,
        m,
        i,
    })
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Compact decimal rendering (12 significant digits, trailing zeros trimmed).
pub fn fmt_num(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-5..1e12).contains(&a) {
        return format!("{v:.6e}");
    }
    let digits = 12 - (a.log10().floor() as i32 + 1);
    let s = format!("{:.*}", digits.max(0) as usize, v);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub(crate) fn join_nums(v: &[f64]) -> String {
    v.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(",")
}

//! Honeycomb conditions, the 4→5 star transform and statistics of the
//! non-integer tetrahedral honeycomb against measured and modelled cells.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{div, Error, Result};
use crate::symbols::{e_to_f, honeycomb_counts, ESymbol, ESymbol3, ESymbol4, HoneycombStats};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ESymbol5 {
    pub epsilon: f64,
    pub delta: f64,
    pub eta: f64,
    pub nu: f64,
}

impl ESymbol5 {
    pub const fn new(epsilon: f64, delta: f64, eta: f64, nu: f64) -> Self {
        ESymbol5 {
            epsilon,
            delta,
            eta,
            nu,
        }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.epsilon, self.delta, self.eta, self.nu]
    }

    /// `[ε, δ, η]` extended by `ν`.
    pub fn extend(e: &ESymbol4, nu: f64) -> Self {
        ESymbol5::new(e.epsilon, e.delta, e.eta, nu)
    }
}

/// `[α, β, γ, μ] = ρ0/ρ4, ρ0/ρ3, ρ0/ρ2, ρ0/ρ1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HSymbol5 {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub mu: f64,
}

impl HSymbol5 {
    pub fn from_rho(rho: [f64; 5]) -> Result<Self> {
        let r = |k: usize, f: &'static str| div(rho[0], rho[k], "H5 from ρ", f);
        Ok(HSymbol5 {
            alpha: r(4, "ρ4")?,
            beta: r(3, "ρ3")?,
            gamma: r(2, "ρ2")?,
            mu: r(1, "ρ1")?,
        })
    }
}

/// `(1 − ε)(1 − η) − δ`; zero iff `[ε, δ, η]` tiles 3-space.
pub fn honeycomb3_residual(e: &ESymbol4) -> f64 {
    (1.0 - e.epsilon) * (1.0 - e.eta) - e.delta
}

/// Face size `m` of the `{m, i, U}` honeycomb.
pub fn solve_honeycomb3(i: f64, u: f64) -> Result<f64> {
    let s = (PI / u).sin();
    if s == 0.0 {
        return Err(Error::NoRealSolution(format!("sin(pi/{u}) vanishes")));
    }
    let r = (PI / i).cos() / s;
    // rounding slack at the boundary ratio ±1
    if !(r.abs() <= 1.0 + 1e-12) {
        return Err(Error::NoRealSolution(format!(
            "cos(pi/{i})/sin(pi/{u}) = {r} lies outside [-1, 1]"
        )));
    }
    let a = r.clamp(-1.0, 1.0).asin();
    if a == 0.0 {
        return Err(Error::NoRealSolution(format!("cos(pi/{i}) vanishes")));
    }
    Ok(PI / a)
}

/// `ρ0/ρ1` of a polytope from its E-symbol of any length, as the continued
/// fraction `(1/c₁)(1 − c₂/(1 − c₃/(1 − …)))`.
pub fn rho01_ratio(c: &[f64]) -> Result<f64> {
    let Some((&first, rest)) = c.split_first() else {
        return Err(Error::InvalidArgument("empty E-symbol".into()));
    };
    let mut tail = 1.0;
    for &v in rest.iter().rev() {
        tail = 1.0 - div(v, tail, "ρ0/ρ1", "continued fraction tail")?;
    }
    div(tail, first, "ρ0/ρ1", "ε")
}

/// `μ = (1/ε)(1 − δ(1 − ν)/(1 − η − ν))`; μ = 1 for a tessellation of 4-space.
pub fn mu5(e: &ESymbol5) -> Result<f64> {
    let inner = div(e.delta * (1.0 - e.nu), 1.0 - e.eta - e.nu, "mu5", "1−η−ν")?;
    div(1.0 - inner, e.epsilon, "mu5", "ε")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarResult {
    pub star: ESymbol4,
    /// |μ − 1| for the input extended by the star's η′
    pub mu_residual: f64,
}

/// Vertex star `(δ, η, 1 − η(1−ε)/(1−ε−δ))` of the tessellation by `e`.
pub fn star_transform(e: &ESymbol4) -> Result<StarResult> {
    let nu = 1.0 - div(e.eta * (1.0 - e.epsilon), 1.0 - e.epsilon - e.delta, "star transform", "1−ε−δ")?;
    let star = ESymbol4::new(e.delta, e.eta, nu);
    let mu = mu5(&ESymbol5::extend(e, nu))?;
    Ok(StarResult {
        star,
        mu_residual: (mu - 1.0).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiteratureSet {
    pub source: &'static str,
    pub tag: &'static str,
    pub y: Option<f64>,
    pub x: Option<f64>,
    pub n: Option<f64>,
    pub m: Option<f64>,
}

pub const LITERATURE: [LiteratureSet; 5] = [
    LiteratureSet {
        source: "Meijering",
        tag: "random nucleation at constant rate (1953)",
        y: Some(22.56),
        x: Some(33.84),
        n: Some(13.28),
        m: Some(5.096),
    },
    LiteratureSet {
        source: "Coxeter",
        tag: "statistical honeycomb model",
        y: Some(23.13),
        x: Some(34.69),
        n: Some(13.56),
        m: Some(5.115),
    },
    LiteratureSet {
        source: "Gilbert-Miles",
        tag: "simultaneous nucleation, equal growth rate (1962)",
        y: Some(27.07),
        x: Some(40.61),
        n: Some(15.54),
        m: Some(5.23),
    },
    LiteratureSet {
        source: "Bernal",
        tag: "compressed plasticine balls (1959)",
        y: None,
        x: None,
        n: Some(13.3),
        m: None,
    },
    LiteratureSet {
        source: "Smith",
        tag: "vertex count",
        y: Some(22.79),
        x: None,
        n: None,
        m: None,
    },
];

/// Every stored field within this relative difference counts as a match.
pub const MATCH_TOL: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldDiff {
    pub field: &'static str,
    pub literature: f64,
    pub computed: f64,
    /// (computed − literature)/literature
    pub rel_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub source: &'static str,
    pub tag: &'static str,
    pub fields: Vec<FieldDiff>,
    pub max_rel_diff: f64,
    pub within_1pct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub esymbol: ESymbol3,
    pub stats: HoneycombStats,
    /// covering factor of the tessellation by vertex reflection (n)
    pub vertex_covering: f64,
    /// covering factor of the tessellation by face reflection (y)
    pub face_covering: f64,
    pub comparisons: Vec<Comparison>,
    /// sources matched on every stored field within [`MATCH_TOL`]
    pub matches: Vec<&'static str>,
}

fn compare(stats: &HoneycombStats, lit: &LiteratureSet) -> Comparison {
    let pairs = [("y", lit.y, stats.y), ("x", lit.x, stats.x), ("n", lit.n, stats.n), ("m", lit.m, stats.m)];
    let fields: Vec<FieldDiff> = pairs
        .iter()
        .filter_map(|&(field, l, c)| {
            l.map(|l| FieldDiff {
                field,
                literature: l,
                computed: c,
                rel_diff: (c - l) / l,
            })
        })
        .collect();
    let max_rel_diff = fields.iter().fold(0.0f64, |m, f| m.max(f.rel_diff.abs()));
    Comparison {
        source: lit.source,
        tag: lit.tag,
        within_1pct: max_rel_diff <= 0.01,
        max_rel_diff,
        fields,
    }
}

/// Element counts of `[ε, δ]` and their distance to each literature set.
pub fn stats_report(e: &ESymbol3) -> Result<StatsReport> {
    let f = e_to_f(&ESymbol::E3(*e))?;
    let [m, i] = [f.entries()[0], f.entries()[1]];
    let stats = honeycomb_counts(m, i)?;
    let comparisons: Vec<Comparison> = LITERATURE.iter().map(|l| compare(&stats, l)).collect();
    let matches = comparisons
        .iter()
        .filter(|c| c.max_rel_diff <= MATCH_TOL)
        .map(|c| c.source)
        .collect();
    Ok(StatsReport {
        esymbol: *e,
        vertex_covering: stats.n,
        face_covering: stats.y,
        stats,
        comparisons,
        matches,
    })
}

impl StatsReport {
    /// `source,field,literature,computed,rel_diff`, one row per stored field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,field,literature,computed,rel_diff\n");
        for c in &self.comparisons {
            for f in &c.fields {
                let _ = writeln!(out, "{},{},{},{:.6},{:.6}", c.source, f.field, f.literature, f.computed, f.rel_diff);
            }
        }
        out
    }
}

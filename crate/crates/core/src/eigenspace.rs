//! Closed-form fixed-point loci of single generators.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LocusKind {
    Point,
    Curve,
    Surface,
}

impl LocusKind {
    /// Number of free parameters.
    pub fn params(self) -> usize {
        match self {
            LocusKind::Point => 0,
            LocusKind::Curve => 1,
            LocusKind::Surface => 2,
        }
    }
}

impl fmt::Display for LocusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocusKind::Point => "point",
            LocusKind::Curve => "curve",
            LocusKind::Surface => "surface",
        })
    }
}

/// One connected piece of a fixed-point set.
#[derive(Clone, Copy)]
pub struct Locus {
    pub kind: LocusKind,
    pub description: &'static str,
    /// maps `kind.params()` parameters to a point on the locus
    pub sample: fn(&[f64]) -> Vec<f64>,
    /// max violation of the defining equations at a point
    pub constraint: fn(&[f64]) -> f64,
}

impl Locus {
    pub fn point(&self) -> Option<Vec<f64>> {
        (self.kind == LocusKind::Point).then(|| (self.sample)(&[]))
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        (self.constraint)(x) <= tol
    }
}

impl fmt::Debug for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Locus")
            .field("kind", &self.kind)
            .field("description", &self.description)
            .finish()
    }
}

/// All fixed-point loci of a generator.
#[derive(Debug, Clone)]
pub struct EigenspaceDescriptor {
    pub letter: char,
    pub dim: usize,
    pub loci: Vec<Locus>,
}

impl EigenspaceDescriptor {
    pub fn points(&self) -> Vec<Vec<f64>> {
        self.loci.iter().filter_map(Locus::point).collect()
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.loci.iter().any(|l| l.contains(x, tol))
    }
}

impl fmt::Display for EigenspaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.letter)?;
        for (k, l) in self.loci.iter().enumerate() {
            let sep = if k == 0 { " " } else { "; " };
            write!(f, "{sep}{} {}", l.kind, l.description)?;
        }
        Ok(())
    }
}

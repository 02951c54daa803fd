//! The relative reflection group RRP(3) acting on `[ε, δ]`.

use std::fmt;

use crate::eigenspace::{EigenspaceDescriptor, Locus, LocusKind};
use crate::error::{div, Result};
use crate::symbols::ESymbol3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter3 {
    A,
    B,
    C,
    D,
}

impl Letter3 {
    pub const ALL: [Letter3; 4] = [Letter3::A, Letter3::B, Letter3::C, Letter3::D];

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(Letter3::A),
            'B' => Some(Letter3::B),
            'C' => Some(Letter3::C),
            'D' => Some(Letter3::D),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }

    /// Period of the generator.
    pub fn order(self) -> u32 {
        match self {
            Letter3::A => 5,
            Letter3::B | Letter3::D => 2,
            Letter3::C => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator3 {
    pub letter: Letter3,
    pub inverted: bool,
}

impl Generator3 {
    pub const fn new(letter: Letter3, inverted: bool) -> Self {
        Generator3 { letter, inverted }
    }

    pub fn inverse(self) -> Self {
        Generator3::new(self.letter, !self.inverted)
    }
}

impl From<Letter3> for Generator3 {
    fn from(l: Letter3) -> Self {
        Generator3::new(l, false)
    }
}

impl fmt::Display for Generator3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.letter.as_char();
        write!(f, "{}", if self.inverted { c.to_ascii_lowercase() } else { c })
    }
}

fn step(letter: Letter3, e: ESymbol3) -> Result<ESymbol3> {
    let ESymbol3 { epsilon: x, delta: d } = e;
    let name = |l: Letter3| format!("<{}>E3", l.as_char());
    Ok(match letter {
        // vertices
        Letter3::A => ESymbol3::new(1.0 - div(x, 1.0 - d, &name(letter), "1−δ")?, x),
        // edges, I type
        Letter3::B => ESymbol3::new(1.0 - x - d, d),
        // edges, II type
        Letter3::C => ESymbol3::new(1.0 - x - d, x),
        // faces
        Letter3::D => ESymbol3::new(1.0 - div(d, 1.0 - x, &name(letter), "1−ε")?, d),
    })
}

/// Apply one generator; inverses are the powers `a = A⁴`, `c = C²`.
pub fn apply3(g: Generator3, e: ESymbol3) -> Result<ESymbol3> {
    let reps = if g.inverted { g.letter.order() - 1 } else { 1 };
    let mut x = e;
    for _ in 0..reps {
        x = step(g.letter, x)?;
    }
    Ok(x)
}

/// Reciprocal polytope: `(ε, δ) → (δ, ε)`.
pub fn dual3(e: ESymbol3) -> ESymbol3 {
    ESymbol3::new(e.delta, e.epsilon)
}

/// Denominators met by one generator step at `e`.
pub fn denominators3(letter: Letter3, e: ESymbol3) -> Vec<(f64, &'static str)> {
    match letter {
        Letter3::A => vec![(1.0 - e.delta, "1−δ")],
        Letter3::D => vec![(1.0 - e.epsilon, "1−ε")],
        _ => Vec::new(),
    }
}

fn pt(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
}

/// Fixed-point loci of a generator.
pub fn eigenspace3(letter: Letter3) -> EigenspaceDescriptor {
    let loci = match letter {
        Letter3::A => vec![
            Locus {
                kind: LocusKind::Point,
                description: "[(3−√5)/2, (3−√5)/2]",
                sample: |_| {
                    let v = (3.0 - 5f64.sqrt()) / 2.0;
                    vec![v, v]
                },
                constraint: |x| {
                    let v = (3.0 - 5f64.sqrt()) / 2.0;
                    pt(x, &[v, v])
                },
            },
            Locus {
                kind: LocusKind::Point,
                description: "[(3+√5)/2, (3+√5)/2]",
                sample: |_| {
                    let v = (3.0 + 5f64.sqrt()) / 2.0;
                    vec![v, v]
                },
                constraint: |x| {
                    let v = (3.0 + 5f64.sqrt()) / 2.0;
                    pt(x, &[v, v])
                },
            },
        ],
        Letter3::B => vec![Locus {
            kind: LocusKind::Curve,
            description: "δ = 1 − 2ε",
            sample: |t| vec![t[0], 1.0 - 2.0 * t[0]],
            constraint: |x| (x[1] - (1.0 - 2.0 * x[0])).abs(),
        }],
        Letter3::C => vec![Locus {
            kind: LocusKind::Point,
            description: "[1/3, 1/3]",
            sample: |_| vec![1.0 / 3.0, 1.0 / 3.0],
            constraint: |x| pt(x, &[1.0 / 3.0, 1.0 / 3.0]),
        }],
        Letter3::D => vec![Locus {
            kind: LocusKind::Curve,
            description: "δ = (1 − ε)²",
            sample: |t| vec![t[0], (1.0 - t[0]).powi(2)],
            constraint: |x| (x[1] - (1.0 - x[0]).powi(2)).abs(),
        }],
    };
    EigenspaceDescriptor {
        letter: letter.as_char(),
        dim: 2,
        loci,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter3::*;

    fn close(a: ESymbol3, b: [f64; 2], tol: f64) -> bool {
        (a.epsilon - b[0]).abs() < tol && (a.delta - b[1]).abs() < tol
    }

    #[test]
    fn paper_examples() {
        let oct = ESymbol3::new(0.25, 0.5);
        assert!(close(apply3(A.into(), oct).unwrap(), [0.5, 0.25], 1e-15));
        assert!(close(apply3(A.into(), ESymbol3::new(0.25, 0.25)).unwrap(), [2.0 / 3.0, 0.25], 1e-15));
        assert!(close(apply3(B.into(), oct).unwrap(), [0.25, 0.5], 1e-15));
        assert!(close(apply3(D.into(), ESymbol3::new(0.5, 0.25)).unwrap(), [0.5, 0.25], 1e-15));
    }

    #[test]
    fn singular_inputs() {
        let err = apply3(A.into(), ESymbol3::new(0.3, 1.0)).unwrap_err();
        assert!(err.to_string().contains("1−δ"));
        assert!(apply3(D.into(), ESymbol3::new(1.0, 0.3)).unwrap_err().is_singular());
    }

    #[test]
    fn inverses_undo() {
        let e = ESymbol3::new(0.3, 0.2);
        for l in Letter3::ALL {
            let g = Generator3::from(l);
            let back = apply3(g, apply3(g.inverse(), e).unwrap()).unwrap();
            assert!(close(back, [0.3, 0.2], 1e-12), "{l:?}");
        }
    }

    #[test]
    fn dual_is_ad() {
        assert_eq!(dual3(ESymbol3::new(0.5, 0.25)), ESymbol3::new(0.25, 0.5));
        assert_eq!(dual3(ESymbol3::new(0.37, 0.37)), ESymbol3::new(0.37, 0.37));
        let e = ESymbol3::new(0.3, 0.2);
        let ad = apply3(D.into(), apply3(A.into(), e).unwrap()).unwrap();
        assert!(close(ad, [0.2, 0.3], 1e-15));
    }

    #[test]
    fn eigenspaces_are_fixed() {
        for l in Letter3::ALL {
            let desc = eigenspace3(l);
            for locus in &desc.loci {
                let samples: Vec<Vec<f64>> = match locus.kind {
                    LocusKind::Point => vec![(locus.sample)(&[])],
                    _ => [0.1, 0.3, 0.45].iter().map(|t| (locus.sample)(&[*t])).collect(),
                };
                for x in samples {
                    let e = ESymbol3::new(x[0], x[1]);
                    let y = apply3(l.into(), e).unwrap();
                    assert!(close(y, [x[0], x[1]], 1e-10), "{l:?} {x:?}");
                    assert!(locus.contains(&x, 1e-12));
                }
            }
        }
        let b = eigenspace3(B);
        assert!(b.contains(&[0.3, 0.4], 1e-12));
        assert!((eigenspace3(A).points()[0][0] - 0.381966).abs() < 1e-6);
    }
}

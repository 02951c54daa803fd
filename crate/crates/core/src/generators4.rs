//! The relative group RRP(4) acting on `[ε, δ, η]` and the frame matrices of
//! the absolute group ARP(4).

use std::fmt;

use nalgebra::Matrix4;

use crate::eigenspace::{EigenspaceDescriptor, Locus, LocusKind};
use crate::error::{div, Error, Result};
use crate::metric::{gram_of, GramMatrix};
use crate::symbols::{rho_to_e, ESymbol4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter4 {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl Letter4 {
    pub const ALL: [Letter4; 8] = [
        Letter4::A,
        Letter4::B,
        Letter4::C,
        Letter4::D,
        Letter4::E,
        Letter4::F,
        Letter4::G,
        Letter4::H,
    ];

    pub fn from_char(c: char) -> Option<Self> {
        let u = c.to_ascii_uppercase();
        ('A'..='H')
            .contains(&u)
            .then(|| Letter4::ALL[(u as u8 - b'A') as usize])
    }

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }

    /// Period in RRP(4); `None` for E, F, G.
    pub fn order(self) -> Option<u32> {
        match self {
            Letter4::A => Some(6),
            Letter4::B | Letter4::H => Some(2),
            Letter4::C => Some(3),
            Letter4::D => Some(4),
            Letter4::E | Letter4::F | Letter4::G => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator4 {
    pub letter: Letter4,
    pub inverted: bool,
}

impl Generator4 {
    pub const fn new(letter: Letter4, inverted: bool) -> Self {
        Generator4 { letter, inverted }
    }

    pub fn inverse(self) -> Self {
        Generator4::new(self.letter, !self.inverted)
    }
}

impl From<Letter4> for Generator4 {
    fn from(l: Letter4) -> Self {
        Generator4::new(l, false)
    }
}

impl fmt::Display for Generator4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.letter.as_char();
        write!(f, "{}", if self.inverted { c.to_ascii_lowercase() } else { c })
    }
}

fn name(l: Letter4) -> String {
    format!("<{}>E4", l.as_char())
}

fn step(l: Letter4, e: ESymbol4) -> Result<ESymbol4> {
    let ESymbol4 {
        epsilon: x,
        delta: d,
        eta: h,
    } = e;
    let n = name(l);
    let n = n.as_str();
    Ok(match l {
        // vertices
        Letter4::A => ESymbol4::new(1.0 - div(x * (1.0 - h), 1.0 - d - h, n, "1−δ−η")?, x, d),
        // edges, I type
        Letter4::B => ESymbol4::new(1.0 - x - div(d, 1.0 - h, n, "1−η")?, d, h),
        // edges, II type
        Letter4::C => ESymbol4::new(
            1.0 - x - div(d, 1.0 - h, n, "1−η")?,
            d,
            div(x, x + d, n, "ε+δ")?,
        ),
        // edges, III type
        Letter4::D => ESymbol4::new(
            1.0 - x - div(d, 1.0 - h, n, "1−η")?,
            x,
            div(d, x + d, n, "ε+δ")?,
        ),
        // faces, I type
        Letter4::E => ESymbol4::new(
            1.0 - h - div(d, 1.0 - x, n, "1−ε")?,
            h,
            div(d, d + h, n, "δ+η")?,
        ),
        // faces, II type
        Letter4::F => ESymbol4::new(
            1.0 - h - div(d, 1.0 - x, n, "1−ε")?,
            d,
            div(h, d + h, n, "δ+η")?,
        ),
        // faces, III type
        Letter4::G => ESymbol4::new(1.0 - h - div(d, 1.0 - x, n, "1−ε")?, d, x),
        // 3-faces
        Letter4::H => ESymbol4::new(1.0 - div(h * (1.0 - x), 1.0 - x - d, n, "1−ε−δ")?, h, d),
    })
}

/// Analytic inverse of E, F, G; finite-order letters invert by powers
/// (`a = A⁵`, `c = C²`, `d = D³`, `b = B`, `h = H`).
pub fn inverse4(l: Letter4, e: ESymbol4) -> Result<ESymbol4> {
    let [a, b, c] = e.coords();
    let n = format!("<{}>E4", l.as_char().to_ascii_lowercase());
    let n = n.as_str();
    match l {
        Letter4::E => {
            let eta = b;
            let delta = div(c * b, 1.0 - c, n, "1−η")?;
            let eps = 1.0 - div(delta, 1.0 - a - b, n, "1−ε−δ")?;
            Ok(ESymbol4::new(eps, delta, eta))
        }
        Letter4::F => {
            let delta = b;
            let eta = div(c * delta, 1.0 - c, n, "1−η")?;
            let eps = 1.0 - div(delta, 1.0 - eta - a, n, "1−ε−η")?;
            Ok(ESymbol4::new(eps, delta, eta))
        }
        Letter4::G => {
            let eps = c;
            let delta = b;
            let eta = 1.0 - a - div(delta, 1.0 - eps, n, "1−η")?;
            Ok(ESymbol4::new(eps, delta, eta))
        }
        _ => {
            let order = l.order().expect("finite-order letter");
            let mut x = e;
            for _ in 0..order - 1 {
                x = step(l, x)?;
            }
            Ok(x)
        }
    }
}

/// Apply one generator to an E-symbol.
pub fn apply4(g: Generator4, e: ESymbol4) -> Result<ESymbol4> {
    if g.inverted {
        inverse4(g.letter, e)
    } else {
        step(g.letter, e)
    }
}

fn frame_name(g: Generator4) -> String {
    format!("<{g}>P4")
}

fn row(v: [f64; 4]) -> nalgebra::RowVector4<f64> {
    nalgebra::RowVector4::new(v[0], v[1], v[2], v[3])
}

fn add(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn scale(k: f64, a: [f64; 4]) -> [f64; 4] {
    [k * a[0], k * a[1], k * a[2], k * a[3]]
}

const E0: [f64; 4] = [1.0, 0.0, 0.0, 0.0];
const E1: [f64; 4] = [0.0, 1.0, 0.0, 0.0];
const E2: [f64; 4] = [0.0, 0.0, 1.0, 0.0];

fn forward_matrix(l: Letter4, e: ESymbol4) -> Result<Matrix4<f64>> {
    let ESymbol4 {
        epsilon: x,
        delta: d,
        eta: h,
    } = e;
    let n = frame_name(l.into());
    let n = n.as_str();
    let rows: [[f64; 4]; 4] = match l {
        Letter4::A => {
            let xdh = x * d * h;
            let alpha = div((1.0 - x - d) * (1.0 - d - h), xdh, n, "εδη")?;
            let beta = div((1.0 - x) * (1.0 - d - h), x * d, n, "εδ")?;
            let gamma = div(1.0 - d - h, x * (1.0 - h), n, "ε(1−η)")?;
            let p0 = [0.0, 0.0, 0.0, -alpha];
            [p0, add(E0, p0), add(scale(gamma, E1), p0), add(scale(beta, E2), p0)]
        }
        Letter4::B => {
            let k2 = div(1.0, d + x * (1.0 - h), n, "δ+ε(1−η)")?;
            let k3 = div(1.0, x + h * (d - x), n, "ε+η(δ−ε)")?;
            [
                [-1.0, 0.0, 0.0, 0.0],
                [-1.0, 1.0, 0.0, 0.0],
                [-d * k2, 0.0, (1.0 - x) * (1.0 - h) * k2, 0.0],
                [-d * h * k3, 0.0, 0.0, (1.0 - x - d) * (1.0 - h) * k3],
            ]
        }
        Letter4::C | Letter4::D => {
            let p0 = [0.0, 0.0, 0.0, -div((1.0 - x - d) * (1.0 - h), d * h, n, "δη")?];
            let k2 = div(1.0, d + x * (1.0 - h), n, "δ+ε(1−η)")?;
            let p1 = add(E1, p0);
            let p2 = add(scale(k2, [x * (1.0 - h), 0.0, (1.0 - x) * (1.0 - h), 0.0]), p0);
            let p3 = if l == Letter4::C {
                let k3 = div(x * (1.0 - h), x + h * (d - x), n, "ε+η(δ−ε)")?;
                scale(k3, add(E0, p0))
            } else {
                add(scale(div((1.0 - x) * (1.0 - h), d, n, "δ")?, E2), p0)
            };
            [p0, p1, p2, p3]
        }
        Letter4::E | Letter4::F => {
            let k = div(1.0, d + h * (1.0 - x), n, "δ+η(1−ε)")?;
            let m0 = [-1.0, 0.0, 0.0, 0.0];
            let p2 = add(m0, scale(k, [0.0, d, 0.0, 1.0 - x - d]));
            let p3 = if l == Letter4::E {
                add(m0, E1)
            } else {
                let k3 = div(1.0, h + x * (d - h), n, "η+ε(δ−η)")?;
                scale(k3, [-h * (1.0 - x), 0.0, 0.0, 1.0 - x - d])
            };
            [m0, add(m0, E2), p2, p3]
        }
        Letter4::G => {
            let p0 = [0.0, 0.0, 0.0, -div(1.0 - x - d, h * (1.0 - x), n, "η(1−ε)")?];
            let k2 = div(d, d + h * (1.0 - x), n, "δ+η(1−ε)")?;
            let k3 = div(x * d, h + x * (d - h), n, "η+ε(δ−η)")?;
            [p0, add(E2, p0), scale(k2, add(E1, p0)), scale(k3, add(E0, p0))]
        }
        Letter4::H => [
            [-1.0, 0.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 1.0],
            [-1.0, 0.0, 1.0, 0.0],
            [-1.0, 1.0, 0.0, 0.0],
        ],
    };
    Ok(Matrix4::from_rows(&[row(rows[0]), row(rows[1]), row(rows[2]), row(rows[3])]))
}

/// Frame matrix `W`: row i holds the coordinates of `p′ᵢ` in the frame of
/// `e`. Inverted letters use the group inverse `W_g(g⁻¹(e))⁻¹`.
pub fn matrix4(g: Generator4, e: ESymbol4) -> Result<Matrix4<f64>> {
    if !g.inverted {
        return forward_matrix(g.letter, e);
    }
    let pre = inverse4(g.letter, e)?;
    forward_matrix(g.letter, pre)?
        .try_inverse()
        .ok_or_else(|| Error::SingularTransform {
            map: frame_name(g),
            factor: "det W",
            step: None,
        })
}

/// Denominators of the E-map and the frame matrix of one letter at `e`
/// (evaluated at the pre-image for inverted letters).
pub fn denominators4(g: Generator4, e: ESymbol4) -> Vec<f64> {
    let at = if g.inverted {
        match inverse4(g.letter, e) {
            Ok(p) => p,
            Err(_) => return vec![0.0],
        }
    } else {
        e
    };
    let [x, d, h] = at.coords();
    let mut v = match g.letter {
        Letter4::A => vec![1.0 - d - h, x, d, h, 1.0 - h],
        Letter4::B => vec![1.0 - h, d + x * (1.0 - h), x + h * (d - x)],
        Letter4::C => vec![1.0 - h, x + d, d, h, d + x * (1.0 - h), x + h * (d - x)],
        Letter4::D => vec![1.0 - h, x + d, d, h, d + x * (1.0 - h)],
        Letter4::E => vec![1.0 - x, d + h, d + h * (1.0 - x)],
        Letter4::F => vec![1.0 - x, d + h, d + h * (1.0 - x), h + x * (d - h)],
        Letter4::G => vec![1.0 - x, h, d + h * (1.0 - x), h + x * (d - h)],
        Letter4::H => vec![1.0 - x - d],
    };
    if g.inverted {
        let [a, b, c] = e.coords();
        match g.letter {
            Letter4::E => v.extend([1.0 - c, 1.0 - a - b]),
            Letter4::F => v.extend([1.0 - c, 1.0 - at.eta - a]),
            Letter4::G => v.push(1.0 - c),
            _ => {}
        }
    }
    v
}

fn pt(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
}

macro_rules! point {
    ($desc:expr, [$a:expr, $b:expr, $c:expr]) => {
        Locus {
            kind: LocusKind::Point,
            description: $desc,
            sample: |_| vec![$a, $b, $c],
            constraint: |x| pt(x, &[$a, $b, $c]),
        }
    };
}

/// Fixed-point loci of a generator.
pub fn eigenspace4(l: Letter4) -> EigenspaceDescriptor {
    let loci = match l {
        Letter4::A => vec![
            point!("[1/3, 1/3, 1/3]", [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]),
            point!("[1, 1, 1]", [1.0, 1.0, 1.0]),
        ],
        Letter4::B => vec![Locus {
            kind: LocusKind::Surface,
            description: "δ = (1 − 2ε)(1 − η)",
            sample: |t| vec![t[0], (1.0 - 2.0 * t[0]) * (1.0 - t[1]), t[1]],
            constraint: |x| (x[1] - (1.0 - 2.0 * x[0]) * (1.0 - x[2])).abs(),
        }],
        Letter4::C => vec![Locus {
            kind: LocusKind::Curve,
            description: "ε = η/(1 + 2η), δ = (1 − η)/(1 + 2η)",
            sample: |t| vec![t[0] / (1.0 + 2.0 * t[0]), (1.0 - t[0]) / (1.0 + 2.0 * t[0]), t[0]],
            constraint: |x| {
                let k = 1.0 + 2.0 * x[2];
                (x[0] * k - x[2]).abs().max((x[1] * k - (1.0 - x[2])).abs())
            },
        }],
        Letter4::D => vec![point!("[1/4, 1/4, 1/2]", [0.25, 0.25, 0.5])],
        Letter4::E => vec![
            point!("[0, 1/2, 1/2]", [0.0, 0.5, 0.5]),
            point!("[3/2, 1/2, 1/2]", [1.5, 0.5, 0.5]),
        ],
        Letter4::F => vec![
            Locus {
                kind: LocusKind::Curve,
                description: "η = 0, δ = (1 − ε)²",
                sample: |t| vec![t[0], (1.0 - t[0]).powi(2), 0.0],
                constraint: |x| x[2].abs().max((x[1] - (1.0 - x[0]).powi(2)).abs()),
            },
            Locus {
                kind: LocusKind::Curve,
                description: "ε = 0, δ = 1 − η",
                sample: |t| vec![0.0, 1.0 - t[0], t[0]],
                constraint: |x| x[0].abs().max((x[1] - (1.0 - x[2])).abs()),
            },
            Locus {
                kind: LocusKind::Curve,
                description: "ε = 2 − η, δ = 1 − η",
                sample: |t| vec![2.0 - t[0], 1.0 - t[0], t[0]],
                constraint: |x| (x[0] - (2.0 - x[2])).abs().max((x[1] - (1.0 - x[2])).abs()),
            },
        ],
        Letter4::G => vec![Locus {
            kind: LocusKind::Curve,
            description: "η = ε, δ = (1 − ε)(1 − 2ε)",
            sample: |t| vec![t[0], (1.0 - t[0]) * (1.0 - 2.0 * t[0]), t[0]],
            constraint: |x| {
                (x[2] - x[0])
                    .abs()
                    .max((x[1] - (1.0 - x[0]) * (1.0 - 2.0 * x[0])).abs())
            },
        }],
        Letter4::H => vec![
            Locus {
                kind: LocusKind::Curve,
                description: "ε = 1, δ = η",
                sample: |t| vec![1.0, t[0], t[0]],
                constraint: |x| (x[0] - 1.0).abs().max((x[1] - x[2]).abs()),
            },
            Locus {
                kind: LocusKind::Curve,
                description: "ε = 1 − 2η, δ = η",
                sample: |t| vec![1.0 - 2.0 * t[0], t[0], t[0]],
                constraint: |x| (x[0] - (1.0 - 2.0 * x[2])).abs().max((x[1] - x[2]).abs()),
            },
        ],
    };
    EigenspaceDescriptor {
        letter: l.as_char(),
        dim: 3,
        loci,
    }
}

/// Gram consistency of one generator at `e`: `W·G·Wᵀ` must be a natural-form
/// metric whose E-symbol is the E-map image. Returns the larger of the
/// relative natural-form residual and the E-symbol distance.
pub fn gram_consistency(g: Generator4, e: ESymbol4) -> Result<f64> {
    let gm = gram_of(&e, 1.0)?;
    let w = matrix4(g, e)?;
    let img = apply4(g, e)?;
    let g2 = GramMatrix(w * gm.0 * w.transpose());
    let back = rho_to_e(&g2.rho())?;
    Ok((g2.natural_form_residual() / g2.0.amax()).max(pt(&back.coords(), &img.coords())))
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GramOracleReport {
    /// letter, lowercase for the inverse
    pub generator: char,
    pub samples: usize,
    pub max_residual: f64,
}

/// [`gram_consistency`] at `samples` generic points drawn from (0.05, 0.95)³,
/// skipping draws within 1e−3 of a singular factor.
pub fn gram_oracle(g: Generator4, samples: usize, rng: &mut impl rand::Rng) -> GramOracleReport {
    let mut max_residual: f64 = 0.0;
    let mut n = 0;
    let mut tries = 0;
    while n < samples && tries < 100 * samples {
        tries += 1;
        let e = ESymbol4::new(
            rng.random_range(0.05..0.95),
            rng.random_range(0.05..0.95),
            rng.random_range(0.05..0.95),
        );
        if denominators4(g, e).iter().any(|v| v.abs() < 1e-3) {
            continue;
        }
        match gram_consistency(g, e) {
            Ok(r) => max_residual = max_residual.max(r),
            Err(_) => max_residual = f64::INFINITY,
        }
        n += 1;
    }
    GramOracleReport {
        generator: g.to_string().chars().next().unwrap_or('?'),
        samples: n,
        max_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use Letter4::*;

    const Q: f64 = 0.25;

    fn close(a: ESymbol4, b: [f64; 3], tol: f64) -> bool {
        pt(&a.coords(), &b) < tol
    }

    fn g(l: Letter4) -> Generator4 {
        l.into()
    }

    #[test]
    fn paper_examples() {
        let e334 = ESymbol4::new(Q, Q, 0.5);
        assert!(close(apply4(g(D), e334).unwrap(), [Q, Q, 0.5], 1e-15));
        let t = 1.0 / 3.0;
        assert!(close(apply4(g(A), ESymbol4::new(t, t, t)).unwrap(), [t, t, t], 1e-15));
        let a1 = apply4(g(A), e334).unwrap();
        assert!(close(a1, [0.5, Q, Q], 1e-15));
        let a2 = apply4(g(A), a1).unwrap();
        assert!(close(a2, [Q, 0.5, Q], 1e-15));
        assert!(close(apply4(g(A), a2).unwrap(), [Q, Q, 0.5], 1e-15));
        let ah = apply4(g(H), apply4(g(A), ESymbol4::new(0.5, Q, Q)).unwrap()).unwrap();
        assert!(close(ah, [Q, Q, 0.5], 1e-15));
    }

    #[test]
    fn analytic_inverses() {
        let e = ESymbol4::new(0.3, 0.3, 0.2);
        for l in [E, F, G] {
            let back = inverse4(l, apply4(g(l), e).unwrap()).unwrap();
            assert!(close(back, [0.3, 0.3, 0.2], 1e-12), "{l:?}");
            let fwd = apply4(g(l), inverse4(l, e).unwrap()).unwrap();
            assert!(close(fwd, [0.3, 0.3, 0.2], 1e-12), "{l:?}");
        }
        let x = apply4(g(G), ESymbol4::new(Q, Q, 0.5)).unwrap();
        assert!(close(inverse4(G, x).unwrap(), [Q, Q, 0.5], 1e-12));
        for eps in [0.2, 0.5, 0.7] {
            let p = ESymbol4::new(eps, (1.0 - eps) * (1.0 - eps), 0.0);
            assert!(close(inverse4(F, p).unwrap(), p.coords(), 1e-12));
        }
        for l in [A, B, C, D, H] {
            let back = apply4(g(l), inverse4(l, e).unwrap()).unwrap();
            assert!(close(back, [0.3, 0.3, 0.2], 1e-12), "{l:?}");
        }
    }

    #[test]
    fn singular_factor_named() {
        let err = apply4(g(A), ESymbol4::new(0.3, 0.5, 0.5)).unwrap_err();
        assert!(err.to_string().contains("1−δ−η"), "{err}");
        let err = apply4(g(H), ESymbol4::new(0.5, 0.5, 0.2)).unwrap_err();
        assert!(err.to_string().contains("1−ε−δ"));
    }

    #[test]
    fn h_and_b_constant_rows() {
        let w = matrix4(g(H), ESymbol4::new(0.1, 0.7, 0.3)).unwrap();
        let want = Matrix4::new(
            -1.0, 0.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 1.0, //
            -1.0, 0.0, 1.0, 0.0, //
            -1.0, 1.0, 0.0, 0.0,
        );
        assert_eq!(w, want);
        let w = matrix4(g(B), ESymbol4::new(0.5, Q, Q)).unwrap();
        assert_eq!(w.row(0).iter().copied().collect::<Vec<_>>(), vec![-1.0, 0.0, 0.0, 0.0]);
        assert_eq!(w.row(1).iter().copied().collect::<Vec<_>>(), vec![-1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn b_matrix_is_involution() {
        let e = ESymbol4::new(0.3, 0.25, 0.4);
        let e2 = apply4(g(B), e).unwrap();
        let prod = matrix4(g(B), e2).unwrap() * matrix4(g(B), e).unwrap();
        assert!((prod - Matrix4::identity()).amax() < 1e-12);
    }

    #[test]
    fn gram_master_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for l in Letter4::ALL {
            for inverted in [false, true] {
                let r = gram_oracle(Generator4::new(l, inverted), 100, &mut rng);
                assert_eq!(r.samples, 100);
                assert!(r.max_residual < 1e-8, "{r:?}");
            }
        }
    }

    #[test]
    fn determinants_nonzero() {
        let e = ESymbol4::new(0.3, 0.25, 0.4);
        for l in Letter4::ALL {
            assert!(matrix4(g(l), e).unwrap().determinant().abs() > 1e-12, "{l:?}");
        }
    }

    #[test]
    fn eigenspaces_are_fixed() {
        for l in Letter4::ALL {
            for locus in &eigenspace4(l).loci {
                let params: Vec<Vec<f64>> = match locus.kind {
                    LocusKind::Point => vec![vec![]],
                    LocusKind::Curve => vec![vec![0.15], vec![0.3], vec![0.4]],
                    LocusKind::Surface => vec![vec![0.2, 0.3], vec![0.35, 0.6]],
                };
                for p in params {
                    let x = (locus.sample)(&p);
                    let y = apply4(g(l), ESymbol4::from_slice(&x)).unwrap();
                    assert!(pt(&y.coords(), &x) < 1e-12, "{l:?} {x:?}");
                    assert!(locus.contains(&x, 1e-12));
                }
            }
        }
        assert!(eigenspace4(H).contains(&[0.4, 0.3, 0.3], 1e-12));
        assert!(eigenspace4(C).contains(&[1.0 / 6.0, 0.5, 0.25], 1e-12));
    }
}

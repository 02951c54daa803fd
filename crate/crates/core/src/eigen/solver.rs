//! Fixed points of word maps: multi-start Newton over a seed grid, plus a
//! brute-force dense-grid oracle.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::par::{self, Execution};
use crate::symbols::{max_abs_diff, ESymbol};
use crate::words::{apply_word, orbit_min_denominator, Word};

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub box_lo: f64,
    pub box_hi: f64,
    pub grid_step: f64,
    pub fd_step: f64,
    pub max_iter: usize,
    /// converged iff max-norm residual below this
    pub tol: f64,
    /// roots closer than this are merged
    pub dedupe: f64,
    /// min spacing between kept roots on a non-isolated locus
    pub curve_spacing: f64,
    /// cap on kept non-isolated roots per word
    pub max_curve_roots: usize,
    pub exec: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            box_lo: -0.5,
            box_hi: 2.0,
            grid_step: 0.05,
            fd_step: 1e-7,
            max_iter: 50,
            tol: 1e-10,
            dedupe: 1e-6,
            curve_spacing: 0.05,
            max_curve_roots: 64,
            exec: Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointResult {
    pub evec: ESymbol,
    pub residual: f64,
    pub converged: bool,
    pub seed: Vec<f64>,
    /// Jacobian of `T − id` is nonsingular at the root
    pub isolated: bool,
    pub iterations: usize,
    /// smallest map denominator along the orbit; near zero marks a root at a
    /// 0/0 point, which may be a limit artefact
    pub min_denominator: f64,
}

fn eval(w: &Word, x: &[f64]) -> Option<Vec<f64>> {
    let e = ESymbol::from_coords(x).ok()?;
    let y = apply_word(w, e).ok()?.coords();
    let f: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    f.iter().all(|v| v.is_finite()).then_some(f)
}

fn norm(f: &[f64]) -> f64 {
    f.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Max-norm residual `|T(x) − x|`; `inf` where undefined.
pub fn residual(w: &Word, x: &[f64]) -> f64 {
    eval(w, x).map_or(f64::INFINITY, |f| norm(&f))
}

fn jacobian(w: &Word, x: &[f64], f: &[f64], h: f64) -> Option<DMatrix<f64>> {
    let n = x.len();
    let mut j = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut xp = x.to_vec();
        xp[k] += h;
        let fp = eval(w, &xp)?;
        for i in 0..n {
            j[(i, k)] = (fp[i] - f[i]) / h;
        }
    }
    Some(j)
}

fn is_isolated(j: &DMatrix<f64>) -> bool {
    let sv = j.clone().svd(false, false).singular_values;
    let max = sv.iter().fold(0.0f64, |m, v| m.max(*v));
    let min = sv.iter().fold(f64::INFINITY, |m, v| m.min(*v));
    min > 1e-5 * max.max(1.0)
}

/// Damped Newton from one seed; the step is the SVD least-squares solution,
/// so singular Jacobians (roots on curves) still converge.
pub fn newton(w: &Word, seed: &[f64], cfg: &SolverConfig) -> Option<FixedPointResult> {
    let mut x = seed.to_vec();
    let mut f = eval(w, &x)?;
    let mut r = norm(&f);
    let mut it = 0;
    let mut polish = 0;
    while it < cfg.max_iter {
        it += 1;
        let j = jacobian(w, &x, &f, cfg.fd_step)?;
        let rhs = DMatrix::from_column_slice(f.len(), 1, &f);
        let svd = j.svd(true, true);
        let eps = 1e-12 * svd.singular_values.max().max(1e-300);
        let dx = svd.solve(&rhs, eps).ok()?;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let xn: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, d)| a - t * d).collect();
            if let Some(fnew) = eval(w, &xn) {
                let rn = norm(&fnew);
                if rn < r || rn < cfg.tol * 1e-3 {
                    x = xn;
                    f = fnew;
                    r = rn;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if norm(&x) > 1e3 {
            return None;
        }
        if r < cfg.tol {
            polish += 1;
            if polish > 2 || !accepted || r < 1e-15 {
                break;
            }
        } else if !accepted {
            break;
        }
    }
    let converged = r < cfg.tol;
    let isolated = converged && jacobian(w, &x, &f, cfg.fd_step).is_some_and(|j| is_isolated(&j));
    let evec = ESymbol::from_coords(&x).ok()?;
    Some(FixedPointResult {
        evec,
        min_denominator: orbit_min_denominator(w, evec).unwrap_or(0.0),
        residual: r,
        converged,
        seed: seed.to_vec(),
        isolated,
        iterations: it,
    })
}

/// Grid of seeds over the search box.
pub fn seed_grid(dim: usize, lo: f64, hi: f64, step: f64) -> Vec<Vec<f64>> {
    let n = ((hi - lo) / step).round() as usize + 1;
    let axis: Vec<f64> = (0..n).map(|i| lo + i as f64 * step).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(out.len() * n);
        for p in &out {
            for &a in &axis {
                let mut q = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn in_box(x: &[f64], cfg: &SolverConfig) -> bool {
    let slack = 1e-9;
    x.iter().all(|v| *v >= cfg.box_lo - slack && *v <= cfg.box_hi + slack)
}

/// Merge converged roots in seed order: isolated roots within `dedupe`,
/// non-isolated roots thinned to `curve_spacing`; result sorted by coordinates.
pub fn dedupe_roots(found: Vec<FixedPointResult>, cfg: &SolverConfig) -> Vec<FixedPointResult> {
    let mut kept: Vec<FixedPointResult> = Vec::new();
    let mut curve = 0;
    for r in found {
        let x = r.evec.coords();
        let dup = kept.iter().any(|k| {
            let d = max_abs_diff(&k.evec.coords(), &x);
            d < cfg.dedupe || (!r.isolated && !k.isolated && d < cfg.curve_spacing)
        });
        if dup {
            continue;
        }
        if !r.isolated {
            if curve >= cfg.max_curve_roots {
                continue;
            }
            curve += 1;
        }
        kept.push(r);
    }
    kept.sort_by(|a, b| {
        a.evec
            .coords()
            .iter()
            .zip(b.evec.coords().iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    kept
}

/// Multi-start Newton over the seed grid; every returned root is
/// re-verified by direct application.
pub fn find_fixed_points(w: &Word, cfg: &SolverConfig) -> Vec<FixedPointResult> {
    let seeds = seed_grid(w.context.dim(), cfg.box_lo, cfg.box_hi, cfg.grid_step);
    let found: Vec<Option<FixedPointResult>> = par::map(cfg.exec, &seeds, |s| {
        newton(w, s, cfg).filter(|r| r.converged && in_box(&r.evec.coords(), cfg))
    });
    let roots = dedupe_roots(found.into_iter().flatten().collect(), cfg);
    roots
        .into_iter()
        .filter_map(|mut r| {
            r.residual = residual(w, &r.evec.coords());
            (r.residual < cfg.tol).then_some(r)
        })
        .collect()
}

/// Newton from one given point (e.g. a printed eigenvector).
pub fn refine_fixed_point(w: &Word, x0: &[f64], cfg: &SolverConfig) -> Option<FixedPointResult> {
    let mut c = *cfg;
    c.max_iter = c.max_iter.max(100);
    newton(w, x0, &c).filter(|r| r.converged)
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub step: f64,
    /// grid minima below this must be explained by a solver root
    pub threshold: f64,
    /// radius in grid steps for matching roots and minima
    pub radius_steps: f64,
    pub exec: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            step: 0.01,
            threshold: 1e-3,
            radius_steps: 2.0,
            exec: Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub step: f64,
    pub points: usize,
    /// local minima of the residual below the threshold
    pub low_minima: usize,
    /// low minima not explained by any solver root
    pub missed: Vec<Vec<f64>>,
    /// isolated solver roots with no nearby grid minimum
    pub unmatched_roots: Vec<Vec<f64>>,
    pub pass: bool,
}

/// Local minima of the residual over a dense grid (rolling planes in 3-D).
pub fn grid_minima(w: &Word, lo: f64, hi: f64, step: f64, keep_below: f64, exec: Execution) -> (usize, Vec<(Vec<f64>, f64)>) {
    let n = ((hi - lo) / step).round() as usize + 1;
    let coord = |i: usize| lo + i as f64 * step;
    match w.context.dim() {
        2 => {
            let rows: Vec<Vec<f64>> = par::map_range(exec, n, |i| (0..n).map(|j| residual(w, &[coord(i), coord(j)])).collect());
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let r = rows[i][j];
                    if !(r < keep_below) {
                        continue;
                    }
                    let mut is_min = true;
                    for di in -1i64..=1 {
                        for dj in -1i64..=1 {
                            let (a, b) = (i as i64 + di, j as i64 + dj);
                            if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                                continue;
                            }
                            if rows[a as usize][b as usize] < r {
                                is_min = false;
                            }
                        }
                    }
                    if is_min {
                        out.push((vec![coord(i), coord(j)], r));
                    }
                }
            }
            (n * n, out)
        }
        _ => {
            let plane = |k: usize| -> Vec<f64> {
                let z = coord(k);
                par::map_range(exec, n * n, |ij| residual(w, &[coord(ij / n), coord(ij % n), z]))
            };
            let mut out = Vec::new();
            let mut below: Option<Vec<f64>> = None;
            let mut mid = plane(0);
            for k in 0..n {
                let above = (k + 1 < n).then(|| plane(k + 1));
                for i in 0..n {
                    for j in 0..n {
                        let r = mid[i * n + j];
                        if !(r < keep_below) {
                            continue;
                        }
                        let mut is_min = true;
                        'nb: for (dk, pl) in [(-1i64, below.as_ref()), (0, Some(&mid)), (1, above.as_ref())] {
                            let Some(pl) = pl else { continue };
                            for di in -1i64..=1 {
                                for dj in -1i64..=1 {
                                    if (dk, di, dj) == (0, 0, 0) {
                                        continue;
                                    }
                                    let (a, b) = (i as i64 + di, j as i64 + dj);
                                    if a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                                        continue;
                                    }
                                    if pl[a as usize * n + b as usize] < r {
                                        is_min = false;
                                        break 'nb;
                                    }
                                }
                            }
                        }
                        if is_min {
                            out.push((vec![coord(i), coord(j), coord(k)], r));
                        }
                    }
                }
                below = Some(mid);
                match above {
                    Some(a) => mid = a,
                    None => break,
                }
            }
            (n * n * n, out)
        }
    }
}

/// Dense-grid check of a solver result: every isolated root has a grid
/// minimum nearby, and every low grid minimum lies near a root (or is
/// pulled onto a non-isolated root by Newton).
pub fn grid_oracle(w: &Word, roots: &[FixedPointResult], solver: &SolverConfig, cfg: &OracleConfig) -> OracleReport {
    let radius = cfg.radius_steps * cfg.step + 1e-12;
    let (points, minima) = grid_minima(w, solver.box_lo, solver.box_hi, cfg.step, 0.5, cfg.exec);
    let unmatched_roots: Vec<Vec<f64>> = roots
        .iter()
        .filter(|r| r.isolated)
        .map(|r| r.evec.coords())
        .filter(|x| !minima.iter().any(|(m, _)| max_abs_diff(m, x) <= radius))
        .collect();
    let low: Vec<&(Vec<f64>, f64)> = minima.iter().filter(|(_, r)| *r < cfg.threshold).collect();
    let missed: Vec<Vec<f64>> = low
        .iter()
        .filter(|(m, _)| {
            if roots.iter().any(|r| max_abs_diff(&r.evec.coords(), m) <= radius) {
                return false;
            }
            // points on a root curve are explained by the curve itself
            match newton(w, m, solver) {
                Some(r) if r.converged && !r.isolated => false,
                _ => true,
            }
        })
        .map(|(m, _)| m.clone())
        .collect();
    let pass = missed.is_empty() && unmatched_roots.is_empty();
    OracleReport {
        step: cfg.step,
        points,
        low_minima: low.len(),
        missed,
        unmatched_roots,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, Context};

    fn coarse() -> SolverConfig {
        SolverConfig {
            grid_step: 0.25,
            ..Default::default()
        }
    }

    fn has(roots: &[FixedPointResult], p: &[f64]) -> bool {
        roots.iter().any(|r| max_abs_diff(&r.evec.coords(), p) < 1e-9)
    }

    #[test]
    fn e3_points() {
        let v = (3.0 - 5f64.sqrt()) / 2.0;
        let a = find_fixed_points(&parse_word("A", Context::E3).unwrap(), &coarse());
        assert!(has(&a, &[v, v]));
        assert_eq!(a.len(), 1);
        let c = find_fixed_points(&parse_word("C", Context::E3).unwrap(), &coarse());
        assert!(has(&c, &[1.0 / 3.0, 1.0 / 3.0]));
        assert!(c[0].isolated);
    }

    #[test]
    fn e4_points() {
        let t = 1.0 / 3.0;
        let a = find_fixed_points(&parse_word("A", Context::E4).unwrap(), &coarse());
        assert!(has(&a, &[t, t, t]) && has(&a, &[1.0, 1.0, 1.0]), "{a:?}");
        let d = find_fixed_points(&parse_word("D", Context::E4).unwrap(), &coarse());
        assert!(has(&d, &[0.25, 0.25, 0.5]));
    }

    #[test]
    fn curve_roots_are_thinned() {
        let b = find_fixed_points(&parse_word("B", Context::E3).unwrap(), &coarse());
        assert!(!b.is_empty() && b.len() <= 64);
        assert!(b.iter().all(|r| !r.isolated));
        for r in &b {
            let x = r.evec.coords();
            assert!((x[1] - (1.0 - 2.0 * x[0])).abs() < 1e-9);
        }
    }

    #[test]
    fn oracle_agrees_on_e3() {
        let w = parse_word("C", Context::E3).unwrap();
        let cfg = coarse();
        let roots = find_fixed_points(&w, &cfg);
        let rep = grid_oracle(&w, &roots, &cfg, &OracleConfig::default());
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn seed_grid_shape() {
        let g = seed_grid(2, 0.0, 1.0, 0.5);
        assert_eq!(g.len(), 9);
        assert_eq!(g[4], vec![0.5, 0.5]);
    }
}

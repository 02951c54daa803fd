//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so the lines always reach the test log. Exits
//! non-zero on a red criterion only when `POLYSYM_ACCEPTANCE_STRICT` is set.

use std::collections::BTreeSet;
use std::time::Instant;

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polysym::eigen::scan::{period_census, scan_words, ScanConfig};
use polysym::eigen::solver::{find_fixed_points, grid_oracle, OracleConfig, SolverConfig};
use polysym::eigen::spin::{lambda_sixfold_A, SpinConfig};
use polysym::generators3::{apply3, Generator3, Letter3};
use polysym::generators4::{apply4, gram_oracle, Generator4, Letter4};
use polysym::metric::{classify_hsymbol, SignatureLabel, SIGNATURE_TOL};
use polysym::relations::{verify_suite, Suite, Verdict, VerifyConfig};
use polysym::symbols::{e_to_f, e_to_h, f_to_e, honeycomb_counts, max_abs_diff};
use polysym::tables::{check_h_tables, check_spin_table, h_table, Space};
use polysym::tessellation::{honeycomb3_residual, mu5, star_transform, ESymbol5};
use polysym::words::{is_isotropy_member, parse_word, word_matrix, word_matrix_limit, Context, PeriodConfig};
use polysym::{ESymbol, ESymbol3, ESymbol4, FSymbol, HSymbol};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn e3(f: [f64; 2]) -> ESymbol3 {
    match f_to_e(&FSymbol::new(f.to_vec()).unwrap()).unwrap() {
        ESymbol::E3(e) => e,
        _ => unreachable!(),
    }
}

fn e4(f: [u32; 3]) -> ESymbol4 {
    match f_to_e(&FSymbol::new(f.iter().map(|&v| v as f64).collect()).unwrap()).unwrap() {
        ESymbol::E4(e) => e,
        _ => unreachable!(),
    }
}

fn h_tables() -> Outcome {
    let checks = check_h_tables();
    let flagged: Vec<_> = checks.iter().filter(|c| c.discrepancy).collect();
    let worst = checks
        .iter()
        .filter(|c| !c.discrepancy)
        .fold(0.0f64, |m, c| m.max(c.rel_diff));
    let target = (9.0 - 3.0 * 5f64.sqrt()) / 2.0;
    let ok_flag = flagged.len() == 1
        && flagged[0].polytope == [3, 3, 5]
        && flagged[0].entry == "beta"
        && (flagged[0].computed - target).abs() < 1e-12;
    outcome(
        ok_flag && worst < 1e-9,
        format!(
            "{} entries, max rel diff {worst:.1e}, flagged {:?}",
            checks.len(),
            flagged
                .iter()
                .map(|c| format!("{:?} {} printed {} computed {:.5}", c.polytope, c.entry, c.printed_text, c.computed))
                .collect::<Vec<_>>()
        ),
    )
}

fn reflections3() -> Outcome {
    let a = Generator3::new(Letter3::A, false);
    let r1 = apply3(a, e3([3.0, 4.0])).unwrap();
    let d1 = max_abs_diff(&r1.coords(), &e3([4.0, 3.0]).coords());
    let r2 = apply3(a, e3([3.0, 3.0])).unwrap();
    let d2 = max_abs_diff(&r2.coords(), &[2.0 / 3.0, 0.25]);
    let f = e_to_f(&ESymbol::E3(ESymbol3::new(2.0 / 3.0, 0.25))).unwrap();
    let m = f.entries()[0];
    let c = honeycomb_counts(m, f.entries()[1]).unwrap();
    let counts_ok = (c.y - 22.79).abs() <= 0.01 && (c.x - 34.19).abs() <= 0.01 && (c.n - 13.397).abs() <= 0.01;
    outcome(
        d1 < 1e-12 && d2 < 1e-12 && (m - 5.10430).abs() <= 1e-4 && counts_ok,
        format!(
            "|A{{3,4}}-{{4,3}}|={d1:.1e} |A{{3,3}}-[2/3,1/4]|={d2:.1e} m={m:.6} y={:.3} x={:.3} n={:.4}",
            c.y, c.x, c.n
        ),
    )
}

fn relation_suites() -> Outcome {
    let cfg = VerifyConfig::default();
    let mut total = 0;
    let mut failed = Vec::new();
    let mut heavy = None;
    for s in Suite::ALL {
        for r in verify_suite(s, &cfg) {
            total += 1;
            if r.relation == "AEH^10" {
                heavy = Some(r.stats.max_residual);
            }
            if r.stats.verdict != Verdict::Pass {
                let alt = r
                    .alternative
                    .as_ref()
                    .map(|a| format!(", alternative {} {} ({:.1e})", a.relation, a.stats.verdict, a.stats.max_residual))
                    .unwrap_or_default();
                failed.push(format!("{s} {} residual {:.2e}{alt}", r.relation, r.stats.max_residual));
            }
        }
    }
    outcome(
        failed.is_empty() && heavy.is_some(),
        format!(
            "{total} relations x 100 samples, AEH^10 residual {:.1e}, failing: {failed:?}",
            heavy.unwrap_or(f64::NAN)
        ),
    )
}

fn eigenvectors() -> Outcome {
    let s5 = 5f64.sqrt();
    let g = (3.0 - s5) / 2.0;
    let cases: [(&str, Context, Vec<Vec<f64>>); 5] = [
        ("A", Context::E3, vec![vec![g, g]]),
        ("C", Context::E3, vec![vec![1.0 / 3.0, 1.0 / 3.0]]),
        ("A", Context::E4, vec![vec![1.0 / 3.0; 3], vec![1.0; 3]]),
        ("D", Context::E4, vec![vec![0.25, 0.25, 0.5]]),
        ("E", Context::E4, vec![vec![0.0, 0.5, 0.5], vec![1.5, 0.5, 0.5]]),
    ];
    let solver = SolverConfig::default();
    let mut pass = true;
    let mut notes = Vec::new();
    for (w, ctx, want) in cases {
        let word = parse_word(w, ctx).unwrap();
        let roots = find_fixed_points(&word, &solver);
        for target in &want {
            let hit = roots
                .iter()
                .find(|r| max_abs_diff(&r.evec.coords(), target) < 1e-8 && r.residual < 1e-10);
            if hit.is_none() {
                pass = false;
                notes.push(format!("{w}({ctx}) missing {target:?}"));
            }
        }
        let o = grid_oracle(&word, &roots, &solver, &OracleConfig::default());
        pass &= o.pass;
        notes.push(format!("{w}({ctx}) roots {} oracle {}", roots.len(), if o.pass { "ok" } else { "MISSED" }));
    }
    outcome(pass, notes.join(", "))
}

fn sixfold() -> Outcome {
    let t = 1.0 / 3.0;
    let a6 = parse_word("A6", Context::P4).unwrap();
    let x = word_matrix(&a6, ESymbol4::new(t, t, t)).unwrap();
    let r1 = (x - Matrix4::identity() * -27.0).amax();
    let l1 = lambda_sixfold_A(ESymbol4::new(1.0, 1.0, 1.0)).unwrap();
    let lim = word_matrix_limit(&a6, ESymbol4::new(1.0, 1.0, 1.0)).unwrap();
    let r2 = (lim.matrix - Matrix4::identity()).amax();
    outcome(
        r1 < 1e-7 && (l1 - 1.0).abs() < 1e-12 && r2 < 1e-6,
        format!("|A^6 + 27 Id| = {r1:.1e}; scalar at [1,1,1] = {l1}, limit chain |X - Id| = {r2:.1e}"),
    )
}

fn spin_table() -> Outcome {
    let checks = check_spin_table(&SolverConfig::default(), &SpinConfig::default());
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.passes(1e-6, 1e-6))
        .map(|c| {
            format!(
                "{} (q {} printed {}{})",
                c.row.word,
                c.q.map_or("none".into(), |q| q.to_string()),
                c.row.q,
                c.error.as_ref().map(|e| format!(", {e}")).unwrap_or_default()
            )
        })
        .collect();
    let worst_ortho = checks.iter().filter_map(|c| c.ortho_residual).fold(0.0f64, f64::max);
    outcome(
        bad.is_empty(),
        format!(
            "{}/{} rows reproduce, max ortho residual {worst_ortho:.1e}, red rows: {bad:?}",
            checks.len() - bad.len(),
            checks.len()
        ),
    )
}

fn tessellation() -> Outcome {
    let mus: Vec<f64> = [
        ESymbol5::new(0.5, 0.25, 0.25, 0.5),
        ESymbol5::new(0.25, 0.5, 0.25, 0.25),
        ESymbol5::new(0.25, 0.25, 0.5, 0.25),
    ]
    .iter()
    .map(|e| mu5(e).unwrap())
    .collect();
    let mu_ok = mus.iter().all(|m| (m - 1.0).abs() < 1e-12);
    // exact E-symbols of {4,3,3}, {3,4,3}, {3,3,4}
    let [c433, c343, c334] = [[0.5, 0.25, 0.25], [0.25, 0.5, 0.25], [0.25, 0.25, 0.5]].map(|c| ESymbol4::from_slice(&c));
    let s1 = star_transform(&c433).unwrap().star == c334;
    let s2 = star_transform(&c343).unwrap().star == c433;
    let a = Generator4::new(Letter4::A, false);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 100 {
        let e = ESymbol4::new(
            rng.random_range(0.05..0.95),
            rng.random_range(0.05..0.95),
            rng.random_range(0.05..0.95),
        );
        let Ok(img) = apply4(a, e) else { continue };
        let Ok(back) = star_transform(&img) else { continue };
        worst = worst.max(max_abs_diff(&back.star.coords(), &e.coords()));
        n += 1;
    }
    let hr = honeycomb3_residual(&ESymbol4::new(0.5, 0.25, 0.5));
    outcome(
        mu_ok && s1 && s2 && worst < 1e-9 && hr == 0.0,
        format!("mu5 {mus:?}, stars exact {s1}/{s2}, |star(A e) - e| <= {worst:.1e} on 100 points, {{4,3,4}} residual {hr}"),
    )
}

fn signatures() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for row in h_table() {
        let h = e_to_h(&e4(row.polytope)).unwrap();
        let label = classify_hsymbol(&h, SIGNATURE_TOL).unwrap().label;
        let want = match row.space {
            Space::Euclidean => SignatureLabel::Euclidean,
            Space::Hyperbolic => SignatureLabel::Minkowski,
        };
        if label != want {
            pass = false;
            notes.push(format!("{:?} -> {label}", row.polytope));
        }
    }
    let deg = classify_hsymbol(&HSymbol::new(1.0, 1.0, 1.0), SIGNATURE_TOL).unwrap().label;
    pass &= deg == SignatureLabel::Degenerate;
    outcome(pass, format!("6 EUCLIDEAN, 4 MINKOWSKI expected; unit H-symbol {deg}; mismatches {notes:?}"))
}

fn isotropy() -> Outcome {
    let e = ESymbol::E4(ESymbol4::new(0.25, 0.25, 0.5));
    let res: Vec<(String, f64, bool)> = ["A3", "B", "D"]
        .iter()
        .map(|w| {
            let r = is_isotropy_member(&parse_word(w, Context::E4).unwrap(), e, 1e-10);
            (w.to_string(), r.residual, r.member)
        })
        .collect();
    outcome(
        res.iter().all(|(_, r, m)| *m && *r < 1e-10),
        format!("{res:?}"),
    )
}

fn scans() -> Outcome {
    let pcfg = PeriodConfig {
        samples: 4,
        ..PeriodConfig::default()
    };
    let s3 = scan_words(&ScanConfig::new(Context::E3, 5));
    let s4 = scan_words(&ScanConfig::new(Context::E4, 3));
    let p3 = period_census(Context::E3, 5, true, &pcfg);
    let p4 = period_census(Context::E4, 4, true, &pcfg);
    let allowed3: BTreeSet<u32> = [1, 2, 3, 4, 5].into();
    let allowed4: BTreeSet<u32> = [1, 2, 3, 4, 5, 6, 10].into();
    let ok = !s3.five_found() && !s4.five_found() && p3.observed().is_subset(&allowed3) && p4.observed().is_subset(&allowed4);
    outcome(
        ok,
        format!(
            "f-component 5 not found up to length 5 (E3, {} words) / 3 (E4, {} words): {}; periods E3 len 5 {:?}, E4 len 4 {:?}",
            s3.words,
            s4.words,
            !s3.five_found() && !s4.five_found(),
            p3.observed(),
            p4.observed()
        ),
    )
}

fn gram_master() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let reports: Vec<_> = Letter4::ALL
        .iter()
        .map(|&l| gram_oracle(Generator4::new(l, false), 100, &mut rng))
        .collect();
    let worst = reports.iter().fold(0.0f64, |m, r| m.max(r.max_residual));
    outcome(
        worst < 1e-8 && reports.iter().all(|r| r.samples == 100),
        format!("8 generators x 100 points, max residual {worst:.1e}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("H-symbol tables", h_tables),
        ("3-D reflections and counts", reflections3),
        ("relation suites", relation_suites),
        ("eigenvectors and grid oracle", eigenvectors),
        ("sixfold scaling", sixfold),
        ("spin table", spin_table),
        ("tessellation", tessellation),
        ("signatures", signatures),
        ("isotropy", isotropy),
        ("negative-claim scans", scans),
        ("Gram consistency", gram_master),
    ];
    let only: Option<usize> = std::env::var("POLYSYM_ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut reds = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        if only.is_some_and(|o| o != k) {
            continue;
        }
        let t = Instant::now();
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {k:>2} {verdict} {name} ({:.1}s): {}", t.elapsed().as_secs_f64(), o.detail);
        if !o.pass {
            reds.push(k);
        }
    }
    println!("acceptance: {} red {:?}", reds.len(), reds);
    if !reds.is_empty() && std::env::var_os("POLYSYM_ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}

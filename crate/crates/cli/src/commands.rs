use std::fmt::Write;

use serde::Serialize;
use serde_json::json;

use polysym::eigen::catalog;
use polysym::eigen::scan::{scan_words, ScanConfig};
use polysym::eigen::solver::{find_fixed_points, grid_oracle, refine_fixed_point, FixedPointResult, OracleConfig, SolverConfig};
use polysym::eigen::spin::{conformal_check, spin, ConformalReport, SpinConfig, SpinResult};
use polysym::relations::{verify_suite, Suite, VerifyConfig};
use polysym::symbols::{e_to_f, e_to_h, fmt_num, h_to_rho};
use polysym::tables::{check_h_tables, check_spin_table, h_tables_csv, spin_table_csv, Space};
use polysym::tessellation::{honeycomb3_residual, star_transform, stats_report};
use polysym::words::{orbit, parse_word, period, render, word_gram_residual, word_matrix_limit, PeriodConfig};
use polysym::{Context, ESymbol, ESymbol4, Word};

use crate::input::{self, Kind};
use crate::output::Report;
use crate::{Command, Failure, Global, SuiteArg, Which};

fn list(v: &[f64]) -> String {
    format!("[{}]", v.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(","))
}

fn sci(v: f64) -> String {
    format!("{v:.2e}")
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_positive(name: &str, v: Option<f64>) -> Result<(), Failure> {
    match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(usage(format!("--{name} must be positive, got {x}"))),
        _ => Ok(()),
    }
}

fn validate(g: &Global) -> Result<(), Failure> {
    check_positive("tol", g.tol)?;
    check_positive("grid-step", g.grid_step)?;
    if g.max_q == Some(0) {
        return Err(usage("--max-q must be positive"));
    }
    let d = SolverConfig::default();
    let (lo, hi) = (g.box_lo.unwrap_or(d.box_lo), g.box_hi.unwrap_or(d.box_hi));
    if !(lo < hi) {
        return Err(usage(format!("search box needs --box-lo < --box-hi, got {lo} and {hi}")));
    }
    Ok(())
}

fn solver(g: &Global, base: SolverConfig) -> SolverConfig {
    SolverConfig {
        box_lo: g.box_lo.unwrap_or(base.box_lo),
        box_hi: g.box_hi.unwrap_or(base.box_hi),
        grid_step: g.grid_step.unwrap_or(base.grid_step),
        tol: g.tol.map_or(base.tol, |t| t.min(base.tol)),
        ..base
    }
}

fn spin_config(g: &Global, strict: bool) -> SpinConfig {
    SpinConfig {
        max_q: g.max_q.unwrap_or(SpinConfig::default().max_q),
        strict,
        ..SpinConfig::default()
    }
}

fn word(text: &str, ctx: Context) -> Result<Word, Failure> {
    parse_word(text, ctx).map_err(|e| usage(format!("word '{text}': {e}")))
}

fn esymbol(text: &str) -> Result<ESymbol, Failure> {
    let s = input::symbol(text).map_err(Failure::Usage)?;
    Ok(input::to_esymbol(&s)?)
}

fn context_of(e: &ESymbol) -> Context {
    match e {
        ESymbol::E3(_) => Context::E3,
        ESymbol::E4(_) => Context::E4,
    }
}

fn esymbol4(text: &str) -> Result<ESymbol4, Failure> {
    input::esymbol4(esymbol(text)?).ok_or_else(|| usage(format!("'{text}' is not a 3-entry E-symbol")))
}

pub fn run(g: &Global, cmd: Command) -> Result<Report, Failure> {
    validate(g)?;
    match cmd {
        Command::Convert { symbol } => convert(&symbol),
        Command::Transform { word, esymbol, trace } => transform(&word, &esymbol, trace),
        Command::Matrix { word, esymbol } => matrix(&word, &esymbol),
        Command::Order { word, context, samples } => order(g, &word, context.into(), samples),
        Command::Relations { suite, samples } => relations(g, suite, samples),
        Command::Eigen {
            word,
            context,
            oracle,
            oracle_step,
        } => eigen(g, &word, context.into(), oracle.then_some(oracle_step)),
        Command::Spin { word, evec, strict } => spin_cmd(g, &word, evec.as_deref(), strict),
        Command::Scan {
            max_len,
            context,
            no_prune,
            isolated_only,
        } => scan(g, max_len, context.into(), !no_prune, isolated_only),
        Command::Tessellate { esymbol } => tessellate(&esymbol),
        Command::Tables { which } => tables(g, which),
    }
}

#[derive(Serialize)]
struct Converted {
    f: Option<Vec<f64>>,
    e: Vec<f64>,
    h: Option<Vec<f64>>,
    rho: Option<Vec<f64>>,
}

fn convert(text: &str) -> Result<Report, Failure> {
    let s = input::symbol(text).map_err(Failure::Usage)?;
    let e = input::to_esymbol(&s)?;
    let f = e_to_f(&e).ok().map(|f| f.entries().to_vec());
    let h = input::esymbol4(e).and_then(|e4| e_to_h(&e4).ok());
    let rho = h.and_then(|h| h_to_rho(&h, 1.0).ok());
    let out = Converted {
        f: if s.kind == Kind::F { Some(s.values.clone()) } else { f },
        e: e.coords(),
        h: if s.kind == Kind::H { Some(s.values.clone()) } else { h.map(|h| h.coords().to_vec()) },
        rho: if s.kind == Kind::Rho { Some(s.values.clone()) } else { rho.map(|r| r.rho.to_vec()) },
    };
    let forms = [(Kind::F, &out.f), (Kind::E, &Some(out.e.clone())), (Kind::H, &out.h), (Kind::Rho, &out.rho)];
    let text: Vec<String> = forms
        .iter()
        .filter(|(k, _)| *k != s.kind)
        .filter_map(|(k, v)| v.as_ref().map(|v| format!("{}:{}", k.prefix(), list(v))))
        .collect();
    Ok(Report::new(text.join(" "), &out))
}

#[derive(Serialize)]
struct Step {
    step: usize,
    letter: Option<char>,
    e: Vec<f64>,
}

#[derive(Serialize)]
struct Transformed {
    word: String,
    context: Context,
    start: Vec<f64>,
    image: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<Step>>,
}

fn transform(w: &str, e: &str, trace: bool) -> Result<Report, Failure> {
    let e = esymbol(e)?;
    let w = word(w, context_of(&e))?;
    let orb = orbit(&w, e)?;
    let steps: Vec<Step> = orb
        .iter()
        .enumerate()
        .map(|(i, x)| Step {
            step: i,
            letter: i.checked_sub(1).map(|k| w.letters[k].as_char()),
            e: x.coords(),
        })
        .collect();
    let image = orb.last().expect("orbit starts at e").coords();
    let mut text = String::new();
    if trace {
        for s in &steps {
            let _ = writeln!(text, "{:>3} {} {}", s.step, s.letter.unwrap_or(' '), list(&s.e));
        }
    }
    text.push_str(&format!("e:{}", list(&image)));
    let csv = {
        let mut c = String::from("step,letter,e\n");
        for s in &steps {
            let _ = writeln!(c, "{},{},\"{}\"", s.step, s.letter.map_or(String::new(), String::from), list(&s.e));
        }
        c
    };
    let out = Transformed {
        word: render(&w),
        context: w.context,
        start: e.coords(),
        image,
        trace: trace.then_some(steps),
    };
    Ok(Report::new(text, &out).with_csv(csv))
}

#[derive(Serialize)]
struct MatrixOut {
    word: String,
    e: Vec<f64>,
    matrix: Vec<Vec<f64>>,
    det: f64,
    /// natural-form and E-symbol consistency of X·G·Xᵀ
    gram_residual: Option<f64>,
    limit: bool,
}

fn matrix(w: &str, e: &str) -> Result<Report, Failure> {
    let e = esymbol4(e)?;
    let w = word(w, Context::E4)?;
    let lm = word_matrix_limit(&w, e)?;
    let m = lm.matrix;
    let out = MatrixOut {
        word: render(&w),
        e: e.coords().to_vec(),
        matrix: (0..4).map(|i| (0..4).map(|j| m[(i, j)]).collect()).collect(),
        det: m.determinant(),
        gram_residual: word_gram_residual(&w, e).ok(),
        limit: lm.limit,
    };
    let mut text = String::new();
    for row in &out.matrix {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>16}", fmt_num(*v))).collect();
        let _ = writeln!(text, "{}", cells.join(" "));
    }
    let _ = write!(
        text,
        "det={} gram_residual={}",
        fmt_num(out.det),
        out.gram_residual.map_or("undefined".into(), sci)
    );
    if out.limit {
        text.push_str(" (limit at a removable singularity)");
    }
    let mut csv = String::from("row,c0,c1,c2,c3\n");
    for (i, row) in out.matrix.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(csv, "{i},{}", cells.join(","));
    }
    Ok(Report::new(text, &out).with_csv(csv))
}

fn order(g: &Global, w: &str, ctx: Context, samples: usize) -> Result<Report, Failure> {
    if samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let w = word(w, ctx)?;
    let d = PeriodConfig::default();
    let cfg = PeriodConfig {
        samples,
        max_q: g.max_q.unwrap_or(d.max_q),
        tol: g.tol.unwrap_or(d.tol),
        seed: g.seed,
        ..d
    };
    let r = period(&w, &cfg);
    let text = match r.q {
        Some(q) => format!(
            "q={q} ({} samples, max residual {})",
            r.samples,
            r.residual.map_or("-".into(), sci)
        ),
        None => format!("q=none up to {} ({} samples, {} singular)", r.max_q, r.samples, r.singular),
    };
    Ok(Report::new(text, &r))
}

fn relations(g: &Global, suite: SuiteArg, samples: usize) -> Result<Report, Failure> {
    let suite = match suite {
        SuiteArg::Rrp3 => Suite::Rrp3,
        SuiteArg::Rrp4 => Suite::Rrp4,
        SuiteArg::Arp4 => Suite::Arp4,
    };
    let cfg = VerifyConfig {
        samples,
        tol: g.tol,
        seed: g.seed,
        ..VerifyConfig::default()
    };
    let reports = verify_suite(suite, &cfg);
    let mut text = String::new();
    for r in &reports {
        let _ = write!(
            text,
            "{} {:<24} max residual {}",
            r.stats.verdict,
            r.relation,
            sci(r.stats.max_residual)
        );
        if let Some(a) = &r.alternative {
            let _ = write!(text, "  [alt {} {} {}]", a.relation, a.stats.verdict, sci(a.stats.max_residual));
        }
        text.push('\n');
    }
    let pass = reports.iter().filter(|r| r.stats.verdict == polysym::relations::Verdict::Pass).count();
    let _ = write!(text, "{suite}: {pass}/{} PASS", reports.len());
    Ok(Report::new(text, &reports))
}

#[derive(Serialize)]
struct Root {
    evec: Vec<f64>,
    residual: f64,
    isolated: bool,
    iterations: usize,
    min_denominator: f64,
}

impl From<&FixedPointResult> for Root {
    fn from(r: &FixedPointResult) -> Self {
        Root {
            evec: r.evec.coords(),
            residual: r.residual,
            isolated: r.isolated,
            iterations: r.iterations,
            min_denominator: r.min_denominator,
        }
    }
}

fn root_line(r: &Root) -> String {
    format!(
        "{} residual {} {}",
        list(&r.evec),
        sci(r.residual),
        if r.isolated { "isolated" } else { "on a curve or surface" }
    )
}

fn eigen(g: &Global, w: &str, ctx: Context, oracle_step: Option<f64>) -> Result<Report, Failure> {
    let w = word(w, ctx)?;
    let cfg = solver(g, SolverConfig::default());
    let found = find_fixed_points(&w, &cfg);
    if found.is_empty() {
        return Err(Failure::Compute(format!(
            "no fixed point of {} in [{}, {}]^{}",
            render(&w),
            cfg.box_lo,
            cfg.box_hi,
            ctx.dim()
        )));
    }
    let roots: Vec<Root> = found.iter().map(Root::from).collect();
    let mut text: Vec<String> = roots.iter().map(root_line).collect();
    let oracle = match oracle_step {
        Some(step) => {
            if !(step > 0.0) {
                return Err(usage("--oracle-step must be positive"));
            }
            let o = grid_oracle(&w, &found, &cfg, &OracleConfig { step, ..OracleConfig::default() });
            text.push(format!(
                "oracle step {}: {} points, {} low minima, {} missed, {} unmatched, {}",
                step,
                o.points,
                o.low_minima,
                o.missed.len(),
                o.unmatched_roots.len(),
                if o.pass { "PASS" } else { "FAIL" }
            ));
            Some(o)
        }
        None => None,
    };
    let csv = crate::output::flatten_csv(&serde_json::to_value(&roots).expect("json"));
    let data = json!({ "word": render(&w), "context": ctx, "roots": roots, "oracle": oracle });
    Ok(Report::new(text.join("\n"), &data).with_csv(csv))
}

#[derive(Serialize)]
struct SpinOut {
    root: Root,
    spin: Option<SpinResult>,
    conformal: Option<ConformalReport>,
    error: Option<String>,
}

fn spin_at(w: &Word, r: &FixedPointResult, cfg: &SpinConfig) -> SpinOut {
    let e = input::esymbol4(r.evec).expect("E4 word");
    let (s, error) = match spin(w, e, cfg) {
        Ok(s) => (Some(s), None),
        Err(err) => (None, Some(err.to_string())),
    };
    SpinOut {
        root: Root::from(r),
        spin: s,
        conformal: conformal_check(w, e).ok(),
        error,
    }
}

fn spin_text(o: &SpinOut) -> String {
    let mut t = match (&o.spin, &o.error) {
        (Some(s), _) => s.to_string(),
        (None, Some(e)) => format!("no spin: {e}"),
        (None, None) => String::new(),
    };
    let _ = write!(t, "\n  at {}", root_line(&o.root));
    if let Some(s) = &o.spin {
        if let Some(r) = s.ortho_residual {
            let _ = write!(t, "\n  UGU^T residual {}", sci(r));
        }
        if s.even_negative {
            t.push_str("\n  even q with negative lambda: U^q = -Id");
        }
        if s.limit {
            t.push_str("\n  frame chain evaluated as a limit");
        }
    }
    if let Some(c) = &o.conformal {
        let _ = write!(t, "\n  mu={} conformal residual {}", fmt_num(c.mu), sci(c.conformal_residual));
    }
    t
}

fn spin_cmd(g: &Global, w: &str, evec: Option<&str>, strict: bool) -> Result<Report, Failure> {
    let w = word(w, Context::E4)?;
    let cfg = solver(g, SolverConfig::default());
    let scfg = spin_config(g, strict);
    match evec {
        Some(text) => {
            let x = input::numbers(text).map_err(Failure::Usage)?;
            if x.len() != 3 {
                return Err(usage(format!("--evec needs 3 entries, got {}", x.len())));
            }
            let r = refine_fixed_point(&w, &x, &cfg)
                .ok_or_else(|| Failure::Compute(format!("Newton did not converge to a fixed point of {} near {}", render(&w), list(&x))))?;
            let out = spin_at(&w, &r, &scfg);
            if let Some(e) = &out.error {
                return Err(Failure::Compute(e.clone()));
            }
            Ok(Report::new(spin_text(&out), &out))
        }
        None => {
            let found = find_fixed_points(&w, &cfg);
            if found.is_empty() {
                return Err(Failure::Compute(format!("no fixed point of {} in the search box", render(&w))));
            }
            let outs: Vec<SpinOut> = found.iter().map(|r| spin_at(&w, r, &scfg)).collect();
            let text: Vec<String> = outs.iter().map(spin_text).collect();
            Ok(Report::new(text.join("\n"), &outs))
        }
    }
}

fn scan(g: &Global, max_len: usize, ctx: Context, prune: bool, isolated_only: bool) -> Result<Report, Failure> {
    if max_len == 0 {
        return Err(usage("--max-len must be positive"));
    }
    let mut cfg = ScanConfig::new(ctx, max_len);
    cfg.solver = solver(g, cfg.solver);
    cfg.spin = spin_config(g, false);
    cfg.filters.prune = prune;
    cfg.filters.isolated_only = isolated_only;
    let report = scan_words(&cfg);
    let before = catalog::load(&g.catalog)?.len();
    let total = catalog::append(&g.catalog, report.records.clone())?;
    let text = format!(
        "{report}\ncatalog {}: {} new, {} total",
        g.catalog.display(),
        total - before,
        total
    );
    let csv = crate::output::flatten_csv(&serde_json::to_value(&report.records).expect("json"));
    let data = json!({ "catalog": g.catalog, "added": total - before, "total": total, "scan": report });
    Ok(Report::new(text, &data).with_csv(csv))
}

fn tessellate(text: &str) -> Result<Report, Failure> {
    match esymbol(text)? {
        ESymbol::E3(e) => {
            let r = stats_report(&e)?;
            let s = &r.stats;
            let mut t = format!(
                "y={} x={} n={} m={} i={}\ncovering factors: vertex reflection {}, face reflection {}",
                fmt_num(s.y),
                fmt_num(s.x),
                fmt_num(s.n),
                fmt_num(s.m),
                fmt_num(s.i),
                fmt_num(r.vertex_covering),
                fmt_num(r.face_covering)
            );
            for c in &r.comparisons {
                let _ = write!(
                    t,
                    "\n{:<14} max rel diff {:+.4}{}",
                    c.source,
                    c.max_rel_diff,
                    if r.matches.contains(&c.source) { "  match" } else { "" }
                );
            }
            let csv = r.to_csv();
            Ok(Report::new(t, &r).with_csv(csv))
        }
        ESymbol::E4(e) => {
            let s = star_transform(&e)?;
            let out = json!({
                "esymbol": e,
                "star": s.star,
                "mu_residual": s.mu_residual,
                "honeycomb_residual": honeycomb3_residual(&e),
            });
            let f = e_to_f(&ESymbol::E4(s.star)).ok();
            let mut t = format!("star:{}", list(&s.star.coords()));
            if let Some(f) = f {
                let _ = write!(t, " f:{}", list(f.entries()));
            }
            let _ = write!(t, "\nmu residual {}\nhoneycomb residual {}", sci(s.mu_residual), sci(honeycomb3_residual(&e)));
            Ok(Report::new(t, &out))
        }
    }
}

fn tables(g: &Global, which: Which) -> Result<Report, Failure> {
    let h = matches!(which, Which::All | Which::H).then(check_h_tables);
    let spin = matches!(which, Which::All | Which::Spin)
        .then(|| check_spin_table(&solver(g, SolverConfig::default()), &spin_config(g, false)));
    let mut text = String::new();
    let mut csv = String::new();
    if let Some(h) = &h {
        text.push_str("H-symbol tables\n");
        for c in h {
            let [a, b, gm] = c.polytope;
            let space = match c.space {
                Space::Euclidean => "euclidean",
                Space::Hyperbolic => "hyperbolic",
            };
            let _ = writeln!(
                text,
                "{{{a},{b},{gm}}} {space:<10} {:<5} printed {:<10} computed {:<16}{}",
                c.entry,
                c.printed_text,
                fmt_num(c.computed),
                if c.discrepancy { "DISCREPANCY" } else { "" }
            );
        }
        csv.push_str(&h_tables_csv(h));
    }
    if let Some(s) = &spin {
        if h.is_some() {
            text.push('\n');
            csv.push('\n');
        }
        text.push_str("spin table\n");
        for c in s {
            let r = &c.row;
            let ok = c.passes(1e-6, 1e-6);
            let _ = writeln!(
                text,
                "q={:<2} J={:<4} {:<8} printed lambda {:<12} computed {:<17}{}",
                r.q,
                r.j,
                r.word,
                fmt_num(r.lambda),
                c.lambda_q.map_or("-".into(), fmt_num),
                if ok { "ok".to_string() } else { format!("MISMATCH {}", c.error.clone().unwrap_or_default()) }
            );
        }
        csv.push_str(&spin_table_csv(s));
    }
    let data = json!({ "h_tables": h, "spin_table": spin });
    Ok(Report::new(text.trim_end().to_string(), &data).with_csv(csv))
}

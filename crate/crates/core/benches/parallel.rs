use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polysym::eigen::scan::{scan_words, ScanConfig};
use polysym::eigen::solver::{find_fixed_points, SolverConfig};
use polysym::par::Execution;
use polysym::relations::{verify_suite, Suite, VerifyConfig};
use polysym::words::{parse_word, Context};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn relations(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_suite_rrp4");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = VerifyConfig {
            exec,
            ..VerifyConfig::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| verify_suite(Suite::Rrp4, cfg))
        });
    }
    g.finish();
}

fn fixed_points(c: &mut Criterion) {
    let w = parse_word("D", Context::E4).unwrap();
    let mut g = c.benchmark_group("find_fixed_points_D");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SolverConfig {
            grid_step: 0.1,
            exec,
            ..SolverConfig::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| find_fixed_points(&w, cfg))
        });
    }
    g.finish();
}

fn scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan_e3_len3");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = ScanConfig::new(Context::E3, 3).with_exec(exec);
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| b.iter(|| scan_words(cfg)));
    }
    g.finish();
}

criterion_group!(benches, relations, fixed_points, scan);
criterion_main!(benches);

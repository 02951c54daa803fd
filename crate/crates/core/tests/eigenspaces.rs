use polysym::eigen::solver::{find_fixed_points, SolverConfig};
use polysym::eigenspace::{EigenspaceDescriptor, LocusKind};
use polysym::generators3::{eigenspace3, Letter3};
use polysym::generators4::{eigenspace4, Letter4};
use polysym::symbols::max_abs_diff;
use polysym::words::{apply_word, parse_word, Context};
use polysym::ESymbol;

fn in_box(x: &[f64], cfg: &SolverConfig) -> bool {
    x.iter().all(|v| (cfg.box_lo..=cfg.box_hi).contains(v))
}

fn check(desc: &EigenspaceDescriptor, ctx: Context, cfg: &SolverConfig) {
    let w = parse_word(&desc.letter.to_string(), ctx).unwrap();
    let roots = find_fixed_points(&w, cfg);
    for p in desc.points() {
        if !in_box(&p, cfg) || !p.iter().all(|v| v.is_finite()) {
            continue;
        }
        assert!(
            roots.iter().any(|r| max_abs_diff(&r.evec.coords(), &p) < 1e-7),
            "{}({ctx}) point {p:?} not found among {:?}",
            desc.letter,
            roots.iter().map(|r| r.evec.coords()).collect::<Vec<_>>()
        );
    }
    // every root lies on some locus, unless it sits on a 0/0 point of the map
    for r in roots.iter().filter(|r| r.min_denominator > 1e-6) {
        assert!(desc.contains(&r.evec.coords(), 1e-6), "{}({ctx}) stray root {:?}", desc.letter, r.evec);
    }
    for locus in desc.loci.iter().filter(|l| l.kind != LocusKind::Point) {
        for k in 1..8 {
            let t = 0.1 * k as f64 + 0.013;
            let params = vec![t; locus.kind.params()];
            let x = (locus.sample)(&params);
            assert!(locus.contains(&x, 1e-12));
            let Ok(e) = ESymbol::from_coords(&x) else { continue };
            if let Ok(y) = apply_word(&w, e) {
                assert!(
                    max_abs_diff(&y.coords(), &x) < 1e-9,
                    "{}({ctx}) {} at {x:?} moves to {:?}",
                    desc.letter,
                    locus.description,
                    y.coords()
                );
            }
        }
    }
}

#[test]
fn e3_eigenspaces_rediscovered() {
    let cfg = SolverConfig::default();
    for l in Letter3::ALL {
        check(&eigenspace3(l), Context::E3, &cfg);
    }
}

#[test]
fn e4_eigenspaces_rediscovered() {
    let cfg = SolverConfig {
        grid_step: 0.1,
        ..SolverConfig::default()
    };
    for l in Letter4::ALL {
        check(&eigenspace4(l), Context::E4, &cfg);
    }
}

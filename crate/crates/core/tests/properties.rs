use proptest::prelude::*;

use polysym::eigen::catalog::EigentopeRecord;
use polysym::generators4::{apply4, Generator4, Letter4};
use polysym::metric::SignatureLabel;
use polysym::par::Execution;
use polysym::relations::{suite_relations, verify_relation, Suite, VerifyConfig};
use polysym::symbols::{e_to_f, e_to_h, f_to_e, h_to_rho, honeycomb_counts, max_abs_diff, rho_to_e};
use polysym::tessellation::star_transform;
use polysym::words::{apply_word, parse_word, render, Context, Word};
use polysym::{ESymbol, ESymbol3, ESymbol4};

fn unit() -> impl Strategy<Value = f64> {
    0.02f64..0.98
}

fn word(ctx: Context, max: usize) -> impl Strategy<Value = String> {
    let letters: Vec<char> = match ctx {
        Context::E3 => "AaBCcD".chars().collect(),
        _ => "AaBbCcDdEeFfGgHh".chars().collect(),
    };
    prop::collection::vec(prop::sample::select(letters), 1..=max).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #[test]
    fn f_e_round_trip(x in unit(), d in unit(), h in unit()) {
        let e = ESymbol::E4(ESymbol4::new(x, d, h));
        let back = f_to_e(&e_to_f(&e).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&back.coords(), &e.coords()) < 1e-12);
    }

    #[test]
    fn e_h_rho_round_trip(x in unit(), d in unit(), h in unit()) {
        let e = ESymbol4::new(x, d, h);
        if let Ok(hs) = e_to_h(&e) {
            if let Ok(rho) = h_to_rho(&hs, 1.0) {
                if let Ok(back) = rho_to_e(&rho) {
                    prop_assert!(max_abs_diff(&back.coords(), &e.coords()) < 1e-10 * (1.0 + hs.alpha.abs()));
                }
            }
        }
    }

    #[test]
    fn counts_satisfy_incidences(m in 3.0f64..5.9, i in 3.0f64..3.9) {
        if let Ok(c) = honeycomb_counts(m, i) {
            prop_assert!(c.incidence_residual() < 1e-9 * c.x.max(1.0));
        }
    }

    #[test]
    fn star_undoes_vertex_reflection(x in 0.05f64..0.95, d in 0.05f64..0.95, h in 0.05f64..0.95) {
        let e = ESymbol4::new(x, d, h);
        if let Ok(img) = apply4(Generator4::new(Letter4::A, false), e) {
            if let Ok(s) = star_transform(&img) {
                prop_assert!(s.mu_residual < 1e-9);
                prop_assert!(max_abs_diff(&s.star.coords(), &e.coords()) < 1e-8);
            }
        }
    }

    #[test]
    fn render_parse_round_trip(w in word(Context::E4, 9)) {
        let parsed = parse_word(&w, Context::E4).unwrap();
        prop_assert_eq!(render(&parsed), w);
    }

    #[test]
    fn word_times_inverse_is_identity(w in word(Context::E4, 5), x in 0.1f64..0.9, d in 0.1f64..0.9, h in 0.1f64..0.9) {
        let w = parse_word(&w, Context::E4).unwrap();
        let e = ESymbol::E4(ESymbol4::new(x, d, h));
        if let Ok(back) = apply_word(&w.concat(&w.inverse()), e) {
            let scale = back.coords().iter().fold(1.0f64, |m, v| m.max(v.abs()));
            prop_assert!(max_abs_diff(&back.coords(), &e.coords()) < 1e-7 * scale);
        }
    }

    #[test]
    fn e3_dual_is_involution(x in unit(), d in unit()) {
        let e = ESymbol3::new(x, d);
        let back = polysym::generators3::dual3(polysym::generators3::dual3(e));
        prop_assert!(max_abs_diff(&back.coords(), &e.coords()) < 1e-15);
    }

    #[test]
    fn record_json_round_trip(
        x in any::<f64>().prop_filter("finite", |v| v.is_finite()),
        l in any::<f64>().prop_filter("finite", |v| v.is_finite()),
        f in prop::option::of(prop::collection::vec(prop_oneof![2.0f64..10.0, Just(f64::INFINITY)], 3)),
    ) {
        let r = EigentopeRecord {
            word: "AGA".into(),
            context: Context::E4,
            evec: vec![x, 0.2, -0.3],
            q: Some(4),
            lambda_q: Some(l),
            j: Some(1.5),
            signature: Some(SignatureLabel::Other),
            residual: 1e-17,
            ortho_residual: None,
            det_residual: Some(1e-12),
            isolated: false,
            f_symbol: f,
        };
        let s = serde_json::to_string(&r).unwrap();
        let back: EigentopeRecord = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}

#[test]
fn verification_independent_of_scheduling() {
    let rels = suite_relations(Suite::Arp4);
    for (i, r) in rels.iter().enumerate().take(6) {
        let seq = verify_relation(r, i, &VerifyConfig { samples: 30, exec: Execution::Sequential, ..VerifyConfig::default() });
        let par = verify_relation(r, i, &VerifyConfig { samples: 30, exec: Execution::Parallel, ..VerifyConfig::default() });
        assert_eq!(seq, par);
    }
}

#[test]
fn identity_word_renders_as_one() {
    assert_eq!(render(&Word::identity(Context::E3)), "1");
}

use std::process::{Command, Output};

fn polysym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polysym"))
        .args(args)
        .env_remove("POLYSYM_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = polysym(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn convert_f_symbol() {
    let o = polysym(&["convert", "f:4,3,3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("e:[0.5,0.25,0.25] h:[4,2,1.3333"), "{s}");
}

#[test]
fn convert_json_fields() {
    let v = json(&["convert", "e:0.5,0.25,0.25"]);
    let f: Vec<f64> = serde_json::from_value(v["f"].clone()).unwrap();
    assert!(f.iter().zip([4.0, 3.0, 3.0]).all(|(a, b)| (a - b).abs() < 1e-12));
    assert_eq!(v["rho"][0], 1.0);
}

#[test]
fn named_constants_accepted() {
    let o = polysym(&["transform", "A", "phi2,phi2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "e:[0.38196601125,0.38196601125]");
    let help = stdout(&polysym(&["--help"]));
    for name in ["phi", "phi1", "phi2", "sqrt5"] {
        assert!(help.contains(name), "{name} missing from help");
    }
}

#[test]
fn spin_example() {
    let o = polysym(&["spin", "AGA", "--evec", "0.5,0.281,0.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert!(first.starts_with("q=4 lambda=7.4"), "{first}");
    assert!(first.ends_with("J=3/2"), "{first}");
}

#[test]
fn relations_rrp3_all_pass() {
    let v = json(&["relations", "rrp3"]);
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["verdict"] == "PASS"));
}

#[test]
fn json_output_is_reproducible() {
    let a = stdout(&polysym(&["relations", "rrp3", "--seed", "7", "--format", "json"]));
    let b = stdout(&polysym(&["relations", "rrp3", "--seed", "7", "--format", "json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", a);
}

#[test]
fn tables_csv_is_stable() {
    let a = polysym(&["tables", "--format", "csv"]);
    let b = polysym(&["tables", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    let flagged: Vec<&str> = s.lines().filter(|l| l.ends_with(",true")).collect();
    assert_eq!(flagged.len(), 1, "{flagged:?}");
    assert!(flagged[0].starts_with("\"{3,3,5}\",euclidean,beta"));
}

#[test]
fn matrix_sixfold_scalar() {
    let v = json(&["matrix", "AAAAAA", "1/3,1/3,1/3"]);
    let m: Vec<Vec<f64>> = serde_json::from_value(v["matrix"].clone()).unwrap();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { -27.0 } else { 0.0 };
            assert!((x - want).abs() < 1e-7);
        }
    }
    assert!(v["gram_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn order_and_eigen() {
    let v = json(&["order", "AGA"]);
    assert_eq!(v["q"], 4);
    let v = json(&["eigen", "A", "--context", "e3", "--oracle"]);
    assert_eq!(v["oracle"]["pass"], true);
    let r = &v["roots"][0]["evec"];
    assert!((r[0].as_f64().unwrap() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-10);
}

#[test]
fn tessellate_star() {
    let v = json(&["tessellate", "0.5,0.25,0.25"]);
    let star = &v["star"];
    let got = [&star["epsilon"], &star["delta"], &star["eta"]].map(|x| x.as_f64().unwrap());
    assert_eq!(got, [0.25, 0.25, 0.5]);
    let o = polysym(&["tessellate", "0.5,0.25", "--format", "csv"]);
    assert!(stdout(&o).starts_with("source,field,literature,computed,rel_diff\n"));
}

#[test]
fn scan_appends_to_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_polysym"))
            .args(["scan", "--max-len", "1", "--format", "json"])
            .env("POLYSYM_CATALOG", &path)
            .output()
            .unwrap()
    };
    let first: serde_json::Value = serde_json::from_slice(&run().stdout).unwrap();
    assert!(first["added"].as_u64().unwrap() > 0);
    let second: serde_json::Value = serde_json::from_slice(&run().stdout).unwrap();
    assert_eq!(second["added"], 0);
    assert_eq!(second["total"], first["total"]);
    let stored: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(stored.len() as u64, first["total"].as_u64().unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(polysym(&["convert", "h:1,2"]).status.code(), Some(2));
    assert_eq!(polysym(&["convert", "f:1,3,3"]).status.code(), Some(2));
    assert_eq!(polysym(&["nonsense"]).status.code(), Some(2));
    assert_eq!(polysym(&["eigen", "A", "--box-lo", "1", "--box-hi", "0"]).status.code(), Some(2));
    let o = polysym(&["tessellate", "0.5,0.5,0.25"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("star transform"));
    let o = polysym(&["eigen", "A", "--context", "e3", "--box-lo", "0.6", "--box-hi", "0.9"]);
    assert_eq!(o.status.code(), Some(1));
}

use std::collections::HashMap;
use std::path::Path;
use std::process::Command as Proc;

use hypinfl::field::Rationals;
use hypinfl::poly::DensePoly;
use hypinfl::Error;
use hypinfl_cli::{parse_poly, run, Command, PolyExpr, RunConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn cfg(field: &str, f: Option<&str>, ell: Option<usize>) -> RunConfig {
    RunConfig {
        field: Some(field.into()),
        f: f.map(Into::into),
        ell,
        ..Default::default()
    }
}

fn exe() -> Proc {
    let mut p = Proc::new(env!("CARGO_BIN_EXE_hypinfl"));
    p.env_remove("HYPINFL_OUT_DIR");
    p
}

fn expr() -> impl Strategy<Value = PolyExpr> {
    let leaf = prop_oneof![
        (0i64..20, 1i64..6).prop_map(|(n, d)| PolyExpr::Num(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        Just(PolyExpr::Var("x".into())),
        Just(PolyExpr::Var("a".into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| PolyExpr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PolyExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PolyExpr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PolyExpr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, e)| PolyExpr::Pow(Box::new(a), e)),
        ]
    })
}

fn value(e: &PolyExpr) -> DensePoly<Rationals> {
    let consts = HashMap::from([("a".to_string(), BigRational::new(3.into(), 7.into()))]);
    e.to_poly(&Rationals, "x", &consts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // Negative numerals are not in the grammar, so leaves are nonnegative and
    // the roundtrip holds on trees.
    #[test]
    fn print_parse_roundtrip(e in expr()) {
        let back = parse_poly(&e.to_string(), &["x", "a"]).unwrap();
        prop_assert_eq!(value(&back), value(&e));
        prop_assert_eq!(back, e);
    }
}

#[test]
fn weierstrass_p2_is_exact() {
    let c = RunConfig {
        family: Some("weierstrass".into()),
        n: Some(2),
        ..Default::default()
    };
    let out = run(Command::Poly, &c).unwrap();
    assert_eq!(out.stdout.trim(), "(3*x^4 + 6*x^2*a + 24*x - a^2)/8");
    assert_eq!(out.code, 0);
}

#[test]
fn vanishing_det_m_is_a_hypothesis_failure() {
    let c = RunConfig {
        g: Some(1),
        ..cfg("F5", None, Some(5))
    };
    let out = run(Command::MatrixM, &c).unwrap();
    assert_eq!(out.code, 2);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["det"], "5");
    assert_eq!(v["det_mod_p"], "0");
}

#[test]
fn audit_over_f13_reaches_the_rank() {
    let out = run(Command::Audit, &cfg("F13", Some("x^3 + x + 2"), Some(5))).unwrap();
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["ell"], 5);
    assert_eq!(v["g"], 1);
}

#[test]
fn char_two_is_rejected() {
    assert_eq!(
        run(Command::Audit, &cfg("Fq:p=2", Some("x^3 + x"), Some(1))),
        Err(Error::CharacteristicTwo)
    );
    let st = exe().args(["audit", "--field", "Fq:p=2", "--f", "x^3+x", "--ell", "1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&st.stderr).contains("characteristic 2"));
}

#[test]
fn float_literals_are_parse_errors() {
    let st = exe().args(["poly", "--f", "x^2.5", "--ell", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&st.stderr).contains("parse error at 3"));
}

fn assert_rational_cells(path: &Path) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let headers = rdr.headers().unwrap().clone();
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        rows += 1;
        for (h, cell) in headers.iter().zip(rec.iter()) {
            if ["signs", "separable", "denominator_convention"].contains(&h) {
                continue;
            }
            assert!(!cell.contains('.'), "{h} = {cell} is not exact");
            cell.parse::<BigRational>().unwrap_or_else(|_| panic!("{h} = {cell} is not a rational"));
        }
    }
    assert!(rows > 0, "{} is empty", path.display());
}

#[test]
fn sweep_writes_exact_csv() {
    let dir = tempfile::tempdir().unwrap();
    let st = exe()
        .args(["sweep", "--n", "4", "--grid", "-2:2:1/2", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    assert_rational_cells(&dir.path().join("sweep_n4.csv"));
    assert!(dir.path().join("conjecture_n4.json").exists());
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let st = exe()
        .env("HYPINFL_OUT_DIR", dir.path())
        .args(["count", "--n", "2", "--prime-bound", "40"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert_rational_cells(&dir.path().join("points_n2.csv"));
}

#[test]
fn same_seed_same_bytes() {
    let once = |dir: &Path| {
        let st = exe()
            .args(["audit", "--field", "F13", "--g", "1", "--seed", "3", "--ell", "2", "--out-dir"])
            .arg(dir)
            .output()
            .unwrap();
        assert_eq!(st.status.code(), Some(0));
        st.stdout
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(once(a.path()), once(b.path()));
    let other = exe()
        .args(["audit", "--field", "F13", "--g", "1", "--seed", "4", "--ell", "2"])
        .output()
        .unwrap();
    assert_ne!(once(a.path()), other.stdout);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"field": "F13", "f": "x^3 + x + 2", "ell": 2}"#).unwrap();
    let file = RunConfig::load(&path).unwrap();
    assert_eq!(file.ell, Some(2));
    let merged = file.merged(RunConfig {
        ell: Some(5),
        ..Default::default()
    });
    assert_eq!(merged.ell, Some(5));
    assert_eq!(merged.f.as_deref(), Some("x^3 + x + 2"));

    std::fs::write(&path, r#"{"field": "F13", "colour": 1}"#).unwrap();
    assert!(matches!(RunConfig::load(&path), Err(Error::Parse { .. })));

    let st = exe().args(["audit", "--config"]).arg(dir.path().join("missing.json")).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
}

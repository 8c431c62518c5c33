use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).env_remove("QZETA_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = qzeta(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn spec(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "specs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn frac(v: &Value) -> (String, String) {
    (v["num"].as_str().unwrap().to_string(), v["den"].as_str().unwrap().to_string())
}

#[test]
fn cf_json_for_d3() {
    let v = json(&["cf", "--disc", "3"]);
    assert_eq!(v["a"], serde_json::json!([2, 1]));
    assert_eq!(v["r"], 2);
    assert_eq!(v["ell"], 2);
    assert_eq!(v["negative"]["b"], serde_json::json!([4]));
    assert_eq!(v["unit"]["alpha"], 1);
    assert_eq!(v["unit"]["beta"], 1);
}

#[test]
fn odd_period_doubles() {
    let v = json(&["cf", "--disc", "2"]);
    assert_eq!(v["r"], 1);
    assert_eq!(v["ell"], 2);
}

#[test]
fn zeta_values_for_d3() {
    let o = qzeta(&["zeta", "--disc", "3", "-k", "0..3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for expected in ["zeta(0) = 1/12", "zeta(-1) = 1/12", "zeta(-2) = 1/18", "zeta(-3) = 23/120"] {
        assert!(text.contains(expected), "{expected} missing from\n{text}");
    }
}

#[test]
fn exact_methods_agree() {
    let main = frac(&json(&["zeta", "--disc", "7", "-k", "1"])["value"]);
    for m in ["gp", "zagier"] {
        assert_eq!(frac(&json(&["zeta", "--disc", "7", "-k", "1", "--method", m])["value"]), main, "{m}");
    }
}

#[test]
fn oracle_reports_error() {
    let v = json(&["zeta", "--disc", "3", "-k", "1", "--method", "oracle"]);
    assert_eq!(frac(&v["exact"]), ("1".into(), "12".into()));
    assert!(v["abs_err"].as_f64().unwrap() < 1e-3);
}

#[test]
fn unsupported_method_is_a_row_error() {
    let o = qzeta(&["zeta", "--disc", "3", "-k", "2", "--method", "zagier", "--csv"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("d=3,2,zagier,,,"), "{row}");
}

#[test]
fn sweep_keeps_input_order_and_reports_errors() {
    let o = qzeta(&["zeta", "--discs", "5,4,3,2", "--csv"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let inputs: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(inputs, ["d=5", "d=4", "d=3", "d=2"]);
    assert!(text.lines().nth(2).unwrap().contains("radicand"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let one = qzeta(&["zeta", "--discs", "2..60", "-k", "0..2", "--csv", "--threads", "1"]);
    let many = qzeta(&["zeta", "--discs", "2..60", "-k", "0..2", "--csv", "--threads", "6"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn omega_with_ideal_norm() {
    // N(b) = 2 doubles the form, so zeta(-1) doubles.
    let base = frac(&json(&["zeta", "--omega", "1,1,3", "-k", "1"])["value"]);
    let scaled = frac(&json(&["zeta", "--omega", "1,1,3", "--normb", "2", "-k", "1"])["value"]);
    assert_eq!(base, ("1".into(), "12".into()));
    assert_eq!(scaled, ("1".into(), "6".into()));
}

#[test]
fn family_polynomials() {
    let v = json(&["family", "--spec", &spec("ex1.json"), "-k", "0..2", "--check"]);
    let r = v["results"].as_array().unwrap();
    assert_eq!(r.len(), 3);
    assert_eq!(r[1]["display"], "1/72*n^3 + 5/72*n");
    assert_eq!(r[2]["display"], "1/270*n^5 + 1/54*n^3 + 1/30*n");
    for row in r {
        assert_eq!(row["degree_ok"], true);
        assert_eq!(row["ck_ok"], true);
        assert_eq!(row["crosscheck"], true);
    }
}

#[test]
fn family_sweep_matches_polynomial() {
    let o = qzeta(&["family", "--spec", &spec("ex2.json"), "-k", "0..1", "--n-range", "1..5", "--csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn family_from_radicand() {
    let v = json(&["family", "--from-d", "2,0,1", "-k", "1"]);
    assert_eq!(v["results"][0]["display"], "1/72*n^3 + 5/72*n");
}

#[test]
fn non_uniform_radicand_is_rejected() {
    let o = qzeta(&["family", "--from-d", "1,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("period varies"));
}

#[test]
fn verify_fields_passes() {
    let o = qzeta(&["verify", "--discs", "2..40", "-k", "0..2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));
}

#[test]
fn verify_with_oracle() {
    let o = qzeta(&["verify", "--disc", "5", "-k", "0..1", "--oracle"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("oracle"));
}

#[test]
fn verify_reference_spec_flags_table_mismatch() {
    let o = qzeta(&["verify", "--spec", &spec("ex1.json"), "-k", "0..1"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("PASS family ex1: k=0 matches reference table"));
    assert!(text.contains("FAIL family ex1: k=1 matches reference table"));
    assert!(text.contains("PASS family ex1: k=1 table reproduced from tabulated form"));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("qzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let o = qzeta(&["cf", "--disc", "7", "--json", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["r"], 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(qzeta(&["zeta", "--disc", "3", "-k", "x"]).status.code(), Some(2));
    assert_eq!(qzeta(&["zeta", "--disc", "3", "--method", "nope"]).status.code(), Some(2));
    assert_eq!(qzeta(&["family"]).status.code(), Some(2));
}

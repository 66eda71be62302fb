use std::process::{Command, Output};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;

fn unipow(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_unipow"));
    cmd.args(args).env_remove("UPC_SCAN_BOUND");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<String> {
    stdout(o).lines().map(str::to_string).collect()
}

#[test]
fn counts_rows() {
    let o = unipow(&["counts", "--q", "2", "--M", "3", "--d-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let l = lines(&o);
    assert_eq!(l[0], "q,d,M,N_tilde,N_tilde_M,R_tilde,R_tilde_M,S_tilde_prime,S_prime");
    assert_eq!(l[1], "2,1,3,3,1,0,0,2,0");
    assert!(l[3].starts_with("2,3,3,2,0,"));
    let o = unipow(&["counts", "--q", "3", "--M", "5", "--d-max", "1"]);
    assert_eq!(lines(&o)[1], "3,1,5,4,4,2,2,0,0");
}

#[test]
fn counts_empty_range_is_header_only() {
    let o = unipow(&["counts", "--q", "2", "--M", "3", "--d-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o).len(), 1);
}

#[test]
fn series_rows() {
    let o = unipow(&["series", "--q", "2", "--M", "3", "--family", "sep", "--kind", "elements", "--T", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let l = lines(&o);
    assert_eq!(l[0], "n,coefficient,decimal");
    assert_eq!(l[1], "0,1,1");
    assert!(l[2].starts_with("1,1/3,"));
    assert_eq!(l.len(), 6);
    let o = unipow(&["series", "--q", "2", "--M", "2", "--family", "sep", "--kind", "classes"]);
    assert_eq!(lines(&o)[2], "1,3,3");
}

#[test]
fn decimals_rerender_from_rationals() {
    let o = unipow(&["series", "--q", "3", "--M", "2", "--family", "ss", "--kind", "elements"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let r = BigRational::from_str(&rec[1]).unwrap();
        assert_eq!(r.to_string(), &rec[1]);
        assert_eq!(format!("{}", r.to_f64().unwrap()), &rec[2]);
    }
}

#[test]
fn json_layout() {
    let o = unipow(&["series", "--q", "2", "--M", "3", "--family", "cyc", "--kind", "classes", "--T", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let meta = &v["meta"];
    for key in ["q", "M", "T", "family", "kind", "version"] {
        assert!(meta.get(key).is_some(), "missing meta.{key}");
    }
    assert_eq!(meta["family"], "cyc");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["rows"][1]["coefficient"], "1");
}

#[test]
fn verify_passes_and_reports() {
    let o = unipow(&["verify", "--q", "2", "--M", "2", "--n-max", "2", "--family", "sep"]);
    assert_eq!(o.status.code(), Some(0));
    let o = unipow(&["verify", "--q", "2", "--M", "2", "--n-max", "2", "--family", "cyc"]);
    assert_eq!(o.status.code(), Some(1), "cyclic needs gcd(M, q) = 1");
    let o = unipow(&["verify", "--q", "2", "--M", "3", "--n-max", "1", "--family", "ss"]);
    assert_eq!(o.status.code(), Some(0));
    let l = lines(&o);
    assert!(l.contains(&"1,ss,elements,1/3,1/3,PASS".to_string()));
    let o = unipow(&["verify", "--q", "3", "--M", "5", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with("PASS")));
}

#[test]
fn semisimple_hypothesis_is_a_usage_error() {
    let o = unipow(&["verify", "--q", "2", "--M", "2", "--family", "ss"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gcd(M, q)"));
    let o = unipow(&["series", "--q", "3", "--M", "4", "--family", "ss", "--kind", "classes"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("prime"));
}

#[test]
fn usage_errors() {
    assert_eq!(unipow(&["counts"]).status.code(), Some(1));
    assert_eq!(unipow(&["counts", "--q", "6", "--M", "2"]).status.code(), Some(1));
    assert_eq!(unipow(&["counts", "--q", "2", "--M", "1"]).status.code(), Some(1));
    assert_eq!(unipow(&["series", "--q", "2", "--M", "3"]).status.code(), Some(1));
    assert_eq!(unipow(&["series", "--q", "2", "--M", "3", "--family", "all"]).status.code(), Some(1));
    assert_eq!(unipow(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(unipow(&["--help"]).status.code(), Some(0));
}

#[test]
fn scan_bound_variable() {
    let o = run_with_env(&["verify", "--q", "2", "--M", "3", "--n-max", "2"], &[("UPC_SCAN_BOUND", "1")]);
    assert_eq!(o.status.code(), Some(0), "closure route gives the same groups");
    let o = run_with_env(&["verify", "--q", "2", "--M", "3"], &[("UPC_SCAN_BOUND", "lots")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn resource_bound_exit_code() {
    // |U(3, 7)| is past the closure bound
    let o = unipow(&["table", "--q", "7", "--M", "2", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn table_counts() {
    let o = unipow(&["table", "--q", "2", "--M", "2", "--n-max", "2", "--family", "ss"]);
    assert_eq!(o.status.code(), Some(0));
    let l = lines(&o);
    assert_eq!(l[0], "n,family,kind,image,total,group_order");
    assert!(l.contains(&"2,ss,classes,6,6,18".to_string()));
    assert!(l.contains(&"2,ss,elements,9,9,18".to_string()));
}

#[test]
fn out_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = unipow(&["counts", "--q", "3", "--M", "4", "--d-max", "5", "--format", "json", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

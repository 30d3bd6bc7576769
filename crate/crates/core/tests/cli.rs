use std::io::Write as _;

use motionfactor::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("motionfactor").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap()
}

#[test]
fn check_negative_reports_cofactor() {
    let (code, out, _) = call(&["check", "t^2+1+eps*i"]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["factorizable"], false);
    assert_eq!(v["cofactor"], "t^2+1");
}

#[test]
fn check_positive() {
    let (code, out, _) = call(&["check", "--fixture", "ex-MS"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["factorizable"], true);
}

#[test]
fn factor_fixture_both_strategies() {
    for strategy in ["recursive", "primary-pipeline"] {
        let (code, out, err) = call(&["factor", "--strategy", strategy, "--fixture", "triple-demo"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out.matches("(t").count(), 4, "{out}");
    }
}

#[test]
fn factor_negative_exits_one() {
    let (code, out, _) = call(&["factor", "t^2+1+eps*i"]);
    assert_eq!(code, 1);
    assert!(out.contains("cofactor: t^2+1"), "{out}");
}

#[test]
fn factor_json_then_verify() {
    let (code, out, _) = call(&["--json", "factor", "--fixture", "ex-MS"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["factors"].as_array().unwrap().len(), 4);

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(out.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let (code, _, err) = call(&["verify", "--fixture", "ex-MS", "--chain", path]);
    assert_eq!(code, 0, "{err}");
    // The same chain does not multiply to the unrepaired polynomial.
    let (code, _, _) = call(&["verify", "--fixture", "ex-noMS", "--chain", path]);
    assert_eq!(code, 1);
}

#[test]
fn cofactor_and_mgfactor() {
    let (code, out, _) = call(&["cofactor", "t^2+1+eps*i"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "t^2+1");
    let (code, out, _) = call(&["mgfactor", "--fixture", "triple-demo"]);
    assert_eq!(code, 0);
    assert!(out.contains("(t^2+1)^4"), "{out}");
}

#[test]
fn act_prints_csv() {
    let (code, out, _) = call(&["act", "t-i", "--point", "0,1,0", "--ts", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "t,x,y,z\n0,0,-1,0\n1,0,0,-1\n");
}

#[test]
fn float_mode_flag() {
    let (code, out, err) = call(&["--mode", "float", "factor", "--fixture", "ex-MT"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.matches("(t").count(), 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["bogus"]).0, 2);
    assert_eq!(call(&["check", "t^2+"]).0, 2);
    assert_eq!(call(&["check", "--fixture", "missing"]).0, 2);
    assert_eq!(call(&["--tol", "-1", "check", "t-i"]).0, 2);
}

#[test]
fn fixtures_listing_parses() {
    let (code, out, _) = call(&["fixtures"]);
    assert_eq!(code, 0);
    for f in motionfactor::fixtures::all() {
        assert!(out.contains(f.id));
        let (code, _, err) = call(&["check", f.expr]);
        assert_ne!(code, 2, "{}: {err}", f.id);
    }
}

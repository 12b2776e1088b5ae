//! Command-line surface: exit codes, reports and structured output.

use std::process::Command;

use kappa_twist::frontend::cli::run;
use serde_json::Value;

fn kappa(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("kappa").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn kappa_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = kappa(&all);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn docs(name: &str) -> String {
    format!("{}/../../docs/models/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn report_fields_are_present() {
    let (code, v) = kappa_json(&["expand", "--model", "d2-classical", "--what", "pi0", "--order", "2"]);
    assert_eq!(code, 0);
    for field in ["command", "model", "order", "constraints", "status", "payload"] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    assert_eq!(v["command"], "expand");
    assert_eq!(v["model"], "d2-classical");
    assert_eq!(v["order"], 2);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["payload"]["pi0"]["truncation"], 2);
}

#[test]
fn pi0_text() {
    let (code, out, _) = kappa(&["expand", "--model", "d2-classical", "--what", "pi0", "--order", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("1 + L*(P0) + L^2*(1/2*P0^2 - 1/2*P1^2) + O(L^3)"), "{out}");
}

#[test]
fn coefficients_are_exact_strings() {
    let (_, v) = kappa_json(&["expand", "--model", "d2-classical", "--what", "coproducts", "--order", "2"]);
    let orders = v["payload"]["coproducts"]["P0"]["orders"].as_array().unwrap();
    let second = orders.iter().find(|o| o["order"] == 2).unwrap();
    let coeffs: Vec<&str> =
        second["terms"].as_array().unwrap().iter().map(|t| t["coefficient"].as_str().unwrap()).collect();
    assert!(coeffs.contains(&"1/2+0 i"));
    assert!(coeffs.contains(&"-1/2+0 i"));
    let term = &second["terms"][0];
    assert_eq!(term["monomials"].as_array().unwrap().len(), 2);
}

#[test]
fn twist_obstruction_exits_two() {
    let (code, out, _) = kappa(&["solve-twist", "--model", "d2-classical", "--order", "2"]);
    assert_eq!(code, 2);
    assert!(out.contains("obstruction"), "{out}");
    let (_, v) = kappa_json(&["solve-twist", "--model", "d2-classical", "--order", "2"]);
    assert_eq!(v["status"], "obstruction");
    assert_eq!(v["constraints"].as_array().unwrap().len(), 2);
    let second = &v["payload"]["orders"][1];
    assert_eq!(second["status"], "obstruction");
    assert_eq!(second["verified"], true);
    assert!(!second["certificate"]["rows"].as_array().unwrap().is_empty());
}

#[test]
fn first_order_twist_is_a_solution() {
    let (code, v) = kappa_json(&["solve-twist", "--model", "d2-classical", "--order", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "solution");
    assert_eq!(v["payload"]["orders"][0]["particular_text"], "-i*P1 # N");
    assert_eq!(v["payload"]["reproduces_target"]["passed"], true);
}

#[test]
fn first_order_rmatrix() {
    let (code, out, _) = kappa(&["solve-rmatrix", "--model", "d2-classical", "--order", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("r1 = i*P1 # N - i*N # P1"), "{out}");
}

#[test]
fn check_suites() {
    for suite in ["hom", "coassoc", "intertwiner", "bicross", "quantum-map", "casimir"] {
        let (code, v) = kappa_json(&["check", "--model", "d2-classical", "--suite", suite, "--order", "2"]);
        assert_eq!(code, 0, "{suite}");
        assert_eq!(v["status"], "pass", "{suite}");
    }
    let (code, _) = kappa_json(&["check", "--model", "d2-classical", "--suite", "ybe", "--order", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn abelian_twist_coassociator() {
    let (code, v) = kappa_json(&[
        "coassociator",
        "--model",
        "d2-classical",
        "--order",
        "3",
        "--twist",
        "exp(L*(P0 # P1) + O(L^4))",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["trivial"], true);
}

#[test]
fn model_files() {
    for (file, suite) in [("d2-classical.kappa", "hom"), ("d4-classical.kappa", "hom"), ("abelian-twist.kappa", "ybe")]
    {
        let (code, _, err) = kappa(&["check", "--file", &docs(file), "--suite", suite]);
        assert_eq!(code, 0, "{file}: {err}");
    }
    let (code, out, _) = kappa(&["validate", "--file", &docs("d4-classical.kappa")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(kappa(&["expand", "--model", "d3-classical", "--what", "pi0"]).0, 1);
    assert_eq!(kappa(&["frobnicate"]).0, 1);
    assert_eq!(kappa(&["check", "--model", "d4-classical", "--suite", "casimir"]).0, 1);
    assert_eq!(kappa(&["solve-twist", "--order", "0"]).0, 1);
    let (code, _, err) = kappa(&["check", "--suite", "hom", "--file", "/nonexistent/model.kappa"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn malformed_file_reports_position() {
    let path = std::env::temp_dir().join(format!("kappa-bad-{}.kappa", std::process::id()));
    std::fs::write(&path, "algebra \"bad\" {\n    generator A : momentum;\n    bracket [A, B] = A;\n}\n").unwrap();
    let (code, _, err) = kappa(&["validate", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 1);
    assert!(err.contains("3:"), "{err}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["expand", "--model", "d4-classical", "--what", "coproducts", "--order", "2", "--json"];
    assert_eq!(kappa(&args).1, kappa(&args).1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kappa");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["validate", "--model", "d2-classical"]), Some(0));
    assert_eq!(status(&["solve-twist", "--model", "d2-classical", "--order", "2"]), Some(2));
    assert_eq!(status(&["validate", "--model", "nope"]), Some(1));
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn acb(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_acb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn acb");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str], stdin: Option<&str>) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = acb(&full, stdin);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn param(report: &Value, name: &str) -> String {
    report["classification"]["parameters"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["name"] == name)
        .map(|p| p["value"].as_str().unwrap().to_string())
        .unwrap()
}

fn membership(report: &Value) -> Vec<String> {
    report["classification"]["membership"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn classify_example_document() {
    let doc = stdout(&acb(&["construct", "example", "--a1", "1", "--a2", "3"], None));
    let rep = json(&["classify"], Some(&doc));
    assert_eq!(membership(&rep), ["F9", "F10"]);
    assert_eq!(param(&rep, "mu"), "1");
    assert_eq!(param(&rep, "nu"), "-6");
    assert!(rep.get("curvature").is_none());
}

#[test]
fn classify_reads_input_file() {
    let dir = std::env::temp_dir().join(format!("acb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("abelian.json");
    std::fs::write(&path, r#"{"mode": "exact", "structure_constants": []}"#).unwrap();
    let rep = json(&["classify", "--input", path.to_str().unwrap()], None);
    assert_eq!(membership(&rep), ["F0"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn curvature_of_f8_family() {
    let rep = json(&["curvature", "--construct", "F8", "--alpha", "2"], None);
    let k = &rep["curvature"];
    assert_eq!(k["tau"], "-8");
    assert_eq!(k["k12"], "4");
    assert_eq!(k["k01"], "-4");
    assert_eq!(k["k02"], "-4");
    assert_eq!(k["defects"]["r3_identity"], "0");
    assert_eq!(k["defects"]["template"]["curvature"], "0");
}

#[test]
fn f10_family_is_flat() {
    let out = acb(&["curvature", "--construct", "F10", "--alpha", "3"], None);
    assert!(out.status.success());
    assert!(stdout(&out).contains("flat: true"));
}

#[test]
fn abelian_curvature_is_zero() {
    let rep = json(&["curvature"], Some(r#"{"structure_constants": []}"#));
    let k = &rep["curvature"];
    assert_eq!(k["r_nonzero"], Value::Array(vec![]));
    assert_eq!(k["connection"], Value::Array(vec![]));
    assert_eq!(k["tau"], "0");
    assert_eq!(k["flat"], true);
}

#[test]
fn construct_documents() {
    let doc: Value = serde_json::from_str(&stdout(&acb(&["construct", "F4", "--alpha", "1"], None))).unwrap();
    let brackets = doc["structure_constants"].as_array().unwrap();
    assert_eq!(brackets.len(), 2);
    assert_eq!((brackets[0]["i"].as_u64(), brackets[0]["j"].as_u64()), (Some(0), Some(1)));
    assert_eq!(brackets[0]["coefficients"]["2"], "1");
    assert_eq!(brackets[1]["coefficients"]["1"], "-1");

    let abelian: Value =
        serde_json::from_str(&stdout(&acb(&["construct", "F1", "--alpha", "0", "--beta", "0"], None))).unwrap();
    assert_eq!(abelian["structure_constants"], Value::Array(vec![]));
}

#[test]
fn construct_then_classify_recovers_class() {
    let grid = ["-2", "-1", "-1/2", "1/2", "1", "2"];
    for class in ["F1", "F4", "F5", "F8", "F9", "F10", "F11"] {
        let betas: &[&str] = if matches!(class, "F1" | "F11") { &grid } else { &["0"] };
        for alpha in grid {
            for beta in betas {
                let doc = acb(&["construct", class, "--alpha", alpha, "--beta", beta], None);
                assert!(doc.status.success(), "{}", stderr(&doc));
                let rep = json(&["classify"], Some(&stdout(&doc)));
                assert_eq!(membership(&rep), [class], "{class} alpha={alpha} beta={beta}");
            }
        }
    }
}

#[test]
fn float_mode_matches_exact_classification() {
    let doc = stdout(&acb(&["construct", "example", "--a1", "1/2", "--a2", "3"], None));
    let exact = json(&["curvature"], Some(&doc));
    let float = json(&["curvature", "--mode", "float", "--tolerance", "1e-12"], Some(&doc));
    assert_eq!(membership(&exact), membership(&float));
    assert_eq!(exact["curvature"]["tau"], "-1/2");
    assert_eq!(float["curvature"]["tau"], "-0.5");
    assert_eq!(float["input"]["mode"], "float");
}

#[test]
fn bare_decimals_need_float_mode() {
    let doc = r#"{"structure_constants": [{"i": 1, "j": 2, "coefficients": {"0": 0.25}}]}"#;
    let out = acb(&["classify"], Some(doc));
    assert_eq!(out.status.code(), Some(1));
    let rep = json(&["classify", "--mode", "float"], Some(doc));
    assert_eq!(param(&rep, "nu"), "0.25");
}

#[test]
fn input_errors_exit_1() {
    let reversed = "{\"structure_constants\": [\n  {\"i\": 2, \"j\": 1, \"coefficients\": {\"0\": \"1\"}}]}";
    let out = acb(&["classify"], Some(reversed));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let out = acb(&["classify"], Some(r#"{"structure_constants": [{"i": 0, "j": 1, "coefficients": {"2": "1/0"}}]}"#));
    assert_eq!(out.status.code(), Some(1));

    let out = acb(&["classify", "--tolerance", "1e-6"], Some(r#"{"structure_constants": []}"#));
    assert_eq!(out.status.code(), Some(1));

    let out = acb(&["construct", "F0", "--alpha", "1"], None);
    assert_eq!(out.status.code(), Some(1));

    let out = acb(&["construct", "F4", "--alpha", "1", "--beta", "2"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn jacobi_violation_exits_2() {
    let doc = r#"{"structure_constants": [
        {"i": 0, "j": 1, "coefficients": {"0": 1}},
        {"i": 1, "j": 2, "coefficients": {"1": 1}}
    ]}"#;
    let out = acb(&["curvature"], Some(doc));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Jacobi"));
}

#[test]
fn verify_reports_biinvariance_route_mismatch() {
    let out = acb(&["verify", "--grid", "0", "--seeds", "4"], None);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("PASS  family membership (7/7 ok)"), "{text}");
    assert_eq!(text.matches("FAIL  ").count(), 1, "{text}");
    assert!(stderr(&out).contains("pattern heisenberg: phi_biinvariant"));
}

#[test]
fn verify_detects_corrupted_reference() {
    let out = acb(&["verify", "--grid", "0", "--seeds", "1", "--corrupt-reference"], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("tabulated family curvature: F5(alpha=0)"), "{}", stderr(&out));
}

#[test]
fn verify_json_lists_checks() {
    let out = acb(&["verify", "--grid", "1", "--seeds", "2", "--format", "json"], None);
    let rep: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = rep["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "F closed form = F via connection" && c["failures"] == 0));
    let notes = rep["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n["kind"] == "DocumentedDiscrepancy"));
}

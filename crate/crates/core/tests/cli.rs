use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_solweights")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn weights_f_l0() {
    let (code, out) = run(&["weights", "--system", "F", "--l", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("total 12"));
}

#[test]
fn json_report_shape() {
    let (code, out) = run(&["--json", "weights", "--system", "H", "--l", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "weights");
    assert_eq!(v["results"]["weights"]["total"], 12);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn hasse_json_l1() {
    let (code, out) = run(&["hasse", "--l", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 17);
    assert_eq!(v["edges"].as_array().unwrap().len(), 29);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["weights", "--system", "Q", "--l", "0"]).0, 2);
    assert_eq!(run(&["cohomology", "--group", "nonsense", "--prime", "3"]).0, 2);
    assert_eq!(run(&["--cap", "500", "verify", "sol", "--l", "0"]).0, 3);
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_solweights"))
        .args(["defect-zero", "--group", "S7"])
        .env("SOLWEIGHTS_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

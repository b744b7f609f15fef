use std::process::{Command, Output};

use cores::bfile;
use num_bigint::BigInt;
use serde_json::Value;

fn cores(args: &[&str]) -> Output {
    cores_env(args, &[])
}

fn cores_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cores"));
    for key in ["CORES_FORMAT", "CORES_THREADS", "CORES_MEMORY_BUDGET", "CORES_TIME_BUDGET"] {
        cmd.env_remove(key);
    }
    cmd.args(args).envs(env.iter().copied()).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&cores(&["anderson", "--s", "3", "--t", "5"])), "7\n");
    assert_eq!(stdout(&cores(&["sister", "--max-n", "4", "--method", "closed-form"])), "1 2 3 7 12\n");
    let text = stdout(&cores(&["straub", "--max-n", "22", "--format", "bfile", "--threads", "2"]));
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 23);
    assert_eq!(lines[0], "0 1");
    assert_eq!(lines[22], "22 77761008");
    assert!(text.lines().any(|l| l.starts_with('#') && l.contains("offset 0")));
}

#[test]
fn dp_and_oracle_agree_to_twelve() {
    let dp = json(&cores(&["straub", "--max-n", "12", "--method", "dp", "--format", "json"]));
    let oracle = json(&cores(&["straub", "--max-n", "12", "--method", "oracle", "--format", "json"]));
    assert_eq!(dp["terms"], oracle["terms"]);
    assert_eq!((dp["provenance"].as_str(), oracle["provenance"].as_str()), (Some("dp"), Some("oracle")));
    let sister_dp = json(&cores(&["sister", "--max-n", "12", "--format", "json"]));
    let sister_cf = json(&cores(&["sister", "--max-n", "12", "--method", "closed-form", "--format", "json"]));
    assert_eq!(sister_dp["terms"], sister_cf["terms"]);
}

#[test]
fn json_envelope_is_schema_stable() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("a3.svg");
    let runs = [
        vec!["anderson", "--s", "4", "--t", "7"],
        vec!["straub", "--max-n", "5"],
        vec!["sister", "--max-n", "5", "--method", "closed-form"],
        vec!["family", "repeats", "--k", "2", "--terms", "8", "--gf"],
        vec!["family", "odd-diagonals", "--k", "2", "--terms", "8"],
        vec!["guess", "--degx", "2", "--degy", "1", "--terms", "1,2,3,5,8,13,21,34,55,89,144,233,377,610,987"],
        vec!["diagram", "--n", "3", "--ideal", "6,3,2,1", "--out", svg.to_str().unwrap()],
    ];
    let keys = ["equation", "gf", "name", "note", "offset", "provenance", "terms"];
    for mut args in runs {
        args.extend(["--format", "json"]);
        let v = json(&cores(&args));
        let mut got: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        got.sort_unstable();
        assert_eq!(got, keys, "{args:?}");
        assert!(v["terms"].as_array().unwrap().iter().all(Value::is_string), "{args:?}");
        assert!(v["offset"].is_i64());
    }
    let fam = json(&cores(&["family", "repeats", "--k", "2", "--terms", "4", "--gf", "--format", "json"]));
    assert!(fam["gf"]["numerator"].as_array().unwrap().iter().all(Value::is_string));
    assert!(fam["equation"].is_null());
}

#[test]
fn flags_override_environment() {
    let plain = cores_env(&["straub", "--max-n", "3"], &[("CORES_FORMAT", "json")]);
    assert!(json(&plain)["terms"].is_array());
    let flag = cores_env(&["straub", "--max-n", "3", "--format", "plain"], &[("CORES_FORMAT", "json")]);
    assert_eq!(stdout(&flag), "1 2 4 7\n");
    let starved = cores_env(&["straub", "--max-n", "16"], &[("CORES_MEMORY_BUDGET", "1K")]);
    assert_eq!(starved.status.code(), Some(3));
    let roomy = cores_env(&["straub", "--max-n", "16", "--memory-budget", "1G"], &[("CORES_MEMORY_BUDGET", "1K")]);
    assert!(roomy.status.success());
    let threads = cores_env(&["straub", "--max-n", "8"], &[("CORES_THREADS", "1")]);
    assert_eq!(stdout(&threads), "1 2 4 7 17 31 80 152 404\n");
}

#[test]
fn bfile_output_round_trips_through_the_reader() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sister.txt");
    let text = stdout(&cores(&["sister", "--max-n", "30", "--method", "closed-form", "--format", "bfile"]));
    std::fs::write(&path, &text).unwrap();
    let parsed = bfile::read(&path).unwrap();
    let plain = stdout(&cores(&["sister", "--max-n", "30", "--method", "closed-form"]));
    let want: Vec<BigInt> = plain.split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!((parsed.offset, parsed.terms), (0, want));

    // the guesser reads the same file; prefixing 1, 1 gives A047749 from index 0
    let a047749 = format!("# A047749\n0 1\n1 1\n{}", bfile::render(2, &text.lines().filter(|l| !l.starts_with('#')).map(|l| l.split_whitespace().nth(1).unwrap()).collect::<Vec<_>>(), &[]));
    let path = dir.path().join("a047749.txt");
    std::fs::write(&path, a047749).unwrap();
    let eq = stdout(&cores(&["guess", "--degx", "1", "--degy", "3", "--terms-file", path.to_str().unwrap()]));
    assert_eq!(eq, "x*Y^3 - 2*Y^2 + 3*Y - 1\n");
}

#[test]
fn guess_reports_none_and_equation() {
    let none = stdout(&cores(&["guess", "--degx", "0", "--degy", "1", "--margin", "2", "--terms", "1,3,9,27,81,243"]));
    assert_eq!(none, "none\n");
    let v = json(&cores(&["guess", "--degx", "2", "--degy", "1", "--terms", "1,2,3,5,8,13,21,34,55,89,144,233,377,610,987", "--format", "json"]));
    assert_eq!(v["equation"]["expression"], "x^2*Y + x*Y - Y + x + 1");
    assert_eq!(v["equation"]["grid"], serde_json::json!([["1", "1", "0"], ["-1", "1", "1"]]));
}

#[test]
fn diagram_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a9.svg");
    let labels = "3,4,5,6,7,8,9,14,15,16,17,18,25,26";
    stdout(&cores(&["diagram", "--n", "9", "--c", "1", "--ideal", labels, "--out", path.to_str().unwrap()]));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 45);
    let bad = cores(&["diagram", "--n", "3", "--ideal", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cores(args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["straub"]), Some(2));
    assert_eq!(code(&["straub", "--max-n", "3", "--format", "xml"]), Some(2));
    assert_eq!(code(&["anderson", "--s", "4", "--t", "6"]), Some(2));
    assert_eq!(code(&["guess", "--degx", "5", "--degy", "5", "--terms", "1,2,4"]), Some(2));
    assert_eq!(code(&["straub", "--max-n", "40", "--method", "oracle"]), Some(3));

    let slow = cores(&["straub", "--max-n", "24", "--time-budget", "0.2", "--format", "json"]);
    assert_eq!(slow.status.code(), Some(3));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&slow.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "resource");
    assert_eq!(err["error"]["exit_code"], 3);
}

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bicay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicay")).args(args).env_remove("BICAY_THREADS").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_sigma(dir: &Path, p: &str, t: &str, s: &str, k: Option<&str>) -> String {
    let name = format!("sigma_{p}_{t}_{s}_{}.el", k.unwrap_or("default"));
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut args = vec!["sigma", "--p", p, "--t", t, "--s", s, "--output", &path];
    if let Some(k) = k {
        args.extend(["--k", k]);
    }
    assert_eq!(bicay(&args).status.code(), Some(0));
    path
}

#[test]
fn sigma_header_and_size() {
    let out = bicay(&["sigma", "--p", "3", "--t", "2", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    assert_eq!(header["k"], 2);
    assert_eq!(header["vertices"], 162);
    assert_eq!(lines.next(), Some("162 243"));
    assert_eq!(lines.count(), 243);

    let json: Value = serde_json::from_slice(&bicay(&["sigma", "--p", "3", "--t", "1", "--s", "1", "--format", "json"]).stdout).unwrap();
    assert_eq!(json["edges"].as_array().unwrap().len(), 81);
    assert_eq!(json["header"]["k"], 0);
}

#[test]
fn invalid_parameters_exit_2() {
    // 5^1: k^2 - k + 1 has no root.
    let out = bicay(&["sigma", "--p", "5", "--t", "2", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no admissible k"));
    assert_eq!(bicay(&["sigma", "--p", "3", "--t", "2", "--s", "1", "--k", "1"]).status.code(), Some(2));
    assert_eq!(bicay(&["sigma", "--p", "4", "--t", "1", "--s", "1"]).status.code(), Some(2));
    assert_eq!(bicay(&["sigma", "--p", "3", "--t", "1", "--s", "2"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_bicay"))
        .args(["group", "--p", "3", "--t", "1", "--s", "1", "word", "a"])
        .env("BICAY_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_sigma_311() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_sigma(dir.path(), "3", "1", "1", None);
    let out = bicay(&["analyze", &path]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        report,
        serde_json::json!({
            "vertex_transitive": true, "edge_transitive": true, "s_regular": 2,
            "aut_order": 324, "stabilizer_order": 6
        })
    );
    assert_eq!(stdout(&bicay(&["analyze", &path])), stdout(&out));
}

#[test]
fn analyze_non_cubic_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cycle = dir.path().join("c6.el");
    std::fs::write(&cycle, "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
    let out = bicay(&["analyze", cycle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not cubic"));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["s_regular"], Value::Null);
    assert_eq!(report["vertex_transitive"], true);
    assert_eq!(report["aut_order"], 12);

    let path = dir.path().join("p4.el");
    std::fs::write(&path, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let report: Value = serde_json::from_slice(&bicay(&["analyze", path.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(report["vertex_transitive"], false);

    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "3 2\n0 1\n1 x\n").unwrap();
    let out = bicay(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(bicay(&["analyze", dir.path().join("missing").to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn iso_between_admissible_k() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_sigma(dir.path(), "7", "2", "1", Some("3"));
    let k5 = write_sigma(dir.path(), "7", "2", "1", Some("5"));
    let out = bicay(&["iso", &k3, &k5]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("isomorphic\n"));
    assert_eq!(text.lines().count(), 1 + 4802);

    let small = write_sigma(dir.path(), "3", "1", "1", None);
    assert_eq!(stdout(&bicay(&["iso", &small, &k3])), "non-isomorphic\n");
}

#[test]
fn group_commands() {
    assert_eq!(stdout(&bicay(&["group", "--p", "3", "--t", "2", "--s", "1", "order", "b*a^2"])), "9\n");
    assert_eq!(stdout(&bicay(&["group", "--p", "3", "--t", "2", "--s", "1", "word", "a*b"])), "a^1 b^1 c^0\n");
    let out = bicay(&["group", "--p", "5", "--t", "2", "--s", "1", "selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| l.ends_with(" ok")));
    assert_eq!(bicay(&["group", "--p", "3", "--t", "1", "--s", "1", "word", "a*d"]).status.code(), Some(3));
}

#[test]
fn verify_fast_is_deterministic() {
    let first = bicay(&["verify", "--suite", "fast"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text.contains("13/13 cases passed"));
    let rows: Vec<Value> = text.lines().filter(|l| l.starts_with('{')).map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|r| r["pass"] == true));
    let names: Vec<&str> = rows.iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(stdout(&bicay(&["verify", "--suite", "fast"])), text);
}

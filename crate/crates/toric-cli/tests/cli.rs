//! End-to-end tests of the `toric` binary: descriptor parsing, the worked
//! examples, report formats, exit codes, and thread-count determinism.

use std::process::{Command, Output};

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = toric(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn step_reproduces_the_worked_example() {
    let out = stdout_of(&["step", "--graph", "path:5", "--op", "tpro", "--labeling", "45123"]);
    assert_eq!(out, "34521\n");

    let out = stdout_of(&["step", "--graph", "path:5", "--op", "pro", "--labeling", "45123"]);
    assert_eq!(out, "34125\n");

    // Four applications return to the start on a 5-vertex path.
    let out = stdout_of(&[
        "step", "--graph", "path:5", "--op", "tpro", "--labeling", "45123", "--steps", "4",
    ]);
    assert_eq!(out, "45123\n");
}

#[test]
fn orbit_lists_all_members() {
    let out = stdout_of(&["orbit", "--graph", "path:3", "--op", "tpro", "--labeling", "123"]);
    assert_eq!(out, "123\n321\nsize: 2\n");
}

#[test]
fn census_json_matches_schema() {
    let out = stdout_of(&[
        "census", "--graph", "path:4", "--op", "tpro", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["graph"], "path:4");
    assert_eq!(v["n"], 4);
    assert_eq!(v["operator"], "tpro");
    assert_eq!(v["orbit_sizes"]["3"], 8);
    assert_eq!(v["order"], "3");
    assert_eq!(v["labelings"], 24);
    assert_eq!(v["verdicts"], serde_json::json!([]));
    assert_eq!(v["seed"], 1729);
}

#[test]
fn census_csv_rows() {
    let out = stdout_of(&["census", "--graph", "path:4", "--op", "tpro", "--format", "csv"]);
    assert_eq!(out, "size,count\n3,8\n");
}

#[test]
fn order_of_promotion_on_path7() {
    let out = stdout_of(&["order", "--graph", "path:7", "--op", "pro"]);
    assert_eq!(out, "3224590642072800\n");
}

#[test]
fn class_listings() {
    let out = stdout_of(&["double-flip-classes", "--graph", "path:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 3);
    assert_eq!(v["orientations"], 4);

    let out = stdout_of(&["flip-classes", "--graph", "path:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 1);
}

#[test]
fn fs_components_of_small_path() {
    let out = stdout_of(&["fs-components", "--graph", "path:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 3);
    assert_eq!(v["components"][0], serde_json::json!(["123", "321"]));
}

#[test]
fn verify_zeta_exits_zero() {
    let out = toric(&["verify", "--suite", "zeta", "--max-n", "5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["suite"], "zeta-orders");
    assert_eq!(v["pass"], true);
}

#[test]
fn usage_errors_exit_two() {
    let out = toric(&["step", "--graph", "pth:5", "--op", "tpro", "--labeling", "45123"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown graph family"));

    let out = toric(&["step", "--graph", "path:5", "--op", "tpro", "--labeling", "4512"]);
    assert_eq!(out.status.code(), Some(2));

    let out = toric(&["census", "--graph", "path:5"]);
    assert_eq!(out.status.code(), Some(2), "missing --op is a usage error");

    let out = toric(&["order", "--graph", "path:9", "--op", "pro", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(2), "cap violations are usage errors");
}

#[test]
fn env_var_overrides_caps() {
    let out = Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(["census", "--graph", "path:6", "--op", "tpro"])
        .env("TORIC_MAX_N", "5")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn thread_count_does_not_change_reports() {
    for (cmd, graph, op) in [
        ("census", "path:6", "pro"),
        ("census", "path:7", "pro"),
        ("census", "star:5", "tpro"),
        ("order", "path:7", "pro"),
    ] {
        let single = stdout_of(&[cmd, "--graph", graph, "--op", op, "--format", "json", "--threads", "1"]);
        let many = stdout_of(&[cmd, "--graph", graph, "--op", op, "--format", "json", "--threads", "8"]);
        assert_eq!(single, many, "{cmd} {graph} {op}");
    }
}

#[test]
fn verify_suite_reports_are_thread_count_independent() {
    let single = stdout_of(&["verify", "--suite", "forests", "--format", "json", "--threads", "1"]);
    let many = stdout_of(&["verify", "--suite", "forests", "--format", "json", "--threads", "8"]);
    assert_eq!(single, many);
    let v: serde_json::Value = serde_json::from_str(&single).unwrap();
    assert_eq!(v["suite"], "forest-orbits");
    assert_eq!(v["pass"], true);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("toric-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.json");
    let out = toric(&[
        "census", "--graph", "path:4", "--op", "tpro", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&contents).unwrap();
    assert_eq!(v["order"], "3");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn graph_file_descriptor() {
    let dir = std::env::temp_dir().join(format!("toric-cli-file-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("graph.txt");
    std::fs::write(&path, "# a 3-path\n3\n0 1\n1 2\n").unwrap();
    let descriptor = format!("file:{}", path.display());
    let out = stdout_of(&["step", "--graph", &descriptor, "--op", "tpro", "--labeling", "123"]);
    assert_eq!(out, "321\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

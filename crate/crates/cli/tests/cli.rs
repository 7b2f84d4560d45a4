use std::process::{Command, Output};

fn ekr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(args)
        .env_remove("EKR_CACHE_DIR")
        .output()
        .expect("run ekr")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn char_table_five() {
    let out = ekr(&["char-table", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1/2+1/2√5"), "{text}");
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn verify_all_json_round_trips() {
    let out = ekr(&["verify", "all", "--n", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let line = text.trim_end();
    let run: ekr_core::RunReport = serde_json::from_str(line).unwrap();
    assert!(run.passed());
    assert!(line.starts_with(r#"{"status":"pass""#));
    assert_eq!(serde_json::to_string(&run).unwrap(), line);
}

#[test]
fn out_of_range_is_a_usage_error() {
    let out = ekr(&["verify", "x-bound", "--n", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x-bound needs"));
}

#[test]
fn no_command_prints_usage() {
    let out = ekr(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn gated_enumeration_is_a_resource_failure() {
    let out = ekr(&["verify", "enumerate", "--n", "6"]);
    assert_eq!(out.status.code(), Some(3));
    let run: ekr_core::RunReport = serde_json::from_str(stdout(&out).trim_end()).unwrap();
    assert!(!run.passed());
}

#[test]
fn environment_overrides_cache_dir() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(["clique", "even", "6", "--cache-dir"])
        .arg(flag_dir.path())
        .env("EKR_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(env_dir.path().join("even-clique-n6.json").exists());
    assert!(!flag_dir.path().join("even-clique-n6.json").exists());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with('(')).count(), 6);
}

#[test]
fn text_report_lines() {
    let out = ekr(&["verify", "rank-m", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("PASS  rank-m"), "{text}");
    assert!(text.contains("main-proof:rank-M"));
}

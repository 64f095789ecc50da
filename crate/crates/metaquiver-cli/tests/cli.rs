use std::process::{Command, Output};

const M21: &[&str] = &["--group", "21,4,3,0", "--reps", "0,4,7,8,9,12,13,14,17"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metaquiver")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with(head: &[&str], tail: &[&str]) -> Vec<String> {
    head.iter().chain(M21).chain(tail).map(|s| s.to_string()).collect()
}

fn run_owned(args: Vec<String>) -> Output {
    run(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", "21", "4", "3", "0"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["check", "7", "2", "3", "0"]);
    assert_eq!(bad.status.code(), Some(3));
    let text = stdout(&bad);
    assert!(text.contains("M6  FAIL") && text.contains("M7  FAIL") && text.contains("M5  pass"));
    assert_eq!(run(&["check", "0", "1", "1", "1"]).status.code(), Some(2));
    let json = run(&["check", "21", "4", "3", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["case"], "SL");
}

#[test]
fn quiver_exports() {
    let dot = run_owned(with(&["quiver"], &["--which", "g", "--format", "dot"]));
    assert_eq!(dot.status.code(), Some(0));
    let text = stdout(&dot);
    assert_eq!(text.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 15);
    let json = run_owned(with(&["quiver"], &["--which", "a", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 21);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 63);
    assert_eq!(run_owned(with(&["quiver"], &["--which", "b"])).status.code(), Some(2));
    let tikz = run_owned(with(&["quiver"], &["--which", "tilde", "--format", "tikz"]));
    assert!(stdout(&tikz).starts_with("\\begin{tikzpicture}"));
}

#[test]
fn superpotential_reports_support() {
    let o = run_owned(with(&["superpotential"], &["--verify", "support", "--verify", "cyclicity"]));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("degree 3, 78 terms"));
    assert!(text.contains("support: subset=true equal=true"));
    assert!(text.contains("cyclicity: exact=true"));
}

#[test]
fn grade_reports_dimension() {
    let o = run_owned(with(&["grade"], &["--cut", "canonical:1,1", "--format", "json"]));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["homogeneity_degree"], 1);
    assert_eq!(v["degree0"]["dimension"], 59);
    assert_eq!(v["degree0"]["finite"], true);
}

#[test]
fn grade_with_swap_and_cut_file() {
    let path = std::env::temp_dir().join(format!("metaquiver-cut-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"kind":"canonical","l":1,"k":1}"#).unwrap();
    let o = run(&["grade", "--group", "4,3,2,2", "--cut", path.to_str().unwrap(), "--swap", "0,1"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("type: D~4"));
}

#[test]
fn bad_cuts_fail_verification() {
    let o = run(&["grade", "--group", "12,5,2,6", "--embedded", "--cut", "canonical:2,2"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a cut"));
    let o = run(&["grade", "--group", "12,5,2,6", "--embedded", "--cut", "canonical:1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["grade", "--group", "12,5,2,6", "--cut", "canonical:2,1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reproduce_examples() {
    let o = run(&["reproduce", "s3-m21"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("DIFF"));
    let o = run(&["--jobs", "1", "reproduce", "bin-dih"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("DIFF"));
    assert_eq!(run(&["reproduce", "nope"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = with(&["superpotential"], &["--format", "json"]);
    let a = run_owned(args.clone());
    let b = run_owned(with(&["--jobs", "1", "superpotential"], &["--format", "json"]));
    assert_eq!(a.stdout, run_owned(args).stdout);
    assert_eq!(a.stdout, b.stdout);
}

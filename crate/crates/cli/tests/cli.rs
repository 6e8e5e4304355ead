use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtkirby")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cycles_prints_one_row_per_ridge_cycle() {
    let o = run(&["cycles", "146928"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 24);
    assert!(text.lines().next().unwrap().contains("A∩C -a-> A'∩D"));
}

#[test]
fn filled_invariants() {
    let o = run(&["invariants", "146928", "--stage", "filled"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("H1: Z2 + Z2"), "{text}");
    assert!(text.contains("pi1 order: 4"), "{text}");
}

#[test]
fn unparsable_code_is_a_usage_error() {
    let o = run(&["validate", "ZZZ"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn invalid_code_is_a_domain_error() {
    let o = run(&["validate", "000000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(run(&["cycles", "146928", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "146928", "--script", "nope"]).status.code(), Some(2));
}

#[test]
fn json_output_parses() {
    let o = run(&["--format", "json", "pairings", "146928"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pairings"].as_array().unwrap().len(), 12);
}

#[test]
fn kirby_json_and_svg() {
    let o = run(&["--format", "json", "kirby", "146928", "--cover", "--fill"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["one_handles"].as_array().unwrap().len(), 24);
    assert_eq!(v["two_handles"].as_array().unwrap().len(), 54);

    let a = run(&["--format", "svg", "kirby", "146928", "--cover", "--panel", "yz"]);
    let b = run(&["--format", "svg", "kirby", "146928", "--cover", "--panel", "yz"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("<?xml"));
}

#[test]
fn trace_ends_at_one_generator() {
    let o = run(&["trace", "146928", "--script", "m35-cover-fill"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("handles by index: [1, 1, 1, 4, 5]"), "{text}");
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("rtkirby-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cycles.txt");
    let o = run(&["cycles", "146928", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 24);
    std::fs::remove_dir_all(&dir).ok();
}

use std::path::Path;
use std::process::{Command, Output};

use blanks::format::{decode_report, read_arrangement};

fn blanks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blanks")).args(args).env_remove("BLANKS_SEED").output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn grid_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let (arr, rep) = (dir.path().join("g.json"), dir.path().join("r.json"));
    assert_eq!(code(&blanks(&["generate", "--construction", "grid", "--m", "16", "--out", p(&arr)])), 0);
    let o = blanks(&["analyze", "--in", p(&arr), "--bound", "thm3", "--out", p(&rep)]);
    assert_eq!(code(&o), 0);
    let r = decode_report(&std::fs::read(&rep).unwrap()).unwrap();
    assert_eq!((r.b, r.bound.value, r.tight), (9, 9, true));
}

#[test]
fn verify_names_the_expandable_topping() {
    let dir = tempfile::tempdir().unwrap();
    let arr = dir.path().join("n.json");
    blanks(&["generate", "non-maximal", "--out", p(&arr)]);
    let o = blanks(&["verify", "--in", p(&arr)]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("topping 1 (Z2)") && text.contains("up"), "{text}");
}

#[test]
fn expand_then_analyze_matches_pre_expanded() {
    let dir = tempfile::tempdir().unwrap();
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/grid16.arr.json");
    let (e, r1, r2) = (dir.path().join("e.json"), dir.path().join("r1.json"), dir.path().join("r2.json"));
    assert_eq!(code(&blanks(&["expand", "--in", golden, "--out", p(&e)])), 0);
    blanks(&["analyze", "--in", p(&e), "--out", p(&r1)]);
    blanks(&["analyze", "--in", golden, "--out", p(&r2)]);
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
}

#[test]
fn tie_break_flags_differ() {
    let dir = tempfile::tempdir().unwrap();
    let arr = dir.path().join("t.json");
    blanks(&["generate", "greedy-tie", "--out", p(&arr)]);
    let mut counts = Vec::new();
    for tie in ["lexicographic", "down"] {
        let (e, r) = (dir.path().join(format!("{tie}.json")), dir.path().join(format!("{tie}.r.json")));
        blanks(&["expand", "--in", p(&arr), "--order", "0,3,1,2", "--tie-break", tie, "--out", p(&e)]);
        assert_eq!(code(&blanks(&["analyze", "--in", p(&e), "--out", p(&r)])), 0);
        counts.push(decode_report(&std::fs::read(&r).unwrap()).unwrap().b);
    }
    assert_eq!(counts, [0, 1]);
}

#[test]
fn contract_produces_tiling() {
    let dir = tempfile::tempdir().unwrap();
    let (arr, out) = (dir.path().join("g.json"), dir.path().join("c.json"));
    blanks(&["generate", "grid", "--m", "9", "--out", p(&arr)]);
    let o = blanks(&["contract", "--in", p(&arr), "--saturate", "--out", p(&out)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stderr).unwrap().contains("grid 3 x 3, t = 0"));
    assert_eq!(read_arrangement(&out).unwrap().m(), 9);
}

#[test]
fn render_and_other_reports() {
    let dir = tempfile::tempdir().unwrap();
    let arr = dir.path().join("s.json");
    blanks(&["generate", "staircase", "--m", "16", "--T", "4", "--out", p(&arr)]);
    let svg = String::from_utf8(blanks(&["render", "--in", p(&arr)]).stdout).unwrap();
    assert_eq!(svg.matches(r#"class="reflex""#).count(), 4);
    for cmd in ["partition-holes", "absorb"] {
        let out = dir.path().join(format!("{cmd}.json"));
        assert_eq!(code(&blanks(&[cmd, "--in", p(&arr), "--out", p(&out)])), 0);
        let r = decode_report(&std::fs::read(&out).unwrap()).unwrap();
        let svg = String::from_utf8(blanks(&["render", "--in", p(&out)]).stdout).unwrap();
        assert_eq!(svg.matches(r#"class="blank""#).count(), r.b);
    }
}

#[test]
fn fuzz_passes_and_seed_env_overrides() {
    let o = blanks(&["fuzz", "--seed", "7", "--m", "8", "--iters", "500", "--cake", "rectangle", "--bound", "thm3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = Command::new(env!("CARGO_BIN_EXE_blanks"))
        .args(["fuzz", "--seed", "1", "--m", "5", "--iters", "3", "--sequential"])
        .env("BLANKS_SEED", "42")
        .output()
        .unwrap();
    assert!(String::from_utf8(o.stdout).unwrap().contains("seed 42"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(code(&blanks(&["generate", "grid", "--bogus"])), 2);
    assert_eq!(code(&blanks(&["analyze", "--in", "/nonexistent/x.json"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, b"{\"kind\": \"arrangement\", \"cake\": 3}").unwrap();
    let o = blanks(&["verify", "--in", p(&bad)]);
    assert_eq!(code(&o), 2);
    assert_eq!(String::from_utf8(o.stderr).unwrap().lines().count(), 1);
    assert_eq!(code(&blanks(&["fuzz", "--m", "5", "--cake", "plane", "--bound", "thm3"])), 2);
}

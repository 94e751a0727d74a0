use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const SQUARE: &str = r#"{"id":"sq","points":[[0,0],[1,0],[1,1],[0,1]]}"#;

fn pierce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pierce"))
        .args(args)
        .env_remove("PIERCE_SEED")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_square_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.json", SQUARE);
    let o = pierce(&["verify", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let line: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(line["verdict"], true);
    assert_eq!(line["helly"], true);
    assert!((line["center_ratio"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn hand_built_tree_violation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.json", r#"{"id":"bad","points":[[0,0],[1,0],[1,1],[0,1],[0.5,0.1]]}"#);
    let t = write(dir.path(), "t.json", "[[0,4],[1,4],[2,4],[3,4]]");
    let o = pierce(&["verify", "--file", f.to_str().unwrap(), "--tree", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let mut lines = out.lines();
    let summary: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(summary["verdict"], false);
    // the offending instance follows, ready to be fed back in
    let dumped = lines.next().unwrap();
    let inst = pierce_core::io::parse_instance(dumped).unwrap();
    assert_eq!(inst.id(), Some("bad"));
    assert_eq!(inst.len(), 5);
}

#[test]
fn maximum_tree_given_explicitly_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.json", SQUARE);
    let t = write(dir.path(), "t.json", "[[0,2],[1,3],[0,1]]");
    let o = pierce(&["verify", "--file", f.to_str().unwrap(), "--tree", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.json", r#"{"points":[[0,0],[0,0]]}"#);
    let bad = write(dir.path(), "bad.json", r#"{"points":[[0,0],["a",1]]}"#);
    let sq = write(dir.path(), "sq.json", SQUARE);
    let cycle = write(dir.path(), "c.json", "[[0,1],[1,2],[2,0]]");
    let range = write(dir.path(), "r.json", "[[0,1],[1,2],[2,9]]");
    let missing = dir.path().join("missing.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--file", dup.to_str().unwrap()],
        vec!["verify", "--file", bad.to_str().unwrap()],
        vec!["verify", "--file", missing.to_str().unwrap()],
        vec!["verify", "--file", sq.to_str().unwrap(), "--tree", cycle.to_str().unwrap()],
        vec!["verify", "--file", sq.to_str().unwrap(), "--tree", range.to_str().unwrap()],
        vec!["verify", "--gen", "hexagonal"],
        vec!["verify", "--gen", "gaussian", "--n-min", "1"],
        vec!["verify"],
        vec!["ratio", "--file", bad.to_str().unwrap()],
        vec!["oracle", "--file", missing.to_str().unwrap()],
        vec!["bogus"],
    ];
    for args in cases {
        let o = pierce(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn generated_trials_are_ordered_and_reproducible() {
    let args = ["verify", "--gen", "circle-boundary", "--trials", "12", "--n-max", "40", "--seed", "3"];
    let a = pierce(&args);
    let b = pierce(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    for (k, line) in stdout(&a).lines().enumerate() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["trial"], k);
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_pierce"));
        c.args(["verify", "--gen", "gaussian", "--trials", "2"]).args(extra).env_remove("PIERCE_SEED");
        if let Some(s) = env {
            c.env("PIERCE_SEED", s);
        }
        c.output().unwrap().stdout
    };
    assert_eq!(run(Some("77"), &[]), run(None, &["--seed", "77"]));
    assert_ne!(run(Some("77"), &[]), run(None, &[]));
}

#[test]
fn report_file_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = pierce(&["verify", "--gen", "uniform-square", "--trials", "5", "--seed", "9", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let reports: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 5);
}

#[test]
fn ratio_reports_square() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.json", SQUARE);
    let o = pierce(&["ratio", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["ratio_at_center"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
    assert!(v.get("optimum").is_none());

    let o = pierce(&["ratio", "--file", f.to_str().unwrap(), "--optimal"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let best = v["optimum"]["ratio"].as_f64().unwrap();
    assert!(best < 2f64.sqrt() && best > 1.0);
}

#[test]
fn matching_command() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.json", SQUARE);
    let o = pierce(&["matching", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matching"]["pairs"].as_array().unwrap().len(), 2);
    assert!(v["ratio"]["optimum"]["ratio"].as_f64().unwrap() <= 2f64.sqrt() + 1e-6);

    let odd = write(dir.path(), "odd.json", r#"{"points":[[0,0],[1,0],[2,5]]}"#);
    assert_eq!(pierce(&["matching", "--file", odd.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn oracle_agrees_on_square_and_skips_large() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.json", SQUARE);
    let o = pierce(&["oracle", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["spanning_ok"], true);
    assert_eq!(v["sec_ok"], true);

    let pts: Vec<String> = (0..20).map(|k| format!("[{},{}]", k, (k * k) % 7)).collect();
    let big = write(dir.path(), "big.json", &format!(r#"{{"points":[{}]}}"#, pts.join(",")));
    let o = pierce(&["oracle", "--file", big.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["spanning_ok"].is_null());
    assert_eq!(v["sec_ok"], true);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.json", SQUARE);
    let out = dir.path().join("sq.svg");
    let o = pierce(&["render", "--file", f.to_str().unwrap(), "--out", out.to_str().unwrap(), "--disks", "--ellipses", "1.3"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<ellipse").count(), 3);

    let nowhere = dir.path().join("no").join("x.svg");
    let o = pierce(&["render", "--file", f.to_str().unwrap(), "--out", nowhere.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn small_lower_bound_search() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("best.json");
    let args = ["search-lower-bound", "--seed", "2", "--restarts", "2", "--budget", "200", "--out", out.to_str().unwrap()];
    let a = pierce(&args);
    assert_eq!(a.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let ratio = v["ratio"].as_f64().unwrap();
    assert!((1.0..=2f64.sqrt() + 1e-9).contains(&ratio));
    assert_eq!(pierce_core::io::load_instance(&out).unwrap().len(), 4);
    assert_eq!(pierce(&args).stdout, a.stdout);
}

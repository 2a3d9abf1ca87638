use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqpriv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_spec(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const DESIGNED: &str = "var X 2\nvar Y 2\n0 0 = 1/4\n0 1 = 1/4\n1 0 = 1/8\n1 1 = 3/8\n";

#[test]
fn frl_build_designed_instance_has_three_atoms() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "d.txt", DESIGNED);
    let o = run(&["frl", "build", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("3 atoms"), "{out}");
    assert!(out.contains("[0, 1/4)") && out.contains("[1/4, 1/2)") && out.contains("[1/2, 1)"));
}

#[test]
fn frl_build_deterministic_target_has_one_atom() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "f.txt", "var X 2\nvar Y 2\n0 1 = 1/3\n1 0 = 2/3\n");
    let o = run(&["frl", "build", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 atoms"), "{}", stdout(&o));
}

#[test]
fn frl_build_json_report() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "d.txt", DESIGNED);
    let o = run(&["frl", "build", "--spec", &spec, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 3);
    assert_eq!(v["p_u"], serde_json::json!(["1/4", "1/4", "1/2"]));
}

#[test]
fn distribution_not_summing_to_one_exits_1() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "bad.txt", "var X 2\nvar Y 2\n0 0 = 1/2\n1 1 = 49/100\n");
    let o = run(&["frl", "build", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn masked_family_run_is_private_and_meets_lower_bound() {
    let o = run(&["pipeline", "run", "--example1", "--demands", "1,2", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("exact zero = true"), "{out}");
    assert!(out.contains("lower = 2.000000"), "{out}");
    assert!(out.contains("correct"));
}

#[test]
fn run_json_round_trip_and_packed_transcript_decodes() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("run.json");
    let packed = dir.path().join("t.bin");
    let o = run(&[
        "pipeline", "run", "--example1", "--n", "3", "--demands", "3,1", "--seed", "9",
        "--out", json.to_str().unwrap(), "--transcript", packed.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["decoded_ok"], true);
    assert_eq!(v["inputs"]["demands"], serde_json::json!([3, 1]));
    let key = v["key"].as_u64().unwrap().to_string();
    let x = v["realization"]["x"].as_u64().unwrap();

    let a = run(&[
        "audit", "--example1", "--n", "3", "--demands", "3,1",
        "--transcript", packed.to_str().unwrap(), "--key", &key,
    ]);
    assert_eq!(a.status.code(), Some(0));
    let out = stdout(&a);
    assert!(out.contains(&format!("decoded transcript: x={x}")), "{out}");
    assert!(out.contains("lossless over"));
}

#[test]
fn repeated_demand_exits_1() {
    let o = run(&["pipeline", "run", "--example1", "--demands", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumeration_limit_exits_3() {
    let o = run(&["pipeline", "run", "--example1", "--n", "3", "--f", "2", "--demands", "1,2,3", "--limit", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn same_seed_gives_identical_output() {
    let args = ["pipeline", "run", "--example1", "--n", "3", "--demands", "2,3", "--seed", "42", "--mode", "entropy"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pipeline_sweep_covers_all_ordered_pairs() {
    let o = run(&["pipeline", "sweep", "--example1", "--n", "3", "--k", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "N,K,F,demands,lower,upper_card,upper_est,measured,ratio");
    assert_eq!(lines.len(), 7);
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .unwrap()
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn bounds_sweep_ratio_at_f32() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("b.csv");
    let o = run(&["bounds", "sweep", "--k", "2", "--f-min", "1", "--f-max", "32", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 33);
    let last = rows.last().unwrap();
    assert_eq!(last[2], "32");
    assert_eq!(last[4].parse::<f64>().unwrap(), 64.0);
    assert_eq!(last[5], "100");
    let ratio: f64 = last[8].parse().unwrap();
    assert!((ratio - 1.5625).abs() < 1e-12);
}

#[test]
fn bounds_sweep_empty_range_writes_header_only() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("e.csv");
    let o = run(&["bounds", "sweep", "--f-min", "5", "--f-max", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "N");
}

#[test]
fn bounds_sweep_measures_small_sizes() {
    let o = run(&["bounds", "sweep", "--f-max", "2", "--measure", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in v.as_array().unwrap() {
        let m = row["measured"].as_f64().unwrap();
        assert!(row["lower"].as_f64().unwrap() <= m + 1e-9);
        assert!(m <= row["upper_card"].as_f64().unwrap() + 1e-9);
    }
}

#[test]
fn cache_demo_users_decode_privately() {
    let o = run(&["cache", "demo", "--n", "2", "--k", "2", "--m", "1", "--f", "2", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("(correct)").count(), 2, "{out}");
    assert!(out.contains("exact zero = true"));
}

#[test]
fn cache_demo_full_cache_sends_only_the_pad() {
    let o = run(&["cache", "demo", "--n", "3", "--k", "2", "--m", "3", "--f", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("transcript: pad:"), "{out}");
    assert!(!out.contains("B1:"));
}

#[test]
fn cache_demo_rejects_fractional_replication() {
    let o = run(&["cache", "demo", "--n", "3", "--k", "2", "--m", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn missing_source_exits_1() {
    let o = run(&["pipeline", "run", "--demands", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

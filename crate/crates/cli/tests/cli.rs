use std::path::PathBuf;
use std::process::{Command, Output};

fn gcg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcg"))
        .args(args)
        .env_remove("GCG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gcg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn corank_expectations_set_the_exit_code() {
    let ok = gcg(&[
        "--output",
        "json",
        "corank",
        "--genus",
        "11",
        "--kind",
        "standard",
        "--expect-corank",
        "1",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["corank"], 1);
    assert_eq!(v["schema"], "gcg/1");
    assert_eq!(v["backends"].as_array().unwrap().len(), 3);

    let bad = gcg(&[
        "corank",
        "--genus",
        "12",
        "--kind",
        "standard",
        "--expect-corank",
        "1",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let o = gcg(&["corank", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(gcg(&["family", "--genus", "5"]).status.code(), Some(2));
    assert_eq!(
        gcg(&["validate", "/nonexistent/graph.json"]).status.code(),
        Some(2)
    );
    assert_eq!(gcg(&["suite", "--genus", "9..7"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic_and_sorted() {
    let args = ["--output", "json", "corank", "--genus", "9"];
    let a = stdout(&gcg(&args));
    let b = stdout(&gcg(&args));
    assert_eq!(a, b);
    let keys: Vec<String> = serde_json::from_str::<serde_json::Map<String, serde_json::Value>>(&a)
        .unwrap()
        .keys()
        .cloned()
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(
        stdout(&gcg(&["family", "--genus", "10"])),
        stdout(&gcg(&["family", "--genus", "10"]))
    );
}

#[test]
fn seed_controls_the_primes() {
    let with = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_gcg"))
            .args(["--output", "json", "corank", "--genus", "8"])
            .env("GCG_SEED", seed)
            .output()
            .unwrap();
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["backends"][1]["prime"].as_u64().unwrap()
    };
    assert_eq!(with("5"), with("5"));
    assert_ne!(with("5"), with("6"));
    let flag = gcg(&["--seed", "5", "--output", "json", "corank", "--genus", "8"]);
    let v: serde_json::Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(v["backends"][1]["prime"].as_u64().unwrap(), with("5"));
}

#[test]
fn family_json_validates() {
    let o = gcg(&["family", "--kind", "prism", "--genus", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("prism9.json", &stdout(&o));
    let v = gcg(&["validate", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn validate_reports_failures() {
    // K4 with a twisted rotation at two vertices; edge indices are 0-based
    let text = r#"{"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"genus":3,
        "rotation":{"1":[1,0,2],"2":[4,0,3],"3":[1,3,5],"4":[2,5,4]},"vertices":4}"#;
    let path = scratch("k4-twisted.json", text);
    let o = gcg(&["--output", "json", "validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], false);

    let good = r#"{"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"genus":3,
        "rotation":{"1":[0,1,2],"2":[0,4,3],"3":[1,3,5],"4":[2,5,4]},"vertices":4}"#;
    let path = scratch("k4.json", good);
    assert_eq!(
        gcg(&["validate", path.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn svg_of_g7_with_decomposition() {
    let o = gcg(&[
        "family",
        "--genus",
        "7",
        "--format",
        "svg",
        "--decomposition",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert_eq!(svg.matches(r#"<circle class="a""#).count(), 6);
    assert_eq!(svg.matches(r#"<circle class="b""#).count(), 6);
    assert_eq!(svg.matches(r#"<line class="crossing""#).count(), 8);
    assert_eq!(svg.matches("<line").count(), 18);
    assert_eq!(svg.matches(r#"<path class="cut""#).count(), 1);
}

#[test]
fn svg_of_the_pentagon_prism() {
    let o = gcg(&[
        "family", "--kind", "prism", "--genus", "6", "--format", "svg",
    ]);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<circle").count(), 10);
    assert_eq!(svg.matches("<line").count(), 15);
    assert!(!svg.contains("NaN"));
}

#[test]
fn corank_of_a_graph_file() {
    let good = r#"{"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"genus":3,
        "rotation":{"1":[0,1,2],"2":[0,4,3],"3":[1,3,5],"4":[2,5,4]},"vertices":4}"#;
    let path = scratch("k4-corank.json", good);
    let o = gcg(&["corank", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("genus 3"));
}

#[test]
fn numerology_moduli_table() {
    let o = gcg(&["numerology", "--table2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.ends_with("ok")).count(), 6);
    let over = gcg(&["numerology", "--genus", "12", "--gamma", "3"]);
    assert_eq!(over.status.code(), Some(1));
}

#[test]
fn csv_export() {
    let dir = std::env::temp_dir().join(format!("gcg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g7.csv");
    let o = gcg(&["corank", "--genus", "7", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 31);
}

#[test]
fn shuffled_corank_matches() {
    let base = gcg(&["--output", "json", "corank", "--genus", "10"]);
    let shuf = gcg(&[
        "--output",
        "json",
        "corank",
        "--genus",
        "10",
        "--shuffle",
        "99",
    ]);
    let a: serde_json::Value = serde_json::from_slice(&base.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&shuf.stdout).unwrap();
    assert_eq!(a["corank"], b["corank"]);
}

#[test]
fn degeneration_reports() {
    let o = gcg(&["degeneration", "--genus", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("union isomorphic"));
    let t = gcg(&[
        "--output",
        "json",
        "degeneration",
        "--genus",
        "7",
        "--tilde",
    ]);
    assert_eq!(t.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&t.stdout).unwrap();
    assert_eq!(v["isomorphic"], true);
    let bad = gcg(&["degeneration", "--genus", "8"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("malformed"));
}

#[test]
fn hilbert_tables() {
    let o = gcg(&[
        "--output",
        "json",
        "hilbert",
        "--genus",
        "7",
        "--max-degree",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["surface"]["hilbert"], serde_json::json!([1, 8, 26, 56]));
    assert_eq!(
        v["double_curve"]["hilbert"],
        serde_json::json!([1, 8, 16, 24])
    );
}

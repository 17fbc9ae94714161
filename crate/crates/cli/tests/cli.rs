//! End-to-end tests of the binary: exit code contract, format detection,
//! JSON line output, and determinism across runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linegraph"))
}

fn write(dir: &std::path::Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("linegraph-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn recognize_exit_codes_and_witness() {
    let dir = tempdir("recognize");
    let claw = write(&dir, "claw.edges", "0 1\n0 2\n0 3\n");
    let k3 = write(&dir, "k3.g6", "Bw");

    let out = run(&["recognize", claw.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("forbidden graph 1"));

    let out = run(&["recognize", k3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("line graph: yes"));
}

#[test]
fn format_flag_overrides_extension() {
    let dir = tempdir("format");
    // graph6 content in a file without the .g6 extension.
    let path = write(&dir, "triangle.txt", "Bw");
    let out = run(&["recognize", "--format", "g6", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // Without the override it parses as an edge list and fails.
    let out = run(&["recognize", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_counts_and_cap() {
    let dir = tempdir("enumerate");
    let k3 = write(&dir, "k3.g6", "Bw");
    let out = run(&["enumerate", k3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("2 decomposition(s)"));

    let out = run(&["--cap", "2", "enumerate", k3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "cap refusal is exit 3");
}

#[test]
fn cap_env_variable_applies() {
    let dir = tempdir("capenv");
    let k3 = write(&dir, "k3.g6", "Bw");
    let out = bin()
        .args(["enumerate", k3.to_str().unwrap()])
        .env("LINEGRAPH_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_output_is_one_object_per_line_and_deterministic() {
    let dir = tempdir("json");
    let claw = write(&dir, "claw.edges", "0 1\n0 2\n0 3\n");
    let first = run(&["--json", "witness", claw.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(1));
    for line in stdout(&first).lines() {
        let value: serde_json::Value = serde_json::from_str(line).expect("valid JSON line");
        assert_eq!(value["command"], "witness");
        assert_eq!(value["line_graph"], false);
        assert_eq!(value["witnesses"][0]["index"], 1);
    }
    let second = run(&["--json", "witness", claw.to_str().unwrap()]);
    assert_eq!(stdout(&first), stdout(&second), "output must be deterministic");
}

#[test]
fn root_round_trips_through_linegraph() {
    let dir = tempdir("root");
    // Octahedron roots to K4.
    let octa = write(&dir, "octa.g6", "EznW");
    let out = run(&["--json", "root", octa.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["root"]["vertices"], 4);
    assert_eq!(value["root"]["graph6"], "C~");

    // And the claw has no root.
    let claw = write(&dir, "claw.edges", "0 1\n0 2\n0 3\n");
    let out = run(&["root", claw.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn whitney_lifts_identity_on_path() {
    let dir = tempdir("whitney");
    let p4 = write(&dir, "p4.edges", "0 1\n1 2\n2 3\n");
    let phi = write(&dir, "phi.txt", "0 1 0 1\n1 2 1 2\n2 3 2 3\n");
    let out = run(&[
        "whitney",
        p4.to_str().unwrap(),
        p4.to_str().unwrap(),
        phi.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("induced by sigma"));

    // A non-bijection is a usage error.
    let bad = write(&dir, "bad.txt", "0 1 0 1\n1 2 0 1\n2 3 2 3\n");
    let out = run(&[
        "whitney",
        p4.to_str().unwrap(),
        p4.to_str().unwrap(),
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_relation_reports_violations() {
    let dir = tempdir("validate");
    let k3 = write(&dir, "k3.g6", "Bw");
    let good = write(&dir, "good.rel", "0-1 0-2 1-2\n");
    let out = run(&[
        "validate-relation",
        k3.to_str().unwrap(),
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let bad = write(&dir, "bad.rel", "0-1\n0-2 1-2\n");
    let out = run(&[
        "validate-relation",
        k3.to_str().unwrap(),
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violation"));
}

#[test]
fn k0_demo_summarizes_pipeline() {
    let out = run(&["--json", "k0-demo", "2", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["components"], 4);
    assert_eq!(value["clique_size"], 4);
    assert_eq!(value["chromatic"], 4);
    assert_eq!(value["root_is_star_forest"], true);

    // k > m is a usage error; an oversized m is a cap refusal.
    assert_eq!(run(&["k0-demo", "4", "2"]).status.code(), Some(2));
    assert_eq!(run(&["k0-demo", "0", "30"]).status.code(), Some(3));
}

#[test]
fn catalog_dump_and_selfcheck() {
    let out = run(&["catalog-dump"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 18);

    let out = run(&["catalog-dump", "claw"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("beineke-1"));

    assert_eq!(run(&["catalog-dump", "bogus"]).status.code(), Some(2));

    let out = run(&["selfcheck", "--jobs", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("8 passed, 0 failed"));
}

#[test]
fn canonical_on_line_graph_and_rejection() {
    let dir = tempdir("canonical");
    let two_triangles = write(&dir, "tt.edges", "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    let out = run(&["canonical", two_triangles.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // Both triangles receive the same copied relation: same class shape.
    let text = stdout(&out);
    assert!(text.contains("class 0"));

    let claw = write(&dir, "claw.edges", "0 1\n0 2\n0 3\n");
    let out = run(&["canonical", claw.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not a line graph"));
}

#[test]
fn dot_output_renders() {
    let out = run(&["catalog-dump", "k4", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("graph {"));
    assert!(text.contains("0 -- 1;"));
}

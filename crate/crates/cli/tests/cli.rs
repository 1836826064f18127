use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rectiplanar"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn test_square_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.txt");
    fs::write(&path, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = run(&["test", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["rectilinear_planar"], true);
    assert!(v["elapsed_ms"].is_number());
}

#[test]
fn test_from_stdin_negative_is_exit_zero() {
    let mut child = bin()
        .args(["test", "-", "--json", "--text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"3 3\n0 1\n1 2\n2 0\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["rectilinear_planar"], false);
    assert!(v["reason"].is_string());
}

#[test]
fn k4_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.txt");
    fs::write(&path, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out = run(&["test", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim(), "error: not series-parallel");
}

#[test]
fn malformed_input_is_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3 1\n0 7\n").unwrap();
    let out = run(&["test", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8(out.stderr).unwrap().lines().count(), 1);
}

#[test]
fn draw_lowerbound_svg() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("lb.txt");
    let side = dir.path().join("lb.json");
    let svg = dir.path().join("lb.svg");
    let out = run(&[
        "gen",
        "lowerbound",
        "-n",
        "2",
        "-o",
        g.to_str().unwrap(),
        "--sidecar",
        side.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(sidecar["g0_components"].as_array().unwrap().len(), 18);

    let out = run(&[
        "draw",
        g.to_str().unwrap(),
        "--svg",
        "--json",
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert!(text.trim_end().ends_with("</svg>"));
    let header = fs::read_to_string(&g).unwrap();
    let edges: usize = header.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert_eq!(text.matches("<polyline").count(), edges);
}

#[test]
fn draw_json_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c6.txt");
    fs::write(&path, run(&["gen", "cycle", "-n", "6"]).stdout).unwrap();
    let out = run(&["draw", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["coords"].as_array().unwrap().len(), 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn gen_random_needs_seed_and_is_deterministic() {
    assert_eq!(run(&["gen", "random", "-n", "20"]).status.code(), Some(2));
    let a = run(&["gen", "random", "-n", "20", "--seed", "7"]);
    let b = run(&["gen", "random", "-n", "20", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn oracle_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.txt");
    fs::write(&path, run(&["gen", "cycle", "-n", "5"]).stdout).unwrap();
    let out = run(&["oracle", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["feasible"], true);
    let out = run(&["oracle", path.to_str().unwrap(), "--cap", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_csv() {
    let out = run(&["bench", "--sizes", "64,128", "--runs", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,elapsed_ms");
    assert_eq!(lines.len(), 5);
    for l in &lines[1..] {
        let (n, ms) = l.split_once(',').unwrap();
        n.parse::<usize>().unwrap();
        ms.parse::<f64>().unwrap();
    }
}

#[test]
fn corpus_agrees() {
    let out = run(&["corpus", "--seed", "2", "--count", "60", "--sweep", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["disagreements"], 0);
    assert!(v["in_scope"].as_u64().unwrap() > 0);
}

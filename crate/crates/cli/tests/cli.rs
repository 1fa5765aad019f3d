//! Exit-code and interface checks for the `triflow` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn triflow(args: &[&str], stdin: Option<&str>) -> Output {
    let mut command = Command::new(env!("CARGO_BIN_EXE_triflow"));
    command.args(args);
    command.stdout(Stdio::piped()).stderr(Stdio::piped());
    match stdin {
        Some(text) => {
            command.stdin(Stdio::piped());
            let mut child = command.spawn().expect("binary spawns");
            child
                .stdin
                .as_mut()
                .expect("stdin piped")
                .write_all(text.as_bytes())
                .expect("stdin accepts input");
            child.wait_with_output().expect("binary finishes")
        }
        None => {
            command.stdin(Stdio::null());
            command.output().expect("binary finishes")
        }
    }
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

const TRIANGLE: &str = "3 3\n0 1\n1 2\n2 0\n";
const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn solve_exits_zero_when_a_flow_exists() {
    let output = triflow(&["solve", "-"], Some(TRIANGLE));
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("nowhere-zero flow found"));
}

#[test]
fn solve_exits_one_when_no_flow_exists() {
    let output = triflow(&["solve", "-"], Some(K4));
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("non-bipartite cubic"));
}

#[test]
fn solve_reads_files_as_well_as_stdin() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("triangle.txt");
    std::fs::write(&path, TRIANGLE).expect("fixture written");
    let output = triflow(&["solve", path.to_str().unwrap()], None);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn oracle_exit_codes_mirror_existence() {
    assert_eq!(
        triflow(&["oracle", "-"], Some(TRIANGLE)).status.code(),
        Some(0)
    );
    assert_eq!(triflow(&["oracle", "-"], Some(K4)).status.code(), Some(1));
}

#[test]
fn analysis_commands_exit_zero_regardless_of_flow_existence() {
    for command in ["sparse", "critical", "bounds", "irrelevant"] {
        for fixture in [TRIANGLE, K4] {
            let output = triflow(&[command, "-"], Some(fixture));
            assert_eq!(
                output.status.code(),
                Some(0),
                "{command} should exit 0; stderr: {}",
                stderr(&output)
            );
        }
    }
}

#[test]
fn graph6_input_is_accepted() {
    // "D?{" is the 5-vertex star, which has no nowhere-zero flow.
    let output = triflow(&["solve", "--format", "graph6", "-"], Some("D?{\n"));
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("degree-1 vertex"));
}

#[test]
fn unknown_subcommands_exit_two() {
    let output = triflow(&["frobnicate"], None);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unreadable_input_exits_two() {
    let output = triflow(&["solve", "/nonexistent/graph.txt"], None);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("error:"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let output = triflow(&["solve", "-"], Some("2 1\n0 5\n"));
    assert_eq!(output.status.code(), Some(2));
    let message = stderr(&output);
    assert!(message.contains("line 2"), "stderr was: {message}");
}

#[test]
fn sparse_rejects_disconnected_input() {
    let output = triflow(&["sparse", "-"], Some("4 2\n0 1\n2 3\n"));
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("disconnected"));
}

#[test]
fn solve_handles_disconnected_input_by_components() {
    let two_triangles = "6 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n";
    let output = triflow(&["solve", "-"], Some(two_triangles));
    assert_eq!(output.status.code(), Some(0));

    let triangle_plus_edge = "5 4\n0 1\n1 2\n2 0\n3 4\n";
    let output = triflow(&["solve", "-"], Some(triangle_plus_edge));
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("component-wise failure"));
}

#[test]
fn gen_rejects_undersized_families() {
    let output = triflow(&["gen", "wheel", "2"], None);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("at least 3 spokes"));
}

#[test]
fn gen_graph6_output_parses_back() {
    let output = triflow(&["gen", "--format", "graph6", "k4"], None);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output).trim(), "C~");
}

#[test]
fn oracle_cap_environment_variable_is_honoured() {
    let mut command = Command::new(env!("CARGO_BIN_EXE_triflow"));
    command.args(["oracle", "-"]);
    command.env("TRIFLOW_ORACLE_CAP", "0");
    command
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = command.spawn().expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(TRIANGLE.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("cap"));
}

#[test]
fn survey_rejects_oversized_universes() {
    let output = triflow(&["survey", "--max-n", "8"], None);
    assert_eq!(output.status.code(), Some(2));
}

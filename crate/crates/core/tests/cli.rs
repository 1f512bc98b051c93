use std::io::Write;
use std::process::{Command, Output, Stdio};

fn dim(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dim"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_reports_certificate_and_exit_code() {
    let o = dim(&["solve"], "4 3\n0 1\n1 2\n2 3\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(text(&o), "DIM 1\n1 2\n");

    let o = dim(&["solve", "--inline", "4 4;0 1;1 2;2 3;3 0"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(text(&o).starts_with("NONE"));
}

#[test]
fn malformed_input_exits_two() {
    let o = dim(&["solve"], "3 2\n0 1\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn json_output_is_one_object_per_graph() {
    let o = dim(&["solve", "--format", "json"], "2 1\n0 1\n4 4\n0 1\n1 2\n2 3\n3 0\n");
    let lines: Vec<serde_json::Value> = text(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["mode"], "solve");
    assert_eq!(lines[1]["n"], 4);
}

#[test]
fn generate_round_trips_byte_identically() {
    let generated = text(&dim(&["generate", "--n", "12", "--p", "0.25", "--seed", "3", "--count", "5"], ""));
    let gs = dim_core::io::parse_edge_lists(&generated).unwrap();
    assert_eq!(gs.len(), 5);
    let again: String = gs.iter().map(dim_core::io::write_edge_list).collect();
    assert_eq!(again, generated);
}

#[test]
fn compare_agrees_on_generated_graphs() {
    for (n, p) in [(10, "0.2"), (13, "0.2"), (16, "0.15"), (16, "0.3")] {
        let input = text(&dim(&["generate", "--n", &n.to_string(), "--p", p, "--seed", "1", "--count", "250"], ""));
        let o = dim(&["compare"], &input);
        assert_eq!(o.status.code(), Some(0), "{}", text(&o));
        assert!(!text(&o).contains("DISAGREE"));
    }
}

#[test]
fn check_s115_flags_the_spider() {
    let spider = "8 7\n0 1\n0 2\n0 3\n3 4\n4 5\n5 6\n6 7\n";
    let o = dim(&["check-s115"], spider);
    assert_eq!(o.status.code(), Some(3));
    assert!(text(&o).starts_with("S115"));
    assert_eq!(dim(&["check-s115"], "3 2\n0 1\n1 2\n").status.code(), Some(0));
}

//! End-to-end tests of the `lcdga` binary: exit codes, output and determinism.

use std::process::{Command, Output};

fn lcdga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcdga")).args(args).env_remove("LCDGA_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn d4_suite_reproduces_the_worked_example() {
    let o = lcdga(&["paper-suite", "d4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("PASS d4: all-ones evaluation: Some([[5, 2], [2, 1]])"));
    assert!(text.contains("PASS d4: ε(t1): computed -s11*s15"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn trefoil_kalman_order() {
    let o = lcdga(&["monodromy", "--family", "torus:2,3", "--order"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("order 5"));
    assert!(text.contains("a5 ↦ a1"));
}

#[test]
fn incomplete_filling_is_invalid_input() {
    let o = lcdga(&["fill", "--family", "d4", "--pinch", "a9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not an unlink"));
}

#[test]
fn improper_pinch_is_invalid_input() {
    let o = lcdga(&["fill", "--family", "torus:2,3", "--pinch", "a1,a2,a3,a4,a5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not certified contractible and proper"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(lcdga(&["bogus"]).status.code(), Some(1));
    assert_eq!(lcdga(&["dga", "--family", "nope"]).status.code(), Some(1));
    assert_eq!(lcdga(&["dga", "--braid", "1 9", "--strands", "3"]).status.code(), Some(1));
    assert_eq!(lcdga(&["--help"]).status.code(), Some(0));
}

#[test]
fn misprints_do_not_fail_the_run() {
    let o = lcdga(&["paper-suite", "b12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("MISPRINT").count(), 2);
    assert!(!text.contains("FAIL"));
}

#[test]
fn json_envelope() {
    let o = lcdga(&["--json", "fill", "--family", "torus:2,3", "--pinch", "a1,a2,a3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "fill");
    assert!(v["outputs"].is_object());
}

#[test]
fn output_is_deterministic_across_runs_and_jobs() {
    let args = ["--json", "distinguish", "--family", "d4"];
    let a = lcdga(&args);
    let b = lcdga(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut one = vec!["--jobs", "1"];
    one.extend(args);
    let mut four = vec!["--jobs", "4"];
    four.extend(args);
    assert_eq!(lcdga(&one).stdout, a.stdout);
    assert_eq!(lcdga(&four).stdout, a.stdout);
}

#[test]
fn seeded_fuzz_is_reproducible() {
    let args = ["check", "--family", "torus:2,3", "--fuzz", "10", "--seed", "7"];
    let a = lcdga(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, lcdga(&args).stdout);
}

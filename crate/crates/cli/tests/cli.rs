use std::path::PathBuf;
use std::process::{Command, Output};

use tqrf_core::cccd::{build_elementary, fission};
use tqrf_core::cobordism::functor_f;
use tqrf_core::formats::{from_json, CobordismDoc, DiagramDoc, QrfDoc, QrfSpec};

fn samples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples")
}

fn tqrf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqrf")).args(args).current_dir(samples()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn measuring_the_pointer_prints_one() {
    let o = tqrf(&["qrf", "measure", "qrf-elementary.json", "101"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let o = tqrf(&["qrf", "measure", "qrf-elementary.json", "100"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn rotated_joint_fixture_fails_with_a_witness() {
    let o = tqrf(&["cccd", "check", "not-cccd.json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["half"], "cocone");
    assert_eq!(tqrf(&["cccd", "check", "diagram-101.json"]).status.code(), Some(0));
}

#[test]
fn malformed_input_exits_two_with_a_position() {
    let o = tqrf(&["qrf", "measure", "malformed.json", "101"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4 column 1"), "{err}");
    assert!(o.stdout.is_empty());
    assert_eq!(tqrf(&["qrf", "measure", "no-such-file.json", "1"]).status.code(), Some(2));
    assert_eq!(tqrf(&["cccd", "morph", "diagram-101.json", "--step", "twist:1"]).status.code(), Some(2));
}

#[test]
fn domain_errors_print_an_error_object() {
    let o = tqrf(&["cobord", "check", "diagram-1010.json", "--step", "fission:0"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "input");
    assert!(v["error"]["message"].as_str().unwrap().contains("split 0"));
    let o = tqrf(&["--strict", "cobord", "hab", "--beta", "69/100", "--outcome", "1,-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn demos_pass_their_square_checks() {
    for which in ["fission", "rotation"] {
        let o = tqrf(&["demo", which]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["square"]["holds"], true);
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&tqrf(&["demo", "rotation"]))).unwrap();
    assert_eq!(v["tqft"]["cycles"], "(1 2)(5 6)");
}

#[test]
fn emitted_files_parse_back_to_the_same_values() {
    let d: DiagramDoc = from_json(&stdout(&tqrf(&["cccd", "build", "qrf-1010.json"]))).unwrap();
    let built = build_elementary(&"1010".parse().unwrap()).unwrap();
    assert_eq!(d.build().unwrap(), built);
    let c: CobordismDoc = from_json(&stdout(&tqrf(&["cobord", "compile", "diagram-1010.json", "--step", "fission:2"]))).unwrap();
    let (f, _) = fission(&built, 2).unwrap();
    assert_eq!(c.build().unwrap(), functor_f(&f).unwrap());
    let q: QrfDoc = from_json(&stdout(&tqrf(&["cccd", "frame", "diagram-1010.json"]))).unwrap();
    assert!(matches!(q.build().unwrap(), QrfSpec::Composite(c) if c.pointers() == vec!["1010".parse().unwrap()]));
}

#[test]
fn manifests_resolve_inputs_and_choose_the_format() {
    let o = tqrf(&["run", "manifest-check.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("does not commute"));
    let a = tqrf(&["run", "manifest-sample.json"]);
    let b = tqrf(&["qrf", "sample", "qrf-probabilistic.json", "--column", "0", "--count", "4", "--seed", "42", "--format", "text"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn outputs_are_byte_identical_across_runs_and_workers() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_tqrf"))
            .args(["cccd", "check", "not-cccd.json"])
            .current_dir(samples())
            .env("TQRF_WORKERS", workers)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("1"));
    assert_eq!(run("1"), run("3"));
    assert_eq!(tqrf(&["demo", "fission"]).stdout, tqrf(&["demo", "fission"]).stdout);
}

#[test]
fn dot_is_offered_for_diagrams_only() {
    let o = tqrf(&["--format", "dot", "cccd", "build", "qrf-elementary.json"]);
    assert!(stdout(&o).starts_with("digraph"));
    assert_eq!(tqrf(&["--format", "dot", "index", "tau=8"]).status.code(), Some(2));
}

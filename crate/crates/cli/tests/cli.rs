//! End-to-end tests of the `fhk` binary: golden outputs, exit codes, and
//! the reduction-table cache. Every expected string is frozen byte-for-byte;
//! the contract is that identical flags produce identical bytes.

use std::process::{Command, Output};

fn fhk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fhk"))
        .args(args)
        .env_remove("HECKE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn fhk_cached(args: &[&str], cache_dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fhk"))
        .args(args)
        .env("HECKE_CACHE_DIR", cache_dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr is utf-8")
}

#[test]
fn dims_prints_the_specialized_cap_dimension() {
    let out = fhk(&["dims", "--k", "2", "--n", "4", "--mode", "k1=0,k2=3"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "192\n");
}

#[test]
fn dims_generic_tower_uses_the_certified_route() {
    let out = fhk(&["dims", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "209\n");
}

#[test]
fn verify_suite_exits_zero_and_reports_ok() {
    let out = fhk(&["verify", "--suite", "corner-idempotents", "--n", "2", "--mode", "generic"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ok corner-idempotents"), "got: {text}");
    assert!(text.contains("checks passed"), "got: {text}");
}

#[test]
fn bratteli_dot_carries_the_dimension_caption() {
    let out = fhk(&["bratteli", "--levels", "3", "--filter", "avoiding", "--out", "dot"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("digraph"), "got: {text}");
    assert!(text.contains("level dims: 1, 2, 7, 34"), "got: {text}");
}

#[test]
fn multiplication_json_is_byte_stable() {
    let expected = "{\"mode\":\"generic\",\"n\":2,\"terms\":[{\"coeff\":\"1\",\"word\":\"1 2\"}]}\n";
    let out = fhk(&["mul", "2 1", "2 1", "--out", "json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), expected);
    let again = fhk(&["mul", "2 1", "2 1", "--out", "json"]);
    assert_eq!(stdout(&again), expected);
}

#[test]
fn phi_maps_the_barred_generator_onto_two_diagrams() {
    let out = fhk(&["phi", "-1 2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "{1} ; 2 -> 2, 3 -> 3 : 1\n{2} ; 2 -> 1, 3 -> 3 : 1\n"
    );
}

#[test]
fn enumerate_lists_the_avoiding_words() {
    let out = fhk(&["enumerate", "--n", "2", "--filter", "avoiding"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let lines: Vec<&str> = stdout(&out).lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(!lines.contains(&"-1 -2"));

    let json = fhk(&["enumerate", "--n", "2", "--filter", "avoiding", "--out", "json"]);
    assert_eq!(
        stdout(&json),
        "{\"count\":7,\"filter\":\"avoiding\",\"n\":2,\"words\":[\"1 2\",\"1 -2\",\"-1 2\",\"2 1\",\"2 -1\",\"-2 1\",\"-2 -1\"]}\n"
    );
}

#[test]
fn usage_errors_exit_two_with_a_clean_stdout() {
    let cases: &[&[&str]] = &[
        &["verify", "--suite", "no-such-suite"],
        &["enumerate", "--n", "2", "--filter", "cap"],
        &["reduce", "1 5"],
        &["mul", "2 1", "2 1", "--out", "dot"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = fhk(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(stdout(&out).is_empty(), "args: {args:?} wrote to stdout");
        assert!(!stderr(&out).is_empty(), "args: {args:?} left stderr empty");
    }
}

#[test]
fn reduction_cache_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().expect("tempdir");
    let args = ["reduce", "-1 -2", "--filter", "cap", "--k", "1", "--mode", "k1=0,k2=3"];

    let fresh = fhk(&args);
    assert_eq!(fresh.status.code(), Some(0), "stderr: {}", stderr(&fresh));

    let first = fhk_cached(&args, dir.path());
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    let written: Vec<_> = std::fs::read_dir(dir.path())
        .expect("cache dir readable")
        .map(|e| e.expect("dir entry").file_name())
        .collect();
    assert_eq!(written.len(), 1, "one table file, got {written:?}");
    assert!(written[0].to_string_lossy().ends_with(".json"));

    let second = fhk_cached(&args, dir.path());
    assert_eq!(second.status.code(), Some(0), "stderr: {}", stderr(&second));

    assert_eq!(stdout(&first), stdout(&fresh), "cache build changed the output");
    assert_eq!(stdout(&second), stdout(&first), "cache read changed the output");
}

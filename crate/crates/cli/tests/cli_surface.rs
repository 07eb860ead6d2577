//! End-to-end checks of the command-line surface: spec parsing and
//! diagnostics, expression evaluation, report determinism, witness
//! round-trips, and the fault-injection fixture.

use std::process::{Command, Output};

fn videal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_videal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_gaussian_integers_reports_krull() {
    let out = videal(&["classify", "quadratic", "d=-1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("krull"));
    assert!(text.contains("holds"));
    assert!(!text.contains("refuted"));
}

#[test]
fn refuted_verdicts_still_exit_zero() {
    let out = videal(&["classify", "quadratic", "d=-3", "f=2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("refuted"));

    let out = videal(&["classify", "semigroup", "2,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("refuted"));
    assert!(text.contains("(2, 3)") || text.contains("pair (2, 3)"));
}

#[test]
fn structured_reports_are_byte_identical_across_runs() {
    let args = [
        "classify",
        "quadratic",
        "d=-5",
        "f=2",
        "--format",
        "structured",
        "--seed",
        "9",
        "--samples",
        "60",
    ];
    let a = videal(&args);
    let b = videal(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn spec_files_round_trip_with_flag_overrides() {
    let dir = std::env::temp_dir().join("videal-spec-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("order.spec");
    std::fs::write(
        &path,
        "# comment\nkind = quadratic\nd = -3\nf = 2\nsamples = 40\nseed = 5\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let a = videal(&["classify", "--spec", p, "--format", "structured"]);
    assert!(a.status.success(), "stderr: {}", stderr(&a));
    let text = stdout(&a);
    assert!(text.contains("\"samples\": 40"));
    assert!(text.contains("\"seed\": 5"));
    // flags beat file values
    let b = videal(&[
        "classify",
        "--spec",
        p,
        "--format",
        "structured",
        "--seed",
        "11",
    ]);
    assert!(stdout(&b).contains("\"seed\": 11"));
}

#[test]
fn spec_diagnostics_carry_line_and_column() {
    let dir = std::env::temp_dir().join("videal-spec-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.spec");
    std::fs::write(&path, "kind = quadratic\nd = -3\nq = 1\n").unwrap();
    let out = videal(&["classify", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3, column 1: unknown key `q`"));

    std::fs::write(&path, "kind = quadratic\nd = nine\n").unwrap();
    let out = videal(&["classify", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2, column 5"));
}

#[test]
fn inline_diagnostics_use_argument_positions() {
    let out = videal(&["classify", "quadratic", "d=12"]);
    assert_eq!(out.status.code(), Some(2), "d = 12 is not squarefree");
    assert!(stderr(&out).contains("line 2"));

    let out = videal(&["classify", "what"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unrecognized inline token `what`"));
}

#[test]
fn ideal_reproduces_the_colon_ring_of_the_conductor_pair() {
    let out = videal(&[
        "ideal",
        "quadratic",
        "d=-3",
        "f=2",
        "((2) \u{2229} (1+w)) : ((2) \u{2229} (1+w))",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ideal: (1, 1/2+1/2*w)"));
    assert!(text.contains("\u{2260} D"));
}

#[test]
fn ideal_trivial_identities() {
    let out = videal(&["ideal", "quadratic", "d=-1", "D^-1"]);
    assert!(stdout(&out).contains("ideal: (1)"));
    assert!(stdout(&out).contains("= D"));

    let principal = videal(&["ideal", "quadratic", "d=-1", "(2-3*w)"]);
    let closed = videal(&["ideal", "quadratic", "d=-1", "(2-3*w)^v"]);
    assert_eq!(stdout(&principal), stdout(&closed));

    // caret alias and the ascii intersection agree
    let cap = videal(&["ideal", "quadratic", "d=-1", "(2) \u{2229} (1+w)"]);
    let caret = videal(&["ideal", "quadratic", "d=-1", "(2) ^ (1+w)"]);
    assert_eq!(stdout(&cap), stdout(&caret));
}

#[test]
fn ideal_works_on_semigroups() {
    let out = videal(&["ideal", "semigroup", "2,3", "(2, 3)^v"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ideal: (2, 3)"));

    let out = videal(&["ideal", "semigroup", "2,3", "D : (2, 3)"]);
    assert!(stdout(&out).contains("ideal: (0, 1)"));
}

#[test]
fn expression_errors_point_with_a_caret() {
    let out = videal(&["ideal", "quadratic", "d=-1", "(2, 1+i)"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("unexpected character `i`"));
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines.len(), 3);
    let caret_col = lines[2].find('^').unwrap();
    let i_col = lines[1].find('i').unwrap();
    assert_eq!(caret_col, i_col);

    let out = videal(&["ideal", "quadratic", "d=-1", "(2) :"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains('^'));
}

#[test]
fn witnesses_round_trip_through_the_ideal_command() {
    let out = videal(&[
        "classify",
        "quadratic",
        "d=-3",
        "f=2",
        "--format",
        "structured",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let witness = doc["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["property"] == "v-domain")
        .unwrap()["witness"]
        .clone();
    let pair = witness["pair"].as_array().unwrap();
    let (a, b) = (pair[0].as_str().unwrap(), pair[1].as_str().unwrap());
    let expr = format!("(({a}) \u{2229} ({b})) : (({a}) \u{2229} ({b}))");
    let re = videal(&["ideal", "quadratic", "d=-3", "f=2", &expr]);
    assert!(re.status.success());
    let text = stdout(&re);
    let computed = witness["computed"].as_str().unwrap();
    assert!(
        text.contains(&format!("ideal: {}", computed)),
        "expression {} did not reproduce {}\n{}",
        expr,
        computed,
        text
    );
    assert!(text.contains("\u{2260} D"));
}

#[test]
fn selftest_passes_quickly_with_small_samples() {
    let out = videal(&["selftest", "--samples", "12"]);
    assert!(out.status.success(), "output: {}", stdout(&out));
    assert!(stdout(&out).contains("suites passed"));
}

#[test]
fn injected_faults_fail_the_selftest_with_a_witness() {
    for fault in ["v-closure-identity", "intersect-first", "oracle-inverted"] {
        let out = videal(&["selftest", "--inject-fault", fault]);
        assert_eq!(out.status.code(), Some(1), "fault {}", fault);
        let text = stdout(&out);
        assert!(text.contains("detected:"), "fault {}: {}", fault, text);
        assert!(
            text.contains("inconsistency") || text.contains("mismatch"),
            "fault {}: {}",
            fault,
            text
        );
    }
    let out = videal(&["selftest", "--inject-fault", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn primes_are_rejected_for_semigroups() {
    let out = videal(&["classify", "semigroup", "2,3", "--primes", "2,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("quadratic"));
}

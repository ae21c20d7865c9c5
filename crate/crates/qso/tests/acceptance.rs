//! Acceptance criteria C1–C11, one PASS/FAIL line each.
//!
//! C1–C10 run the verification criteria in-process with seed 7; C11 drives the
//! `qso` binary. Criteria listed in `KNOWN_FAILURES` are expected to print FAIL:
//! the test asserts they still fail, so a change in either direction is caught.

use std::process::Command;

use qso::verify::{Criterion, Outcome};

const SEED: u64 = 7;

/// `LAST_COORD` is not monotone along `ALPHA_COMBINATION` trajectories: `x_m`
/// overshoots below its limit in the first step and then increases. See README.
const KNOWN_FAILURES: &[&str] = &["C3"];

fn line(id: &str, passed: bool, detail: &str) {
    println!("{} {id} {detail}", if passed { "PASS" } else { "FAIL" });
}

fn report(o: &Outcome) {
    for c in &o.checks {
        println!("    {} {}", if c.passed { "ok  " } else { "FAIL" }, c.text);
    }
    line(o.criterion.id(), o.passed(), o.criterion.title());
}

fn verify_all() -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qso"))
        .args(["verify", "--suite", "all", "--seed", "7"])
        .output()
        .expect("qso binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 output"), out.status.code().expect("exit code"))
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_qso")).args(args).output().expect("qso binary runs").status.code().unwrap()
}

#[test]
fn acceptance() {
    let mut unexpected = Vec::new();
    let mut all_pass = true;
    for c in Criterion::ALL {
        let o = c.run(SEED);
        report(&o);
        all_pass &= o.passed();
        let expected = !KNOWN_FAILURES.contains(&c.id());
        if o.passed() != expected {
            unexpected.push(c.id());
        }
    }

    let (first, code_a) = verify_all();
    let (second, code_b) = verify_all();
    let expected_code = if all_pass { 0 } else { 1 };
    let identical = first == second;
    let codes = code_a == expected_code
        && code_b == expected_code
        && exit_code(&["verify", "--suite", "bogus"]) == 2
        && exit_code(&["families", "--bogus"]) == 2
        && exit_code(&["verify", "--suite", "scalar", "--seed", "7"]) == 0
        && exit_code(&["families"]) == 0;
    let c11 = identical && codes && !first.is_empty();
    line(
        "C11",
        c11,
        &format!("determinism: verify --suite all twice byte-identical = {identical}, exit codes honored = {codes} (suite exit {code_a})"),
    );
    if !c11 {
        unexpected.push("C11");
    }

    assert!(unexpected.is_empty(), "criteria deviating from the expected outcome: {unexpected:?}");
}

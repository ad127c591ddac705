//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! straight to stdout so the lines survive output capture.

use std::io::Write;
use std::sync::OnceLock;

use mertens_core::acceptance::{default_zeros_dir, Acceptance};

fn suite() -> &'static Acceptance {
    static SUITE: OnceLock<Acceptance> = OnceLock::new();
    SUITE.get_or_init(|| {
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        Acceptance::new(default_zeros_dir(), workers)
    })
}

fn check(id: u8) {
    let r = suite().run(id);
    let mut out = std::io::stdout().lock();
    writeln!(out, "{r}").unwrap();
    out.flush().unwrap();
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_01_positivity_sweep() {
    check(1);
}

#[test]
fn criterion_02_mean_value_positivity() {
    check(2);
}

#[test]
fn criterion_03_constants() {
    check(3);
}

#[test]
fn criterion_04_tail_integrals() {
    check(4);
}

#[test]
fn criterion_05_theta_log_square_integral() {
    check(5);
}

#[test]
fn criterion_06_plotted_mean_values() {
    check(6);
}

#[test]
fn criterion_07_sandwich() {
    check(7);
}

#[test]
fn criterion_08_discriminant_tables() {
    check(8);
}

#[test]
fn criterion_09_modulus_set() {
    check(9);
}

#[test]
fn criterion_10_residue_table() {
    check(10);
}

#[test]
fn criterion_11_property_suites() {
    check(11);
}

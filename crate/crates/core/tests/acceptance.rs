//! One test per acceptance criterion; each prints a single PASS/FAIL line.

use std::io::Write;
use std::time::Instant;

use holokit::repro::{run_criterion, ReproOptions};

fn criterion(id: usize) {
    let opts = ReproOptions { seed: 7 };
    let t = Instant::now();
    let rep = run_criterion(id, &opts).unwrap_or_else(|e| panic!("criterion {id}: {e}"));
    let secs = t.elapsed().as_secs_f64();
    let verdict = if rep.pass() { "PASS" } else { "FAIL" };
    // Written to the raw handle so the line shows up without --nocapture.
    let mut line = format!(
        "criterion {id:>2} {verdict}  {} ({} checks, {secs:.1} s)\n",
        rep.title,
        rep.checks.len()
    );
    for c in rep.failures() {
        line += &format!(
            "    {}: expected {}, computed {}\n",
            c.name, c.expected, c.computed
        );
    }
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(rep.pass(), "criterion {id} failed");
}

#[test]
fn criterion_01_lie_group_oracle() {
    criterion(1);
}

#[test]
fn criterion_02_ikemakhen() {
    criterion(2);
}

#[test]
fn criterion_03_n0_metric_table() {
    criterion(3);
}

#[test]
fn criterion_04_curvature_spaces() {
    criterion(4);
}

#[test]
fn criterion_05_symmetric_pairs() {
    criterion(5);
}

#[test]
fn criterion_06_pseudo_kaehler_metrics() {
    criterion(6);
}

#[test]
fn criterion_07_lorentz_so2() {
    criterion(7);
}

#[test]
fn criterion_08_g2_spin7() {
    criterion(8);
}

#[test]
fn criterion_09_property_suites() {
    criterion(9);
}

#[test]
fn criterion_10_weak_irreducibility() {
    criterion(10);
}

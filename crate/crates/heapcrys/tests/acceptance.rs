//! Acceptance suite: runs every verification criterion at its stated bound
//! and prints one PASS/FAIL line per criterion.
//!
//! `HEAPCRYS_ACCEPTANCE_BOUND=small` switches to the reduced parameter set
//! (useful while hacking); the default is the full sweep.

use heapcrys::report::Status;
use heapcrys::suite::{run_criterion, Bound, SuiteConfig, CRITERIA};

fn config() -> SuiteConfig {
    let bound = match std::env::var("HEAPCRYS_ACCEPTANCE_BOUND").as_deref() {
        Ok("small") => Bound::Small,
        _ => Bound::Full,
    };
    SuiteConfig { bound, seed: 0, timings: true }
}

fn check(id: &str) {
    let cfg = config();
    let rep = run_criterion(id, cfg).expect("criterion runner");
    println!(
        "{} {} ({} ms)",
        match rep.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        },
        rep.criterion_id,
        rep.runtime_ms.unwrap_or(0),
    );
    if let Some(w) = &rep.witness {
        println!("  witness: {w}");
    }
    assert_eq!(rep.status, Status::Pass, "criterion {id} failed");
}

#[test]
fn criterion_01_minuscule_criteria_agreement() {
    check("minuscule-criteria-agreement");
}

#[test]
fn criterion_02_demazure_counting() {
    check("demazure-counting");
}

#[test]
fn criterion_03_demazure_chain_image() {
    check("demazure-chain-image");
}

#[test]
fn criterion_04_preprojective_relation() {
    check("preprojective-relation");
}

#[test]
fn criterion_05_jordan_rpp_bijection() {
    check("jordan-rpp-bijection");
}

#[test]
fn criterion_06_filtration_fixtures() {
    check("filtration-fixtures");
}

#[test]
fn criterion_07_c1_implies_c2() {
    check("c1-implies-c2");
}

#[test]
fn criterion_08_springer_flag_comparison() {
    check("springer-flag-comparison");
}

#[test]
fn criterion_09_toggle_cactus_checks() {
    check("toggle-cactus-checks");
}

#[test]
fn criterion_10_demazure_intersection_counterexample() {
    check("demazure-intersection-counterexample");
}

#[test]
fn criteria_all_covered() {
    // one test per criterion id, each id exactly once
    assert_eq!(CRITERIA.len(), 10);
}

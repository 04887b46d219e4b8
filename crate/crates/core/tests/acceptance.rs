//! Acceptance criteria 1 to 10. Each test prints one summary line plus the failing
//! records, then asserts the criterion. Run with `-- --nocapture --test-threads=1`
//! to see the lines in order.

use quatherm::cli::report::{Record, Status};
use quatherm::cli::suite::{criteria, criterion_status, SuiteOptions};

fn run(id: u8) {
    let c = criteria().into_iter().find(|c| c.id == id).expect("criterion exists");
    let records: Vec<Record> = (c.run)(&SuiteOptions::default());
    let status = criterion_status(&records);
    let core: Vec<&Record> = records.iter().filter(|r| !r.supplementary).collect();
    let passed = core.iter().filter(|r| r.status == Status::Pass).count();
    println!("\ncriterion {id}: {} ({passed}/{} checks) {}", status.label(), core.len(), c.title);
    for r in &records {
        if r.status != Status::Pass || r.supplementary {
            let extra = if r.supplementary { " (supplementary)" } else { "" };
            println!(
                "    {} {}{extra}: actual {} expected {}{}",
                r.status.label(),
                r.name,
                r.actual.as_deref().unwrap_or("-"),
                r.expected.as_deref().unwrap_or("-"),
                r.note.as_ref().map(|n| format!(" [{n}]")).unwrap_or_default()
            );
        }
    }
    assert_eq!(status, Status::Pass, "criterion {id} did not pass");
}

#[test]
fn criterion_01_counted_densities_match_closed_form() {
    run(1);
}

#[test]
fn criterion_02_special_closed_forms() {
    run(2);
}

#[test]
fn criterion_03_size_two_spherical_function() {
    run(3);
}

#[test]
fn criterion_04_explicit_formula_symmetric() {
    run(4);
}

#[test]
fn criterion_05_induction_identity() {
    run(5);
}

#[test]
fn criterion_06_iwahori_valuation_law() {
    run(6);
}

#[test]
fn criterion_07_ideal_membership() {
    run(7);
}

#[test]
fn criterion_08_orthogonality() {
    run(8);
}

#[test]
fn criterion_09_plancherel_and_inversion() {
    run(9);
}

#[test]
fn criterion_10_nonresidue_independence() {
    run(10);
}

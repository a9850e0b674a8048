//! Seed campaign for the cokernel-dimension formula of ideal generators on
//! products of projective lines: at every degree of the section region
//! whose lower piece in the step direction is empty, the multiplication
//! map's cokernel is compared against z + (a_i + 2) Delta_i - 2 Delta.
//!
//! Run with: cargo run --release --example bb1_formula

use multigraded::degree::DegreeBox;
use multigraded::generators::verify_bb1;
use multigraded::report::Campaign;
use multigraded::{PrimeField, Space};

fn main() {
    let field = PrimeField::default();
    let campaign = Campaign::default(); // 20 seeds, 19 to pass

    for (k, z) in [(2usize, 3usize), (2, 8), (3, 5), (3, 12)] {
        let space = Space::new(vec![1; k]).unwrap();
        let window = DegreeBox::cube(k, z as u32);
        let report = verify_bb1(&space, z, &window, &campaign, &field).unwrap();
        let checks: usize = report
            .runs
            .iter()
            .map(|r| r.checks.iter().filter(|c| c.hypothesis_ok).count())
            .sum();
        let logged: usize = report
            .runs
            .iter()
            .map(|r| r.checks.iter().filter(|c| !c.hypothesis_ok).count())
            .sum();
        println!(
            "(P^1)^{k}, z = {z:2}: {}/{} seeds, {checks} formula checks, {logged} degrees outside the injectivity hypothesis logged -> {}",
            report.seeds_passed,
            report.seeds_total,
            if report.pass { "PASS" } else { "FAIL" }
        );
        for (seed, check) in report.failures() {
            println!(
                "  seed {seed}: a = {} i = {}: formula {} vs computed {:?}",
                check.a, check.i, check.formula, check.computed
            );
        }
    }
}

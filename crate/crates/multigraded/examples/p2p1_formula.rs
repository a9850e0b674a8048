//! The mixed-factor generator formula: on products of P^1 and P^2 the
//! multiplication-map cokernel is max{0, -z + N(a+eps_i) - (n_i+1)(N(a)-z)},
//! and general points have maximal rank. Both claims run as seed campaigns.
//!
//! Run with: cargo run --release --example p2p1_formula

use multigraded::degree::DegreeBox;
use multigraded::generators::verify_p2p1;
use multigraded::report::Campaign;
use multigraded::{PrimeField, Space};

fn main() {
    let field = PrimeField::default();
    let campaign = Campaign::default();

    for (dims, z) in [
        (vec![1u32, 2], 4usize),
        (vec![1, 2], 8),
        (vec![2, 2], 6),
        (vec![1, 1, 2], 5),
    ] {
        let space = Space::new(dims.clone()).unwrap();
        let window = DegreeBox::cube(space.k(), z as u32);
        let report = verify_p2p1(&space, z, &window, &campaign, &field).unwrap();
        println!(
            "{}, z = {z}: {}/{} seeds -> {}",
            space,
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

//! Twisted cotangent bundles through the Euler sequence: section-space
//! dimensions on the plane, the product formula with general points, and
//! the two thresholds that make a multiplication map have maximal rank.
//!
//! Run with: cargo run --release --example cotangent_sections

use multigraded::cotangent::{build_sections, euler_closure_holds, verify_bg2, verify_ee2};
use multigraded::report::Campaign;
use multigraded::{MultiIndex, PrimeField, Space};

fn main() {
    let field = PrimeField::default();
    let campaign = Campaign::default();

    // h0(Omega^1_{P^2}(x)) = x^2 - 1 once x >= 2
    let p2 = Space::new(vec![2]).unwrap();
    println!("cotangent sections on P^2:");
    for x in 1..=6u32 {
        let v = build_sections(&p2, 0, x, &MultiIndex(vec![]), &field).unwrap();
        println!(
            "  twist {x}: dim = {:2} (x^2 - 1 = {:2}), Euler relation closes: {}",
            v.dim(),
            (x * x).saturating_sub(1),
            euler_closure_holds(&v, &field)
        );
    }

    // general points on P^1 x P^2 against the product formula
    println!("\npoint conditions on P^1 x P^2 (R = O(a) on the line factor):");
    let y = Space::new(vec![1]).unwrap();
    for (a, x) in [(0u32, 2u32), (1, 2), (1, 3), (2, 4)] {
        let report = verify_bg2(&y, &MultiIndex(vec![a]), x, &campaign, &field).unwrap();
        println!(
            "  alpha = {}, x = {x}: {}/{} seeds -> {}",
            a + 1,
            report.seeds_passed,
            report.seeds_total,
            if report.pass { "PASS" } else { "FAIL" }
        );
    }

    // the floor/ceiling thresholds for one multiplication-map slot
    println!("\nmaximal-rank thresholds on P^1 x P^2 at a = (1,2), slot 2:");
    let space = Space::new(vec![1, 2]).unwrap();
    let report = verify_ee2(&space, 1, &MultiIndex(vec![1, 2]), &campaign, &field).unwrap();
    println!(
        "  tau1 = {}, tau2 = {}: {}/{} seeds -> {}",
        report.params["tau1"],
        report.params["tau2"],
        report.seeds_passed,
        report.seeds_total,
        if report.pass { "PASS" } else { "FAIL" }
    );
}

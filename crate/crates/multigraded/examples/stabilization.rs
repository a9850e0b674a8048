//! The behavior of h1 along one factor direction: monotone decay, the
//! stabilization index where it first vanishes, the fiber-trace criterion
//! for a positive limit, and the cokernel identity at the stabilization
//! step.
//!
//! Run with: cargo run --release --example stabilization

use multigraded::cohomology::{h0_h1, stabilized_h1, verify_prop0bg1};
use multigraded::generators::{check_stabilization_coker, stabilization_index};
use multigraded::{ComponentKind, MultiIndex, PrimeField, Space, ZeroScheme};

fn main() {
    let field = PrimeField::default();
    let p1p1 = Space::new(vec![1, 1]).unwrap();

    // five general points, fixed degree 1 on the second factor
    let z = ZeroScheme::random_general(&p1p1, 5, ComponentKind::Reduced, 1, &field);
    print!("five general points, degrees (t,1): h1 =");
    for t in 0..=4u32 {
        print!(" {}", h0_h1(&z, &MultiIndex(vec![t, 1]), &field).1);
    }
    let rep = stabilization_index(&z, &MultiIndex(vec![1]), 0, &field);
    println!("  -> stabilization index e = {:?}", rep.e);
    let check = check_stabilization_coker(&z, &MultiIndex(vec![1]), 0, &field).unwrap();
    println!(
        "cokernel of the step at e: {} (h1 one step earlier: {}) -> {}",
        check.coker_at_e,
        check.expected,
        if check.pass { "match" } else { "MISMATCH" }
    );

    // three points trapped in one fiber never stabilize to zero
    let fiber = ZeroScheme::random_in_fiber(&p1p1, 0, &[4, 1], 3, 2, &field).unwrap();
    let r = stabilized_h1(&fiber, &MultiIndex(vec![0, 1]), 0, &field);
    println!(
        "\nthree points in one pi_1-fiber, direction 1: stable h1 = {} (deficient fiber trace: {}, trace h1 = {})",
        r.limit, r.fiber_deficient, r.fiber_h1_max
    );

    // the randomized campaign over mixed schemes
    let report = verify_prop0bg1(&p1p1, 60, 8, 0, &field);
    println!(
        "\ncampaign over {} mixed schemes: {} monotone steps checked, {} violations; {} fiber-equality violations; {} stabilization mismatches -> {}",
        report.schemes,
        report.steps_checked,
        report.monotone_violations,
        report.fiber_equality_violations,
        report.stabilization_mismatches,
        if report.pass { "PASS" } else { "FAIL" }
    );
}

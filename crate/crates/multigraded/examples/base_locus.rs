//! Base-locus diagnostics: probe drop tests, Jacobian ranks at the scheme's
//! own points, and the campaigns certifying that general points are the
//! scheme-theoretic base locus of their linear system.
//!
//! Run with: cargo run --release --example base_locus

use multigraded::baselocus::{jacobian_rank_at, probe_base_point, verify_f3, verify_f4};
use multigraded::report::Campaign;
use multigraded::scheme::{LocalComponent, Point};
use multigraded::{ComponentKind, MultiIndex, PrimeField, Space, ZeroScheme};

fn main() {
    let field = PrimeField::default();
    let campaign = Campaign::default();
    let p1p1 = Space::new(vec![1, 1]).unwrap();

    // a single point: its system of bidegree (1,1) separates it cleanly,
    // while bidegree (0,1) forces the whole fiber into the base locus
    let pt = Point {
        coords: vec![vec![2, 1], vec![3, 1]],
    };
    let z = ZeroScheme::new(p1p1.clone(), vec![LocalComponent::reduced(pt)], &field).unwrap();
    let off = Point {
        coords: vec![vec![5, 1], vec![9, 1]],
    };
    let fiber_mate = Point {
        coords: vec![vec![5, 1], vec![3, 1]],
    };
    println!("one point on {}:", p1p1);
    println!(
        "  probe off both rulings, degree (1,1): base point? {}",
        probe_base_point(&z, &MultiIndex(vec![1, 1]), &off, &field).unwrap()
    );
    println!(
        "  probe sharing the second projection, degree (0,1): base point? {}",
        probe_base_point(&z, &MultiIndex(vec![0, 1]), &fiber_mate, &field).unwrap()
    );
    println!(
        "  Jacobian rank at the point, degree (1,1): {} (dim X = 2)",
        jacobian_rank_at(&z, &MultiIndex(vec![1, 1]), 0, &field)
    );

    // campaigns
    println!("\nscheme-theoretic base locus campaigns (1000 probes each):");
    let configs = [(p1p1.clone(), vec![2u32, 2], 6usize)];
    for (space, a, s) in configs {
        let c = verify_f3(&space, s, &MultiIndex(a.clone()), 1000, &campaign, &field).unwrap();
        println!(
            "  {} at degree {:?}, s = {s}: {}/{} seeds -> {}",
            space,
            a,
            c.seeds_passed,
            c.seeds_total,
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    let p1p2 = Space::new(vec![1, 2]).unwrap();
    let z_count = 5;
    let c = verify_f4(
        &p1p2,
        z_count,
        &MultiIndex(vec![1, 1]),
        0,
        1000,
        &campaign,
        &field,
    )
    .unwrap();
    println!(
        "  {} one step up from (1,1), s = {z_count}: {}/{} seeds -> {}",
        p1p2,
        c.seeds_passed,
        c.seeds_total,
        if c.pass { "PASS" } else { "FAIL" }
    );

    // sanity: a scheme too large for its degree leaves no sections at all
    let too_many = ZeroScheme::random_general(&p1p1, 4, ComponentKind::Reduced, 3, &field);
    println!(
        "\n4 points against N(1,1) = 4 sections: h0 = {}",
        multigraded::cohomology::h0_h1(&too_many, &MultiIndex(vec![1, 1]), &field).0
    );
}

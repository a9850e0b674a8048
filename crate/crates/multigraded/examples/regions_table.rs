//! Cohomology table of a zero-dimensional scheme: h0/h1 at every degree of
//! a box, the regions where each is positive, and the maximal-rank verdict.
//!
//! Run with: cargo run --release --example regions_table

use multigraded::cohomology::{default_box, regions};
use multigraded::{ComponentKind, MultiIndex, PrimeField, Space, ZeroScheme};

fn main() {
    let field = PrimeField::default();
    let p1p1 = Space::new(vec![1, 1]).unwrap();

    // three general points on P^1 x P^1
    let z = ZeroScheme::random_general(&p1p1, 3, ComponentKind::Reduced, 42, &field);
    let table = regions(&z, &default_box(&z), &field);
    println!("three general points on {}:", p1p1);
    for r in &table.degrees {
        println!("  a = {}  N = {:2}  h0 = {:2}  h1 = {}", r.a, r.n, r.h0, r.h1);
    }
    println!(
        "  minimal degrees with sections: {}",
        table
            .i0_min
            .iter()
            .map(MultiIndex::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    println!("  maximal rank: {}\n", table.maximal_rank);

    // the same number of points squeezed into one fiber of the first
    // projection: one unit of h1 survives along the whole row, and the
    // verdict flips once sections appear there too
    let fiber = ZeroScheme::random_in_fiber(&p1p1, 0, &[5, 1], 3, 42, &field).unwrap();
    let table = regions(&fiber, &default_box(&fiber), &field);
    println!("three points in a single pi_1-fiber:");
    for r in &table.degrees {
        let mark = if r.h0 > 0 && r.h1 > 0 { "  <- h0 and h1 both positive" } else { "" };
        println!(
            "  a = {}  N = {:2}  h0 = {:2}  h1 = {}{}",
            r.a, r.n, r.h0, r.h1, mark
        );
    }
    println!("  maximal rank: {}", table.maximal_rank);
}

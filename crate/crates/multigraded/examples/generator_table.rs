//! Degree-by-degree minimal generators of the multigraded ideal of a set
//! of general points, with the cokernel of one multiplication map shown
//! against its closed-form dimension.
//!
//! Run with: cargo run --release --example generator_table

use multigraded::cohomology::default_box;
use multigraded::generators::{bb1_coker_formula, generator_table, mult_map};
use multigraded::{ComponentKind, MultiIndex, PrimeField, Space, ZeroScheme};

fn main() {
    let field = PrimeField::default();
    let space = Space::new(vec![1, 1]).unwrap();
    let z = 3;
    let scheme = ZeroScheme::random_general(&space, z, ComponentKind::Reduced, 7, &field);

    let table = generator_table(&scheme, &default_box(&scheme), &field);
    println!("{z} general points on {}: ideal generators by degree", space);
    for (a, gens) in table.nonzero() {
        println!("  {a}: {gens} generator(s)");
    }
    println!("  total: {}\n", table.total());

    // one multiplication map in detail
    let a = MultiIndex(vec![1, 1]);
    let mm = mult_map(&scheme, &a, 0, &field);
    println!(
        "multiplication H0(O(eps_1)) (x) H0(I_Z{}) -> H0(I_Z{}):",
        a,
        a.plus_eps(0)
    );
    println!(
        "  source {} -> image {} inside target {}, cokernel {}",
        mm.dim_source, mm.dim_image, mm.dim_target, mm.dim_coker
    );
    println!(
        "  closed form z + (a_1+2)*Delta_1 - 2*Delta = {}",
        bb1_coker_formula(z, &a, 0)
    );
}

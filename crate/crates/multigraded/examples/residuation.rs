//! Residuation of a scheme with respect to a pulled-back hyperplane: the
//! trace/residual degree bookkeeping for each local component kind, checked
//! against conditions-matrix ranks at a high twist.
//!
//! Run with: cargo run --release --example residuation

use multigraded::cohomology::conditions_rank;
use multigraded::scheme::{LocalComponent, Point};
use multigraded::{MultiIndex, PrimeField, Space, ZeroScheme};

fn main() {
    let field = PrimeField::default();
    let space = Space::new(vec![1, 1]).unwrap();
    let pt = Point {
        coords: vec![vec![1, 1], vec![2, 1]],
    };
    // hyperplane x10 = x11 on the first factor passes through the point
    let through: Vec<u64> = vec![1, field.neg(1)];

    let cases: Vec<(&str, LocalComponent)> = vec![
        ("reduced point", LocalComponent::reduced(pt.clone())),
        ("double point", LocalComponent::double(pt.clone())),
        (
            "tangent vector transverse to the divisor",
            LocalComponent::tangent(pt.clone(), vec![1, 0]),
        ),
        (
            "tangent vector inside the divisor",
            LocalComponent::tangent(pt.clone(), vec![0, 1]),
        ),
    ];

    // at a high twist the conditions rank equals the scheme degree, so the
    // rank drop across residuation measures the trace degree exactly
    let high = MultiIndex(vec![6, 6]);
    for (name, comp) in cases {
        let z = ZeroScheme::new(space.clone(), vec![comp], &field).unwrap();
        let res = z.residual(0, &through, &field).unwrap();
        let rank_z = conditions_rank(&z, &high, &field);
        let rank_res = conditions_rank(&res, &high, &field);
        println!(
            "{name}: deg {} -> residual deg {} (trace degree {}; ranks {} -> {})",
            z.degree(),
            res.degree(),
            z.degree() - res.degree(),
            rank_z,
            rank_res,
        );
        assert_eq!(rank_z, z.degree());
        assert_eq!(rank_res, res.degree());
    }

    // a hyperplane missing the support leaves the scheme untouched
    let z = ZeroScheme::new(space, vec![LocalComponent::double(pt)], &field).unwrap();
    let missed = z.residual(0, &[1, 1], &field).unwrap();
    println!(
        "divisor missing the support: degree {} unchanged ({})",
        missed.degree(),
        if missed == z { "same scheme" } else { "changed" }
    );
}

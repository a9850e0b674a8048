//! Exact-arithmetic toolkit for finite zero-dimensional schemes in products
//! of projective spaces `P^{n_1} x ... x P^{n_k}`.
//!
//! The crate computes, over a large prime field used as a genericity proxy
//! for characteristic zero:
//!
//! * multigraded cohomology `h0`/`h1` of twisted ideal sheaves and the
//!   regions where each is positive, with maximal-rank verdicts
//!   ([`cohomology`]);
//! * multiplication maps between graded pieces of the ideal, minimal
//!   generator counts degree by degree, and randomized verification of the
//!   cokernel-dimension formulas ([`generators`]);
//! * section spaces of pulled-back twisted cotangent bundles via the Euler
//!   sequence, with point conditions ([`cotangent`]);
//! * base-locus diagnostics for the linear systems `|I_Z(a)|`
//!   ([`baselocus`]).
//!
//! Schemes are built from reduced points, tangent vectors and double points
//! ([`scheme`]); "general" position is operationalized as uniform random
//! coordinates with explicit seeds, and every genericity-dependent claim is
//! checked across seed campaigns with reported pass rates.
//!
//! See the `examples/` directory for one runnable walk-through per
//! capability, and the `multigraded` binary for the command-line interface.

pub mod baselocus;
pub mod cli;
pub mod cohomology;
pub mod cotangent;
pub mod degree;
pub mod error;
pub mod field;
pub mod generators;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod scheme;

pub use degree::{DegreeBox, MultiIndex};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use ring::Space;
pub use scheme::{ComponentKind, LocalComponent, Point, ZeroScheme};

//! Monomial bases of the multigraded pieces of `K[x_ij]` and evaluation of
//! monomials at points of the multiprojective space.
//!
//! The basis of the piece of multidegree `(a_1,...,a_k)` is enumerated in a
//! fixed order: within each factor the exponent tuples of degree `a_i` run
//! lexicographically with the first variable's exponent descending, and the
//! factors are combined mixed-radix with factor 1 most significant. The
//! order itself is arbitrary; determinism is what matters, and the rank /
//! unrank pair below lets sparse code address basis positions without
//! materializing the list.

use serde::{Deserialize, Serialize};

use crate::degree::MultiIndex;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// The shape `(n_1,...,n_k)` of `X = P^{n_1} x ... x P^{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Space(pub Vec<u32>);

impl Space {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&n| n == 0) {
            return Err(Error::InvalidScheme(format!(
                "space dimensions must be positive, got {dims:?}"
            )));
        }
        Ok(Space(dims))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// `n_i` for the given factor.
    pub fn dim(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `dim X = n_1 + ... + n_k`.
    pub fn total_dim(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of homogeneous coordinates, `sum (n_i + 1)`.
    pub fn coord_count(&self) -> usize {
        self.0.iter().map(|&n| n as usize + 1).sum()
    }

    /// The product of the remaining factors after deleting factor `i`.
    /// The result can be the empty product (k = 0), which only ever appears
    /// internally when restricting to fibers over a `P^n` factor of a
    /// two-factor space with k = 1; callers guard that case.
    pub fn without_factor(&self, i: usize) -> Space {
        let mut dims = self.0.clone();
        dims.remove(i);
        Space(dims)
    }

    /// `N(a) = prod C(n_i + a_i, n_i)`, the dimension of the multidegree-`a`
    /// piece of the coordinate ring.
    pub fn piece_dim(&self, a: &MultiIndex) -> usize {
        assert_eq!(a.len(), self.k(), "degree length mismatch");
        self.0
            .iter()
            .zip(&a.0)
            .map(|(&n, &d)| compositions(d, n as usize + 1))
            .product()
    }
}

impl std::fmt::Display for Space {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dims: Vec<String> = self.0.iter().map(|n| format!("P^{n}")).collect();
        write!(fmt, "{}", dims.join(" x "))
    }
}

/// A monomial of `K[x_ij]`, stored as one exponent tuple per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<Vec<u32>>,
}

impl Monomial {
    /// The multidegree `(sum_j e_1j, ..., sum_j e_kj)`.
    pub fn degree(&self) -> MultiIndex {
        MultiIndex(self.exps.iter().map(|e| e.iter().sum()).collect())
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, e) in self.exps.iter().enumerate() {
            for (j, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !first {
                    write!(fmt, "*")?;
                }
                first = false;
                write!(fmt, "x{}{}", i + 1, j)?;
                if p > 1 {
                    write!(fmt, "^{p}")?;
                }
            }
        }
        if first {
            write!(fmt, "1")?;
        }
        Ok(())
    }
}

/// Number of weak compositions of `d` into `parts` parts: `C(d+parts-1, parts-1)`.
pub fn compositions(d: u32, parts: usize) -> usize {
    binomial(d as usize + parts - 1, parts - 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All monomials of multidegree `a`, in the fixed deterministic order.
pub fn basis(space: &Space, a: &MultiIndex) -> Vec<Monomial> {
    BasisIter::new(space, a).collect()
}

/// Streaming enumeration of the multidegree-`a` monomials.
pub struct BasisIter {
    current: Option<Vec<Vec<u32>>>,
}

impl BasisIter {
    pub fn new(space: &Space, a: &MultiIndex) -> Self {
        assert_eq!(a.len(), space.k(), "degree length mismatch");
        let start = space
            .0
            .iter()
            .zip(&a.0)
            .map(|(&n, &d)| {
                let mut e = vec![0u32; n as usize + 1];
                e[0] = d;
                e
            })
            .collect();
        BasisIter {
            current: Some(start),
        }
    }
}

/// Advances one factor's exponent tuple to its successor; false at the end.
fn next_composition(e: &mut [u32]) -> bool {
    let n = e.len() - 1;
    let Some(i) = (0..n).rev().find(|&i| e[i] > 0) else {
        return false;
    };
    let tail: u32 = e[i + 1..].iter().sum();
    e[i] -= 1;
    for x in e[i + 1..].iter_mut() {
        *x = 0;
    }
    e[i + 1] = tail + 1;
    true
}

impl Iterator for BasisIter {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let exps = self.current.take()?;
        let mut succ = exps.clone();
        // odometer over factors, last factor fastest
        for i in (0..succ.len()).rev() {
            if next_composition(&mut succ[i]) {
                self.current = Some(succ);
                return Some(Monomial { exps });
            }
            let d: u32 = exps[i].iter().sum();
            succ[i].fill(0);
            succ[i][0] = d;
        }
        Some(Monomial { exps })
    }
}

/// Position of one factor's exponent tuple in the per-factor order.
fn composition_rank(e: &[u32]) -> usize {
    let mut rank = 0;
    let mut remaining: u32 = e.iter().sum();
    let mut parts = e.len();
    for &x in e {
        if parts == 1 {
            break;
        }
        // tuples with a larger entry in this slot come first
        for v in x + 1..=remaining {
            rank += compositions(remaining - v, parts - 1);
        }
        remaining -= x;
        parts -= 1;
    }
    rank
}

/// Inverse of [`composition_rank`]: the `rank`-th tuple of degree `d` in
/// `parts` parts.
fn composition_unrank(mut d: u32, parts: usize, mut rank: usize) -> Vec<u32> {
    let mut e = Vec::with_capacity(parts);
    for slot in 0..parts {
        if slot + 1 == parts {
            e.push(d);
            break;
        }
        let mut v = d;
        loop {
            let cnt = compositions(d - v, parts - slot - 1);
            if rank < cnt {
                e.push(v);
                d -= v;
                break;
            }
            rank -= cnt;
            v -= 1;
        }
    }
    e
}

/// The monomial at position `idx` of `basis(space, a)`, without
/// materializing the list.
pub fn monomial_unrank(space: &Space, a: &MultiIndex, mut idx: usize) -> Monomial {
    let sizes: Vec<usize> = space
        .0
        .iter()
        .zip(&a.0)
        .map(|(&n, &d)| compositions(d, n as usize + 1))
        .collect();
    let mut ranks = vec![0usize; sizes.len()];
    for (slot, &size) in sizes.iter().enumerate().rev() {
        ranks[slot] = idx % size;
        idx /= size;
    }
    let exps = ranks
        .into_iter()
        .zip(space.0.iter().zip(&a.0))
        .map(|(r, (&n, &d))| composition_unrank(d, n as usize + 1, r))
        .collect();
    Monomial { exps }
}

/// Position of a monomial in `basis(space, degree(m))`.
pub fn monomial_index(space: &Space, m: &Monomial) -> usize {
    let mut idx = 0;
    for (i, e) in m.exps.iter().enumerate() {
        let d: u32 = e.iter().sum();
        let size = compositions(d, space.dim(i) as usize + 1);
        idx = idx * size + composition_rank(e);
    }
    idx
}

/// Multiplication by the variable `x_ij`; the degree rises by `epsilon_i`.
pub fn mult_by_var(space: &Space, m: &Monomial, i: usize, j: usize) -> Result<Monomial> {
    if j > space.dim(i) as usize {
        return Err(Error::VariableOutOfRange { factor: i, index: j });
    }
    let mut exps = m.exps.clone();
    exps[i][j] += 1;
    Ok(Monomial { exps })
}

/// Value of a monomial at a point given by per-factor coordinate vectors.
pub fn evaluate(m: &Monomial, coords: &[Vec<u64>], field: &PrimeField) -> Result<u64> {
    let mut acc = 1u64;
    for (i, (e, c)) in m.exps.iter().zip(coords).enumerate() {
        assert_eq!(e.len(), c.len(), "coordinate length mismatch");
        if c.iter().all(|&x| x == 0) {
            return Err(Error::ZeroCoordinates(i));
        }
        for (&exp, &x) in e.iter().zip(c) {
            if exp > 0 {
                acc = field.mul(acc, field.pow(x, exp as u64));
            }
        }
    }
    Ok(acc)
}

/// Value of the formal partial derivative `d m / d x_{factor,var}` at a point.
/// Exact even when the coordinate vanishes at the point.
pub fn eval_partial(
    m: &Monomial,
    factor: usize,
    var: usize,
    coords: &[Vec<u64>],
    field: &PrimeField,
) -> u64 {
    let e = m.exps[factor][var];
    if e == 0 {
        return 0;
    }
    let mut acc = field.reduce_i64(e as i64);
    for (i, (exps, c)) in m.exps.iter().zip(coords).enumerate() {
        for (j, (&exp, &x)) in exps.iter().zip(c).enumerate() {
            let exp = if i == factor && j == var { exp - 1 } else { exp };
            if exp > 0 {
                acc = field.mul(acc, field.pow(x, exp as u64));
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn basis_sizes_match_binomials() {
        let x = Space::new(vec![1, 1]).unwrap();
        assert_eq!(basis(&x, &mi(&[2, 2])).len(), 9);
        assert_eq!(basis(&x, &mi(&[0, 0])).len(), 1);
        let y = Space::new(vec![1, 2]).unwrap();
        assert_eq!(basis(&y, &mi(&[1, 2])).len(), 12);
        for a in [mi(&[0, 0]), mi(&[3, 1]), mi(&[2, 4])] {
            assert_eq!(basis(&y, &a).len(), y.piece_dim(&a));
        }
    }

    #[test]
    fn basis_is_duplicate_free_and_indexed_consistently() {
        let x = Space::new(vec![2, 1]).unwrap();
        let a = mi(&[2, 3]);
        let b = basis(&x, &a);
        let mut seen = std::collections::HashSet::new();
        for (idx, m) in b.iter().enumerate() {
            assert_eq!(m.degree(), a);
            assert_eq!(monomial_index(&x, m), idx);
            assert_eq!(&monomial_unrank(&x, &a, idx), m);
            assert!(seen.insert(m.clone()));
        }
    }

    #[test]
    fn mult_by_var_raises_degree() {
        let x = Space::new(vec![1, 1]).unwrap();
        let m = basis(&x, &mi(&[1, 0]))[0].clone(); // x10
        let sq = mult_by_var(&x, &m, 0, 0).unwrap();
        assert_eq!(sq.exps, vec![vec![2, 0], vec![0, 0]]);
        assert_eq!(sq.degree(), mi(&[2, 0]));
        assert!(mult_by_var(&x, &m, 0, 2).is_err());
    }

    #[test]
    fn products_span_the_next_piece() {
        // span{x_ij * m} has full rank N(a + eps_i) on small cases
        let field = PrimeField::default();
        let x = Space::new(vec![1, 2]).unwrap();
        let a = mi(&[1, 1]);
        for i in 0..2 {
            let target = a.plus_eps(i);
            let n_target = x.piece_dim(&target);
            let mut rows = Vec::new();
            for m in basis(&x, &a) {
                for j in 0..=x.dim(i) as usize {
                    let prod = mult_by_var(&x, &m, i, j).unwrap();
                    let mut row = vec![0u64; n_target];
                    row[monomial_index(&x, &prod)] = 1;
                    rows.push(row);
                }
            }
            assert!(rows.len() >= n_target);
            assert_eq!(DenseMatrix::from_rows(rows).rank(&field), n_target);
        }
    }

    #[test]
    fn evaluate_basics() {
        let field = PrimeField::default();
        let x = Space::new(vec![1, 1]).unwrap();
        let one = basis(&x, &mi(&[0, 0]))[0].clone();
        let pt = vec![vec![5, 7], vec![3, 11]];
        assert_eq!(evaluate(&one, &pt, &field).unwrap(), 1);

        let m = basis(&x, &mi(&[1, 1]))[0].clone(); // x10*x20
        assert_eq!(
            evaluate(&m, &vec![vec![1, 0], vec![1, 0]], &field).unwrap(),
            1
        );
        assert!(matches!(
            evaluate(&m, &vec![vec![0, 0], vec![1, 0]], &field),
            Err(Error::ZeroCoordinates(0))
        ));
    }

    #[test]
    fn eval_partial_matches_difference_quotient_on_linear_shift() {
        // d/dx of x^e at t: check against the formal expansion for small exponents
        let field = PrimeField::default();
        let x = Space::new(vec![2]).unwrap();
        let pt = vec![vec![3u64, 5, 1]];
        for m in basis(&x, &mi(&[3])) {
            // derivative in var 1: e1 * x0^e0 x1^(e1-1) x2^e2
            let e = &m.exps[0];
            let expected = if e[1] == 0 {
                0
            } else {
                let mut v = e[1] as u64 % field.modulus();
                v = field.mul(v, field.pow(3, e[0] as u64));
                v = field.mul(v, field.pow(5, e[1] as u64 - 1));
                field.mul(v, field.pow(1, e[2] as u64))
            };
            assert_eq!(eval_partial(&m, 0, 1, &pt, &field), expected);
        }
    }

    proptest! {
        #[test]
        fn evaluate_is_multiplicative(seed in 0u64..200) {
            let field = PrimeField::default();
            let x = Space::new(vec![1, 2]).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pt: Vec<Vec<u64>> = x.0.iter()
                .map(|&n| (0..=n).map(|_| rng.gen_range(1..field.modulus())).collect())
                .collect();
            let b1 = basis(&x, &mi(&[1, 1]));
            let b2 = basis(&x, &mi(&[2, 0]));
            let m1 = &b1[rng.gen_range(0..b1.len())];
            let m2 = &b2[rng.gen_range(0..b2.len())];
            let product = Monomial {
                exps: m1.exps.iter().zip(&m2.exps)
                    .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                    .collect(),
            };
            let lhs = evaluate(&product, &pt, &field).unwrap();
            let rhs = field.mul(
                evaluate(m1, &pt, &field).unwrap(),
                evaluate(m2, &pt, &field).unwrap(),
            );
            prop_assert_eq!(lhs, rhs);
        }
    }
}

//! Dense exact linear algebra over `F_p`: rank, reduced echelon forms,
//! kernel bases, subspace sums and cokernel dimensions.
//!
//! Everything here is deterministic: pivots are chosen as the first nonzero
//! entry in column order, so identical inputs give bit-identical echelon
//! forms. Two extra access patterns matter for the rest of the crate:
//!
//! * [`RowAccumulator`] ranks a matrix presented one row at a time, which
//!   lets callers stream the columns of a huge conditions matrix through its
//!   transpose and stop as soon as the rank is saturated.
//! * [`SparseSpan`] ranks a family of sparse vectors (multiplication-map
//!   images of echelonized kernels are supported on few coordinates).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Row-major dense matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(height * width);
        for r in &rows {
            assert_eq!(r.len(), width, "ragged rows");
            data.extend_from_slice(r);
        }
        DenseMatrix {
            rows: height,
            cols: width,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[u64], field: &PrimeField) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), v, field))
            .collect()
    }

    /// Rank by forward elimination with early exit.
    pub fn rank(&self, field: &PrimeField) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pivot != rank {
                for j in col..m.cols {
                    let tmp = m.get(rank, j);
                    m.set(rank, j, m.get(pivot, j));
                    m.set(pivot, j, tmp);
                }
            }
            let inv = field.inv(m.get(rank, col));
            for r in rank + 1..m.rows {
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                let scale = field.mul(factor, inv);
                m.set(r, col, 0);
                for j in col + 1..m.cols {
                    let v = field.sub(m.get(r, j), field.mul(scale, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, field: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pivot) = (r..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if pivot != r {
                for j in 0..self.cols {
                    let tmp = self.get(r, j);
                    self.set(r, j, self.get(pivot, j));
                    self.set(pivot, j, tmp);
                }
            }
            let inv = field.inv(self.get(r, col));
            for j in col..self.cols {
                let v = field.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, col);
                if factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = field.sub(self.get(i, j), field.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    /// Kernel of the matrix as a subspace of `F_p^cols`.
    ///
    /// Row reduction runs on the column-reversed matrix, so the extracted
    /// kernel vectors come out already in reduced echelon form with strictly
    /// increasing pivots, each supported on at most `rank + 1` coordinates.
    pub fn kernel_basis(&self, field: &PrimeField) -> Subspace {
        let n = self.cols;
        let mut rev = DenseMatrix::zeros(self.rows, n);
        for i in 0..self.rows {
            for j in 0..n {
                rev.set(i, j, self.get(i, n - 1 - j));
            }
        }
        let pivots = rev.rref(field);
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; n];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut rows = Vec::with_capacity(n - pivots.len());
        // Free columns in descending order give ascending leading entries
        // after un-reversing the coordinates.
        for free in (0..n).rev() {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![0u64; n];
            v[n - 1 - free] = 1;
            for (t, &p) in pivots.iter().enumerate() {
                if p < free {
                    let c = rev.get(t, free);
                    if c != 0 {
                        v[n - 1 - p] = field.neg(c);
                    }
                }
            }
            rows.push(v);
        }
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("kernel row nonzero"))
            .collect();
        Subspace {
            ambient: n,
            rows,
            pivots,
        }
    }

    /// The same kernel basis as [`Self::kernel_basis`], emitted as sparse
    /// rows (each vector touches at most `rank + 1` coordinates).
    pub fn kernel_sparse(&self, field: &PrimeField) -> Vec<SparseRow> {
        let n = self.cols;
        let mut rev = DenseMatrix::zeros(self.rows, n);
        for i in 0..self.rows {
            for j in 0..n {
                rev.set(i, j, self.get(i, n - 1 - j));
            }
        }
        let pivots = rev.rref(field);
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; n];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut rows = Vec::with_capacity(n - pivots.len());
        for free in (0..n).rev() {
            if pivot_set[free] {
                continue;
            }
            let mut row: SparseRow = vec![((n - 1 - free) as u32, 1)];
            for (t, &p) in pivots.iter().enumerate().rev() {
                if p < free {
                    let c = rev.get(t, free);
                    if c != 0 {
                        row.push(((n - 1 - p) as u32, field.neg(c)));
                    }
                }
            }
            rows.push(row);
        }
        rows
    }
}

/// Dot product of two equal-length vectors.
#[inline]
pub fn dot(a: &[u64], b: &[u64], field: &PrimeField) -> u64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc: u128 = 0;
    let p2 = (field.modulus() as u128).pow(2);
    for (&x, &y) in a.iter().zip(b) {
        acc += x as u128 * y as u128;
        if acc >= p2 {
            acc -= p2;
        }
    }
    (acc % field.modulus() as u128) as u64
}

/// A linear subspace of `F_p^ambient`, stored as a reduced row echelon
/// basis with strictly increasing pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let id = DenseMatrix::identity(ambient);
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| id.row(i).to_vec()).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonical echelonization of a spanning set.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<u64>>, field: &PrimeField) -> Self {
        let mut acc = RowAccumulator::new(ambient);
        for r in rows {
            assert_eq!(r.len(), ambient);
            acc.offer(r, field);
        }
        acc.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[u64], field: &PrimeField) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, *y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64], field: &PrimeField) -> bool {
        self.reduce(v, field).iter().all(|&x| x == 0)
    }

    /// Echelonized span of the union of two subspaces.
    pub fn sum(&self, other: &Subspace, field: &PrimeField) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        let mut acc = RowAccumulator::new(self.ambient);
        for r in &self.rows {
            acc.offer(r.clone(), field);
        }
        for r in &other.rows {
            acc.offer(r.clone(), field);
        }
        Ok(acc.into_subspace())
    }
}

/// `target_dim - dim(image)`, the cokernel dimension of a map whose image
/// is known inside a `target_dim`-dimensional space.
pub fn coker_dim(target_dim: usize, image: &Subspace) -> Result<usize> {
    if image.ambient_dim() != target_dim {
        return Err(Error::DimensionMismatch {
            left: target_dim,
            right: image.ambient_dim(),
        });
    }
    Ok(target_dim - image.dim())
}

/// Incrementally maintained reduced echelon basis.
///
/// `offer` reduces the candidate against the current basis and inserts it if
/// independent; the final state is the canonical RREF of everything offered,
/// so the result does not depend on insertion order.
#[derive(Debug, Clone)]
pub struct RowAccumulator {
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowAccumulator {
    pub fn new(ambient: usize) -> Self {
        RowAccumulator {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_saturated(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Returns true when the row increased the rank.
    pub fn offer(&mut self, mut row: Vec<u64>, field: &PrimeField) -> bool {
        debug_assert_eq!(row.len(), self.ambient);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = row[p];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(r) {
                    *x = field.sub(*x, field.mul(c, *y));
                }
            }
        }
        let Some(lead) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = field.inv(row[lead]);
        for x in row.iter_mut() {
            *x = field.mul(*x, inv);
        }
        // Back-substitute to keep the basis fully reduced.
        for r in self.rows.iter_mut() {
            let c = r[lead];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(&row) {
                    *x = field.sub(*x, field.mul(c, *y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(u32, u64)>;

/// Echelon span of sparse rows; pivot rows are normalized to leading 1.
#[derive(Debug, Default, Clone)]
pub struct SparseSpan {
    pivots: BTreeMap<u32, SparseRow>,
}

impl SparseSpan {
    pub fn new() -> Self {
        SparseSpan::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Returns true when the row increased the rank.
    pub fn add(&mut self, mut row: SparseRow, field: &PrimeField) -> bool {
        loop {
            let Some(&(lead, coeff)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    let inv = field.inv(coeff);
                    for (_, v) in row.iter_mut() {
                        *v = field.mul(*v, inv);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(pivot) => {
                    row = sparse_axpy(&row, pivot, field.neg(coeff), field);
                }
            }
        }
    }
}

/// `a + scale * b` on sparse rows.
fn sparse_axpy(a: &SparseRow, b: &SparseRow, scale: u64, field: &PrimeField) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, vb))) => {
                if ca < cb {
                    i += 1;
                    (ca, va)
                } else if cb < ca {
                    j += 1;
                    (cb, field.mul(scale, vb))
                } else {
                    i += 1;
                    j += 1;
                    (ca, field.add(va, field.mul(scale, vb)))
                }
            }
            (Some(&(ca, va)), None) => {
                i += 1;
                (ca, va)
            }
            (None, Some(&(cb, vb))) => {
                j += 1;
                (cb, field.mul(scale, vb))
            }
            (None, None) => unreachable!(),
        };
        if next.1 != 0 {
            out.push(next);
        }
    }
    out
}

pub mod rational {
    //! Big-rational cross-check backend: the same elimination over `Q`,
    //! used by tests to confirm that ranks over a large `F_p` agree with
    //! characteristic zero on small integer matrices.

    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;

    pub fn rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let height = m.len();
        let width = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..width {
            if rank == height {
                break;
            }
            let Some(pivot) = (rank..height).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].recip();
            for j in col..width {
                let v = &m[rank][j] * &inv;
                m[rank][j] = v;
            }
            for r in rank + 1..height {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for j in col..width {
                    let v = &m[r][j] - &factor * &m[rank][j];
                    m[r][j] = v;
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn random_matrix(rows: usize, cols: usize, seed: u64, bound: u64) -> DenseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = DenseMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.gen_range(0..bound));
            }
        }
        m
    }

    #[test]
    fn rank_zero_and_identity() {
        assert_eq!(DenseMatrix::zeros(3, 3).rank(&f()), 0);
        assert_eq!(DenseMatrix::identity(4).rank(&f()), 4);
    }

    #[test]
    fn kernel_dims_trivial() {
        assert_eq!(DenseMatrix::identity(3).kernel_basis(&f()).dim(), 0);
        assert_eq!(DenseMatrix::zeros(2, 5).kernel_basis(&f()).dim(), 5);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let field = f();
        for seed in 0..10 {
            let m = random_matrix(4, 9, seed, field.modulus());
            let ker = m.kernel_basis(&field);
            assert_eq!(ker.dim() + m.rank(&field), m.cols());
            for v in ker.basis() {
                assert!(m.mul_vec(v, &field).iter().all(|&x| x == 0));
            }
            // echelon invariants
            for w in ker.pivots().windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let field = f();
        for seed in 0..12 {
            let m = random_matrix(5, 8, seed, 4); // low-entropy entries force rank drops
            assert_eq!(m.rank(&field), m.transpose().rank(&field));
        }
    }

    #[test]
    fn rank_matches_rational_backend() {
        let field = f();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..6)
                .map(|_| (0..8).map(|_| rng.gen_range(-10..=10)).collect())
                .collect();
            let m = DenseMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&x| field.reduce_i64(x)).collect())
                    .collect(),
            );
            assert_eq!(m.rank(&field), rational::rank(&rows));
        }
    }

    #[test]
    fn subspace_sum_examples() {
        let field = f();
        let e1 = Subspace::from_rows(3, vec![vec![1, 0, 0]], &field);
        let e2 = Subspace::from_rows(3, vec![vec![0, 1, 0]], &field);
        assert_eq!(e1.sum(&e1, &field).unwrap().dim(), 1);
        assert_eq!(e1.sum(&e2, &field).unwrap().dim(), 2);
        let bad = Subspace::zero(4);
        assert!(matches!(
            e1.sum(&bad, &field),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coker_dim_examples() {
        let field = f();
        assert_eq!(coker_dim(5, &Subspace::full(5)).unwrap(), 0);
        let one = Subspace::from_rows(3, vec![vec![1, 2, 3]], &field);
        assert_eq!(coker_dim(3, &one).unwrap(), 2);
        assert!(coker_dim(4, &one).is_err());
    }

    #[test]
    fn row_reduction_is_deterministic() {
        let field = f();
        let m = random_matrix(6, 10, 5, field.modulus());
        let mut a = m.clone();
        let mut b = m.clone();
        let pa = a.rref(&field);
        let pb = b.rref(&field);
        assert_eq!(pa, pb);
        assert_eq!(a, b);
    }

    #[test]
    fn sparse_span_agrees_with_dense() {
        let field = f();
        for seed in 0..10 {
            let m = random_matrix(12, 15, seed, 3);
            let mut span = SparseSpan::new();
            for i in 0..m.rows() {
                let sparse: SparseRow = m
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j as u32, v))
                    .collect();
                span.add(sparse, &field);
            }
            assert_eq!(span.rank(), m.rank(&field));
        }
    }

    proptest! {
        #[test]
        fn sum_is_commutative_and_idempotent(seed_a in 0u64..50, seed_b in 0u64..50) {
            let field = f();
            let a = random_matrix(3, 6, seed_a, 5).kernel_basis(&field);
            let b = random_matrix(3, 6, seed_b, 5).kernel_basis(&field);
            let ab = a.sum(&b, &field).unwrap();
            let ba = b.sum(&a, &field).unwrap();
            prop_assert_eq!(&ab, &ba);
            let aa = a.sum(&a, &field).unwrap();
            prop_assert_eq!(&aa, &a);
        }

        #[test]
        fn sum_is_associative(sa in 0u64..30, sb in 0u64..30, sc in 0u64..30) {
            let field = f();
            let a = random_matrix(4, 7, sa, 4).kernel_basis(&field);
            let b = random_matrix(4, 7, sb, 4).kernel_basis(&field);
            let c = random_matrix(4, 7, sc, 4).kernel_basis(&field);
            let left = a.sum(&b, &field).unwrap().sum(&c, &field).unwrap();
            let right = a.sum(&b.sum(&c, &field).unwrap(), &field).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn accumulator_rank_matches_matrix_rank(seed in 0u64..60) {
            let field = f();
            let m = random_matrix(7, 9, seed, 3);
            let mut acc = RowAccumulator::new(9);
            for i in 0..m.rows() {
                acc.offer(m.row(i).to_vec(), &field);
            }
            prop_assert_eq!(acc.rank(), m.rank(&field));
        }
    }
}

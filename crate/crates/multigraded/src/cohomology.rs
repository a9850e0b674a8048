//! Conditions matrices and sheaf cohomology of twisted ideal sheaves of
//! zero-dimensional schemes: `h0`/`h1` at a multidegree, the regions where
//! they are positive, maximal-rank verdicts, monotonicity along immediate
//! descendants and the stabilization of `h1` along one factor.
//!
//! For a twist `a >= 0` the structure sheaf has no `h1`, so both numbers
//! come from one rank: `h0 = N(a) - rank`, `h1 = deg(Z) - rank`, where the
//! conditions matrix evaluates every functional of `Z` (values, directional
//! derivatives, chart partials) on the monomial basis of the piece.
//! Ranks are computed by streaming monomial columns through the transpose,
//! which exits early once the rank saturates against the number of
//! functionals that are not identically zero at the twist.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::degree::{minimal_elements, DegreeBox, MultiIndex};
use crate::field::PrimeField;
use crate::linalg::{DenseMatrix, RowAccumulator, Subspace};
use crate::ring::{BasisIter, Monomial};
use crate::scheme::{ComponentKind, LocalComponent, Point, ZeroScheme};

/// What a conditions row measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalKind {
    /// Value at the support.
    Value,
    /// Derivative along the stored tangent direction.
    DirectionalDerivative,
    /// Chart partial with respect to one non-pivot coordinate.
    Partial { factor: usize, var: usize },
}

/// Row provenance: which component, which functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowLabel {
    pub component: usize,
    pub kind: FunctionalKind,
}

/// The dense conditions matrix of `Z` at twist `a`: one row per functional
/// (total `deg Z`), one column per monomial of the piece (total `N(a)`).
#[derive(Debug, Clone)]
pub struct ConditionsMatrix {
    pub matrix: DenseMatrix,
    pub labels: Vec<RowLabel>,
}

/// Per-point power tables and flattened functionals of a scheme, reusable
/// across the monomials of one twist.
struct FunctionalSet<'a> {
    field: &'a PrimeField,
    /// powers[c][factor][coord][exp]
    powers: Vec<Vec<Vec<Vec<u64>>>>,
    funcs: Vec<(usize, RowLabel, FuncSpec)>,
}

enum FuncSpec {
    Value,
    DirDeriv { weights: Vec<(usize, usize, u64)> },
    Partial { factor: usize, var: usize },
}

impl<'a> FunctionalSet<'a> {
    fn new(z: &ZeroScheme, max_exp: u32, field: &'a PrimeField) -> Self {
        let powers = z
            .components()
            .iter()
            .map(|c| point_powers(&c.point, max_exp, field))
            .collect();
        let mut funcs = Vec::new();
        for (ci, c) in z.components().iter().enumerate() {
            let label = |kind| RowLabel {
                component: ci,
                kind,
            };
            funcs.push((ci, label(FunctionalKind::Value), FuncSpec::Value));
            match c.kind {
                ComponentKind::Reduced => {}
                ComponentKind::Tangent => {
                    let dir = c.direction.as_ref().expect("tangent direction");
                    let weights = c
                        .point
                        .chart_vars()
                        .into_iter()
                        .zip(dir)
                        .filter(|(_, &w)| w != 0)
                        .map(|((f, v), &w)| (f, v, w))
                        .collect();
                    funcs.push((
                        ci,
                        label(FunctionalKind::DirectionalDerivative),
                        FuncSpec::DirDeriv { weights },
                    ));
                }
                ComponentKind::Double => {
                    for (f, v) in c.point.chart_vars() {
                        funcs.push((
                            ci,
                            label(FunctionalKind::Partial { factor: f, var: v }),
                            FuncSpec::Partial { factor: f, var: v },
                        ));
                    }
                }
            }
        }
        FunctionalSet {
            field,
            powers,
            funcs,
        }
    }

    fn len(&self) -> usize {
        self.funcs.len()
    }

    /// Functionals that are not identically zero on the multidegree-`a` piece.
    fn active_indices(&self, a: &MultiIndex) -> Vec<usize> {
        self.funcs
            .iter()
            .enumerate()
            .filter(|(_, (_, _, spec))| match spec {
                FuncSpec::Value => true,
                FuncSpec::Partial { factor, .. } => a.get(*factor) > 0,
                FuncSpec::DirDeriv { weights } => {
                    weights.iter().any(|&(f, _, _)| a.get(f) > 0)
                }
            })
            .map(|(i, _)| i)
            .collect()
    }

    fn eval(&self, func: usize, m: &Monomial) -> u64 {
        let (ci, _, spec) = &self.funcs[func];
        let pows = &self.powers[*ci];
        match spec {
            FuncSpec::Value => self.value(pows, m),
            FuncSpec::Partial { factor, var } => self.partial(pows, m, *factor, *var),
            FuncSpec::DirDeriv { weights } => {
                let mut acc = 0u64;
                for &(f, v, w) in weights {
                    let d = self.partial(pows, m, f, v);
                    if d != 0 {
                        acc = self.field.add(acc, self.field.mul(w, d));
                    }
                }
                acc
            }
        }
    }

    fn value(&self, pows: &[Vec<Vec<u64>>], m: &Monomial) -> u64 {
        let mut acc = 1u64;
        for (i, exps) in m.exps.iter().enumerate() {
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    acc = self.field.mul(acc, pows[i][j][e as usize]);
                }
            }
        }
        acc
    }

    fn partial(&self, pows: &[Vec<Vec<u64>>], m: &Monomial, factor: usize, var: usize) -> u64 {
        let e = m.exps[factor][var];
        if e == 0 {
            return 0;
        }
        let mut acc = self.field.reduce_i64(e as i64);
        for (i, exps) in m.exps.iter().enumerate() {
            for (j, &ej) in exps.iter().enumerate() {
                let ej = if i == factor && j == var { ej - 1 } else { ej };
                if ej > 0 {
                    acc = self.field.mul(acc, pows[i][j][ej as usize]);
                }
            }
        }
        acc
    }
}

fn point_powers(p: &Point, max_exp: u32, field: &PrimeField) -> Vec<Vec<Vec<u64>>> {
    p.coords
        .iter()
        .map(|factor| {
            factor
                .iter()
                .map(|&x| {
                    let mut pw = Vec::with_capacity(max_exp as usize + 1);
                    pw.push(1);
                    for e in 1..=max_exp as usize {
                        pw.push(field.mul(pw[e - 1], x));
                    }
                    pw
                })
                .collect()
        })
        .collect()
}

/// Materializes the full conditions matrix with row labels.
pub fn conditions_matrix(z: &ZeroScheme, a: &MultiIndex, field: &PrimeField) -> ConditionsMatrix {
    let max_exp = a.0.iter().copied().max().unwrap_or(0);
    let funcs = FunctionalSet::new(z, max_exp, field);
    let n = z.space().piece_dim(a);
    let mut matrix = DenseMatrix::zeros(funcs.len(), n);
    for (col, m) in BasisIter::new(z.space(), a).enumerate() {
        for f in 0..funcs.len() {
            matrix.set(f, col, funcs.eval(f, &m));
        }
    }
    let labels = funcs.funcs.iter().map(|(_, l, _)| *l).collect();
    ConditionsMatrix { matrix, labels }
}

/// Rank of the conditions matrix, streaming columns with early exit.
///
/// Columns are visited in a strided permutation rather than basis order:
/// consecutive basis monomials share long exponent prefixes, which keeps
/// derivative functionals identically zero across whole blocks and defeats
/// the early exit; a coprime stride mixes all factors immediately.
pub fn conditions_rank(z: &ZeroScheme, a: &MultiIndex, field: &PrimeField) -> usize {
    let max_exp = a.0.iter().copied().max().unwrap_or(0);
    let funcs = FunctionalSet::new(z, max_exp, field);
    let active = funcs.active_indices(a);
    if active.is_empty() {
        return 0;
    }
    let n = z.space().piece_dim(a);
    let stride = coprime_stride(n);
    let mut acc = RowAccumulator::new(active.len());
    let mut idx = 0usize;
    for _ in 0..n {
        let m = crate::ring::monomial_unrank(z.space(), a, idx);
        let col: Vec<u64> = active.iter().map(|&f| funcs.eval(f, &m)).collect();
        if acc.offer(col, field) && acc.is_saturated() {
            break;
        }
        idx = (idx + stride) % n;
    }
    acc.rank()
}

/// A stride near `0.618 * n` and coprime with `n`, so repeated stepping
/// visits every column exactly once.
fn coprime_stride(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let mut s = (n as f64 * 0.618_033_988_749_894_9) as usize | 1;
    while gcd(s, n) != 1 {
        s += 2;
    }
    s % n
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(h0, h1)` of the ideal sheaf of `Z` twisted by `a`.
pub fn h0_h1(z: &ZeroScheme, a: &MultiIndex, field: &PrimeField) -> (usize, usize) {
    let rank = conditions_rank(z, a, field);
    let n = z.space().piece_dim(a);
    (n - rank, z.degree() - rank)
}

/// The space of multidegree-`a` forms vanishing on `Z`, as the kernel of
/// the conditions matrix inside the monomial-basis coordinates.
pub fn section_space(z: &ZeroScheme, a: &MultiIndex, field: &PrimeField) -> Subspace {
    conditions_matrix(z, a, field).matrix.kernel_basis(field)
}

/// One row of a cohomology table.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DegreeRecord {
    pub a: MultiIndex,
    #[serde(rename = "N")]
    pub n: usize,
    pub h0: usize,
    pub h1: usize,
}

/// `h0`/`h1` over a finite box, the regions `I0`/`I1`, the minimal degrees
/// of `I0` and the maximal-rank verdict for the window.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyTable {
    #[serde(skip)]
    pub space: crate::ring::Space,
    #[serde(skip)]
    pub scheme_id: String,
    #[serde(skip)]
    pub scheme_degree: usize,
    #[serde(skip)]
    pub box_upper: MultiIndex,
    pub degrees: Vec<DegreeRecord>,
    #[serde(skip)]
    pub i0: Vec<MultiIndex>,
    #[serde(skip)]
    pub i1: Vec<MultiIndex>,
    #[serde(rename = "I0min")]
    pub i0_min: Vec<MultiIndex>,
    pub maximal_rank: bool,
}

impl CohomologyTable {
    pub fn lookup(&self, a: &MultiIndex) -> Option<&DegreeRecord> {
        self.degrees.iter().find(|r| &r.a == a)
    }

    /// CSV rendering, one degree per row.
    pub fn to_csv(&self) -> String {
        let k = self.box_upper.len();
        let mut out = String::new();
        for i in 1..=k {
            out.push_str(&format!("a{i},"));
        }
        out.push_str("N,h0,h1\n");
        for r in &self.degrees {
            for x in &r.a.0 {
                out.push_str(&format!("{x},"));
            }
            out.push_str(&format!("{},{},{}\n", r.n, r.h0, r.h1));
        }
        out
    }
}

/// Default window for region computations: `[0, deg Z]^k`, one step wider
/// than the `h1`-vanishing bound `deg Z - 1` so the minimal generators on
/// the coordinate axes are visible in the table.
pub fn default_box(z: &ZeroScheme) -> DegreeBox {
    DegreeBox::cube(z.space().k(), z.degree() as u32)
}

/// Window with `h1 = 0` guaranteed beyond it: `[0, max(deg Z - 1, 0)]^k`.
pub fn h1_window(z: &ZeroScheme) -> DegreeBox {
    DegreeBox::cube(z.space().k(), (z.degree() as u32).saturating_sub(1))
}

/// Full cohomology table over the box. Every degree is computed honestly
/// (no monotonicity shortcuts), so the table can itself be used to test
/// monotonicity claims.
pub fn regions(z: &ZeroScheme, window: &DegreeBox, field: &PrimeField) -> CohomologyTable {
    let all: Vec<MultiIndex> = window.iter().collect();
    let degrees: Vec<DegreeRecord> = all
        .par_iter()
        .map(|a| {
            let (h0, h1) = h0_h1(z, a, field);
            DegreeRecord {
                a: a.clone(),
                n: z.space().piece_dim(a),
                h0,
                h1,
            }
        })
        .collect();
    let i0: Vec<MultiIndex> = degrees
        .iter()
        .filter(|r| r.h0 > 0)
        .map(|r| r.a.clone())
        .collect();
    let i1: Vec<MultiIndex> = degrees
        .iter()
        .filter(|r| r.h1 > 0)
        .map(|r| r.a.clone())
        .collect();
    let maximal_rank = degrees.iter().all(|r| r.h0 == 0 || r.h1 == 0);
    let i0_min = minimal_elements(&i0);
    CohomologyTable {
        space: z.space().clone(),
        scheme_id: z.id(),
        scheme_degree: z.degree(),
        box_upper: window.upper.clone(),
        degrees,
        i0,
        i1,
        i0_min,
        maximal_rank,
    }
}

/// One monotonicity step `a -> a + eps_i`.
#[derive(Debug, Clone, Serialize)]
pub struct H1Step {
    pub a: MultiIndex,
    pub i: usize,
    pub h1_at: usize,
    pub h1_next: usize,
}

/// All `h1` steps inside the box (the far ends reach one past the box).
pub fn h1_steps(z: &ZeroScheme, window: &DegreeBox, field: &PrimeField) -> Vec<H1Step> {
    let extended = DegreeBox::new(MultiIndex(
        window.upper.0.iter().map(|&u| u + 1).collect(),
    ));
    let all: Vec<MultiIndex> = extended.iter().collect();
    let values: BTreeMap<MultiIndex, usize> = all
        .par_iter()
        .map(|a| (a.clone(), h0_h1(z, a, field).1))
        .collect();
    let mut steps = Vec::new();
    for a in window.iter() {
        for i in 0..window.k() {
            let next = a.plus_eps(i);
            steps.push(H1Step {
                h1_at: values[&a],
                h1_next: values[&next],
                a: a.clone(),
                i,
            });
        }
    }
    steps
}

/// Monotonicity report: `h1(a + eps_i) <= h1(a)` is expected everywhere.
#[derive(Debug, Clone, Serialize)]
pub struct MonotoneReport {
    pub checked: usize,
    pub violations: Vec<H1Step>,
}

pub fn check_h1_monotone(z: &ZeroScheme, window: &DegreeBox, field: &PrimeField) -> MonotoneReport {
    let steps = h1_steps(z, window, field);
    let checked = steps.len();
    let violations = steps
        .into_iter()
        .filter(|s| s.h1_next > s.h1_at)
        .collect();
    MonotoneReport {
        checked,
        violations,
    }
}

/// Result of driving `h1` to its limit along one factor direction.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizedH1 {
    /// The stable value of `h1(a + t*eps_i)`.
    pub limit: usize,
    /// First `t` at which the value was accepted as stable.
    pub stabilized_at: u32,
    /// Whether some fiber of `pi_i` carries a trace with `h1 > 0` at the
    /// restricted twist (the independent criterion for `limit > 0`).
    pub fiber_deficient: bool,
    /// Largest trace `h1` over the fibers through the supports.
    pub fiber_h1_max: usize,
}

/// Limit of `h1(I_Z(a + t*eps_i))` for large `t`, with the fiber-trace
/// cross-check. The scan stops once two consecutive values agree and
/// `t >= deg Z` (`h1` is non-increasing along the direction), or as soon
/// as the value hits zero.
pub fn stabilized_h1(z: &ZeroScheme, a: &MultiIndex, i: usize, field: &PrimeField) -> StabilizedH1 {
    let deg = z.degree();
    let mut t: u32 = 0;
    let mut prev = h0_h1(z, &shift(a, i, 0), field).1;
    let limit = loop {
        if prev == 0 {
            break 0;
        }
        t += 1;
        let next = h0_h1(z, &shift(a, i, t), field).1;
        if next == prev && t as usize >= deg {
            break next;
        }
        prev = next;
    };
    let (fiber_deficient, fiber_h1_max) = fiber_trace_h1(z, a, i, field);
    StabilizedH1 {
        limit,
        stabilized_at: t,
        fiber_deficient,
        fiber_h1_max,
    }
}

fn shift(a: &MultiIndex, i: usize, t: u32) -> MultiIndex {
    let mut v = a.0.clone();
    v[i] = a.get(i) + t;
    MultiIndex(v)
}

/// Maximum `h1` of the trace `Z ∩ pi_i^{-1}(p)` over fibers through the
/// supports, at the twist with slot `i` deleted.
///
/// For a single-factor space every fiber is one point and its trace is at
/// most a reduced point, so no fiber is deficient.
pub fn fiber_trace_h1(
    z: &ZeroScheme,
    a: &MultiIndex,
    i: usize,
    field: &PrimeField,
) -> (bool, usize) {
    if z.space().k() == 1 {
        return (false, 0);
    }
    let trace_space = z.space().without_factor(i);
    let trace_twist = a.without_slot(i);
    // group components by the (normalized) factor-i coordinate
    let mut fibers: BTreeMap<Vec<u64>, Vec<&LocalComponent>> = BTreeMap::new();
    for c in z.components() {
        fibers
            .entry(c.point.coords[i].clone())
            .or_default()
            .push(c);
    }
    let offsets = chart_offsets(z.space());
    let slot_range = offsets[i]..offsets[i] + z.space().dim(i) as usize;
    let mut max_h1 = 0;
    for comps in fibers.values() {
        let trace_components: Vec<LocalComponent> = comps
            .iter()
            .map(|c| {
                let point = Point {
                    coords: {
                        let mut v = c.point.coords.clone();
                        v.remove(i);
                        v
                    },
                };
                match c.kind {
                    ComponentKind::Reduced => LocalComponent::reduced(point),
                    ComponentKind::Double => LocalComponent::double(point),
                    ComponentKind::Tangent => {
                        let dir = c.direction.as_ref().expect("tangent direction");
                        let slot_part_zero =
                            dir[slot_range.clone()].iter().all(|&x| x == 0);
                        if slot_part_zero {
                            let mut rest = dir.clone();
                            rest.drain(slot_range.clone());
                            LocalComponent::tangent(point, rest)
                        } else {
                            LocalComponent::reduced(point)
                        }
                    }
                }
            })
            .collect();
        let trace = ZeroScheme::new(trace_space.clone(), trace_components, field)
            .expect("trace supports stay distinct");
        let h1 = h0_h1(&trace, &trace_twist, field).1;
        max_h1 = max_h1.max(h1);
    }
    (max_h1 > 0, max_h1)
}

/// Outcome of the monotonicity / fiber-equality / stabilization campaign.
#[derive(Debug, Clone, Serialize)]
pub struct Prop0bg1Report {
    pub schemes: usize,
    pub steps_checked: usize,
    pub monotone_violations: usize,
    pub fiber_schemes: usize,
    pub fiber_equality_violations: usize,
    pub stabilization_checks: usize,
    pub stabilization_mismatches: usize,
    pub pass: bool,
}

/// Randomized campaign for the three parts of the `h1` step behavior:
/// non-increase along every `+eps_i`, equality along the fiber direction
/// for fiber-contained schemes, and the fiber criterion for a positive
/// stable limit. All three are theorems, so the expected violation count
/// is zero on every instance.
pub fn verify_prop0bg1(
    space: &crate::ring::Space,
    count: usize,
    max_degree: usize,
    base_seed: u64,
    field: &PrimeField,
) -> Prop0bg1Report {
    let k = space.k();
    let mut steps_checked = 0;
    let mut monotone_violations = 0;
    let mut fiber_schemes = 0;
    let mut fiber_equality_violations = 0;
    let mut stabilization_checks = 0;
    let mut stabilization_mismatches = 0;

    for idx in 0..count {
        let seed = base_seed.wrapping_add(idx as u64);
        let deg = 1 + idx % max_degree.max(1);
        let z = ZeroScheme::random_mixed(space, deg, seed, field);
        let window = h1_window(&z);
        let report = check_h1_monotone(&z, &window, field);
        steps_checked += report.checked;
        monotone_violations += report.violations.len();

        for i in 0..k {
            let r = stabilized_h1(&z, &MultiIndex::zero(k), i, field);
            stabilization_checks += 1;
            if (r.limit > 0) != r.fiber_deficient {
                stabilization_mismatches += 1;
            }
        }

        // every third instance also exercises a fiber-contained scheme
        if k >= 2 && idx % 3 == 0 {
            let i = idx % k;
            let mut rng: rand_chacha::ChaCha8Rng =
                rand::SeedableRng::seed_from_u64(seed ^ 0xabcdef);
            let base: Vec<u64> = (0..=space.dim(i)).map(|_| field.random(&mut rng)).collect();
            let base = if base.iter().all(|&x| x == 0) {
                vec![1; space.dim(i) as usize + 1]
            } else {
                base
            };
            let s = 2 + idx % 3;
            if let Ok(zf) = ZeroScheme::random_in_fiber(space, i, &base, s, seed, field) {
                fiber_schemes += 1;
                for step in h1_steps(&zf, &h1_window(&zf), field) {
                    if step.i == i {
                        steps_checked += 1;
                        if step.h1_at != step.h1_next {
                            fiber_equality_violations += 1;
                        }
                    }
                }
                let r = stabilized_h1(&zf, &MultiIndex::zero(k), i, field);
                stabilization_checks += 1;
                if (r.limit > 0) != r.fiber_deficient {
                    stabilization_mismatches += 1;
                }
            }
        }
    }
    Prop0bg1Report {
        schemes: count,
        steps_checked,
        monotone_violations,
        fiber_schemes,
        fiber_equality_violations,
        stabilization_checks,
        stabilization_mismatches,
        pass: monotone_violations == 0
            && fiber_equality_violations == 0
            && stabilization_mismatches == 0,
    }
}

/// Start offsets of each factor's chart coordinates in a direction vector.
fn chart_offsets(space: &crate::ring::Space) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(space.k());
    let mut acc = 0;
    for i in 0..space.k() {
        offsets.push(acc);
        acc += space.dim(i) as usize;
    }
    offsets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::ring::Space;
    use crate::scheme::{ComponentKind, LocalComponent, Point, ZeroScheme};

    fn field() -> PrimeField {
        PrimeField::default()
    }

    fn p11() -> Space {
        Space::new(vec![1, 1]).unwrap()
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn empty_scheme_has_full_sections() {
        let f = field();
        let z = ZeroScheme::empty(p11());
        assert_eq!(h0_h1(&z, &mi(&[2, 2]), &f), (9, 0));
        let table = regions(&z, &DegreeBox::cube(2, 2), &f);
        assert!(table.maximal_rank);
        assert!(table.i1.is_empty());
        assert_eq!(table.i0.len(), 9); // the whole box
    }

    #[test]
    fn double_point_conditions_match_hand_matrix() {
        let f = field();
        let pt = Point {
            coords: vec![vec![1, 0], vec![1, 0]],
        };
        let z = ZeroScheme::new(p11(), vec![LocalComponent::double(pt)], &f).unwrap();
        let cm = conditions_matrix(&z, &mi(&[1, 1]), &f);
        assert_eq!(cm.matrix.rows(), 3);
        assert_eq!(cm.matrix.cols(), 4);
        // chart pivot is coordinate 0 in both factors, so the chart
        // variables are x11 and x21; basis order: x10x20, x10x21, x11x20, x11x21
        let rows: Vec<Vec<i64>> = (0..3)
            .map(|i| cm.matrix.row(i).iter().map(|&x| x as i64).collect())
            .collect();
        assert_eq!(rows[0], vec![1, 0, 0, 0]); // value
        assert_eq!(rows[1], vec![0, 0, 1, 0]); // d/dx11
        assert_eq!(rows[2], vec![0, 1, 0, 0]); // d/dx21
        assert_eq!(rational::rank(&rows), 3);
        let (h0, h1) = h0_h1(&z, &mi(&[1, 1]), &f);
        assert_eq!((h0, h1), (1, 0));
        // surviving section is the product of the two chart coordinates
        let ker = section_space(&z, &mi(&[1, 1]), &f);
        assert_eq!(ker.dim(), 1);
        assert_eq!(ker.basis()[0], vec![0, 0, 0, 1]);
    }

    #[test]
    fn general_points_impose_independent_conditions() {
        let f = field();
        for seed in 0..20 {
            let z = ZeroScheme::random_general(&p11(), 7, ComponentKind::Reduced, seed, &f);
            assert_eq!(h0_h1(&z, &mi(&[2, 2]), &f), (2, 0));
            let z3 = ZeroScheme::random_general(&p11(), 3, ComponentKind::Reduced, seed, &f);
            assert_eq!(h0_h1(&z3, &mi(&[1, 0]), &f), (0, 1));
        }
    }

    #[test]
    fn evaluation_matrix_rank_example() {
        // 7 random points evaluated on the 9 monomials of bidegree (2,2)
        let f = field();
        let z = ZeroScheme::random_general(&p11(), 7, ComponentKind::Reduced, 3, &f);
        let cm = conditions_matrix(&z, &mi(&[2, 2]), &f);
        assert_eq!((cm.matrix.rows(), cm.matrix.cols()), (7, 9));
        assert_eq!(cm.matrix.rank(&f), 7);
    }

    #[test]
    fn one_point_kernel_at_11() {
        let f = field();
        let z = ZeroScheme::random_general(&p11(), 1, ComponentKind::Reduced, 9, &f);
        let ker = section_space(&z, &mi(&[1, 1]), &f);
        assert_eq!(ker.ambient_dim(), 4);
        assert_eq!(ker.dim(), 3);
    }

    #[test]
    fn regions_of_three_general_points() {
        let f = field();
        for seed in [1, 2, 3, 4, 5] {
            let z = ZeroScheme::random_general(&p11(), 3, ComponentKind::Reduced, seed, &f);
            let table = regions(&z, &DegreeBox::cube(2, 3), &f);
            assert!(table.maximal_rank);
            assert_eq!(
                table.i0_min,
                vec![mi(&[0, 3]), mi(&[1, 1]), mi(&[3, 0])]
            );
        }
    }

    #[test]
    fn fiber_scheme_breaks_maximal_rank() {
        let f = field();
        let z = ZeroScheme::random_in_fiber(&p11(), 0, &[5, 1], 3, 8, &f).unwrap();
        for t in 0..=3u32 {
            assert_eq!(h0_h1(&z, &mi(&[t, 1]), &f).1, 1);
        }
        let table = regions(&z, &DegreeBox::cube(2, 3), &f);
        assert!(!table.maximal_rank);
        let rec = table.lookup(&mi(&[3, 1])).unwrap();
        assert!(rec.h0 > 0 && rec.h1 > 0);
    }

    #[test]
    fn euler_identity_and_monotonicity_small_corpus() {
        let f = field();
        let spaces = [p11(), Space::new(vec![1, 2]).unwrap()];
        for seed in 0..30u64 {
            let space = &spaces[(seed % 2) as usize];
            let deg = 1 + (seed % 7) as usize;
            let z = ZeroScheme::random_mixed(space, deg, seed, &f);
            let window = h1_window(&z);
            for a in window.iter() {
                let (h0, h1) = h0_h1(&z, &a, &f);
                let n = z.space().piece_dim(&a);
                assert_eq!(h0 as i64 - h1 as i64, n as i64 - z.degree() as i64);
                assert!(h0 >= n.saturating_sub(z.degree()));
                assert!(h1 >= z.degree().saturating_sub(n));
            }
            let report = check_h1_monotone(&z, &window, &f);
            assert!(report.violations.is_empty(), "seed {seed}");
        }
    }

    #[test]
    fn h1_constant_along_fiber_direction() {
        let f = field();
        let z = ZeroScheme::random_in_fiber(&p11(), 0, &[7, 1], 3, 21, &f).unwrap();
        for s in h1_steps(&z, &DegreeBox::cube(2, 3), &f) {
            if s.i == 0 {
                assert_eq!(s.h1_at, s.h1_next, "step {:?}", s);
            }
        }
    }

    #[test]
    fn stabilization_examples() {
        let f = field();
        // empty scheme stabilizes at zero immediately
        let empty = ZeroScheme::empty(p11());
        let r = stabilized_h1(&empty, &mi(&[0, 0]), 0, &f);
        assert_eq!(r.limit, 0);
        assert!(!r.fiber_deficient);

        // general points never share a fiber
        let z = ZeroScheme::random_general(&p11(), 4, ComponentKind::Reduced, 2, &f);
        let r = stabilized_h1(&z, &mi(&[0, 1]), 0, &f);
        assert_eq!(r.limit, 0);
        assert!(!r.fiber_deficient);

        // 3 points in a pi_1-fiber: the trace on the second factor has
        // degree 3 against N(1) = 2, so one unit of h1 survives forever
        let zf = ZeroScheme::random_in_fiber(&p11(), 0, &[2, 1], 3, 4, &f).unwrap();
        let r = stabilized_h1(&zf, &mi(&[0, 1]), 0, &f);
        assert_eq!(r.limit, 1);
        assert!(r.fiber_deficient);
        assert_eq!(r.fiber_h1_max, 1);
    }

    #[test]
    fn stabilized_limit_matches_fiber_criterion_on_mixed_corpus() {
        let f = field();
        for seed in 0..25u64 {
            let z = ZeroScheme::random_mixed(&p11(), 2 + (seed % 6) as usize, seed, &f);
            for i in 0..2 {
                let r = stabilized_h1(&z, &MultiIndex::zero(2), i, &f);
                assert_eq!(r.limit > 0, r.fiber_deficient, "seed {seed} dir {i}");
            }
        }
    }

    #[test]
    fn h1_vanishes_beyond_ad1_window() {
        let f = field();
        for seed in 0..10u64 {
            let z = ZeroScheme::random_mixed(&p11(), 2 + (seed % 5) as usize, seed + 100, &f);
            let d = z.degree() as u32;
            let corner = MultiIndex(vec![d.saturating_sub(1); 2]);
            assert_eq!(h0_h1(&z, &corner, &f).1, 0, "seed {seed}");
        }
    }

    #[test]
    fn representative_scaling_leaves_cohomology_unchanged() {
        let f = field();
        let raw = vec![vec![3, 7], vec![2, 9]];
        let scaled: Vec<Vec<u64>> = raw
            .iter()
            .map(|v| v.iter().map(|&x| f.mul(x, 1234567)).collect())
            .collect();
        let z1 = ZeroScheme::new(
            p11(),
            vec![LocalComponent::double(Point { coords: raw })],
            &f,
        )
        .unwrap();
        let z2 = ZeroScheme::new(
            p11(),
            vec![LocalComponent::double(Point { coords: scaled })],
            &f,
        )
        .unwrap();
        for a in DegreeBox::cube(2, 3).iter() {
            assert_eq!(h0_h1(&z1, &a, &f), h0_h1(&z2, &a, &f));
        }
    }
}

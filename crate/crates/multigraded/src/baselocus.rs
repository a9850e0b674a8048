//! Base-point diagnostics for the linear systems `|I_Z(a)|`: membership
//! drop tests at probe points, Jacobian spanning tests at the scheme's own
//! supports, and the randomized campaigns behind the scheme-theoretic
//! base-locus statements.
//!
//! Absence of extra base points cannot be proven by sampling; verdicts are
//! explicitly probabilistic, with reported probe counts. Uniform probes
//! are supplemented by forced probes on the fibers through the supports,
//! the one locus the vanishing lemma excludes from its guarantee.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::section_space;
use crate::degree::MultiIndex;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{dot, DenseMatrix, Subspace};
use crate::report::Campaign;
use crate::ring::{basis, evaluate, eval_partial, Monomial, Space};
use crate::scheme::{ComponentKind, Point, ZeroScheme};

/// A linear system `|I_Z(a)|` with its section space precomputed, ready
/// for repeated probe and Jacobian queries.
pub struct LinearSystem<'a> {
    z: &'a ZeroScheme,
    a: MultiIndex,
    monomials: Vec<Monomial>,
    sections: Subspace,
}

impl<'a> LinearSystem<'a> {
    pub fn new(z: &'a ZeroScheme, a: &MultiIndex, field: &PrimeField) -> Self {
        LinearSystem {
            z,
            a: a.clone(),
            monomials: basis(z.space(), a),
            sections: section_space(z, a, field),
        }
    }

    pub fn h0(&self) -> usize {
        self.sections.dim()
    }

    pub fn degree(&self) -> &MultiIndex {
        &self.a
    }

    pub fn sections(&self) -> &Subspace {
        &self.sections
    }

    fn evaluation_row(&self, o: &Point, field: &PrimeField) -> Vec<u64> {
        self.monomials
            .iter()
            .map(|m| evaluate(m, &o.coords, field).expect("probe has nonzero coordinates"))
            .collect()
    }

    /// Whether every section of the system vanishes at `o`. The probe must
    /// avoid the supports of `Z`.
    pub fn is_base_point(&self, o: &Point, field: &PrimeField) -> Result<bool> {
        if self.z.is_support(o, field) {
            return Err(Error::InvalidProbe);
        }
        let row = self.evaluation_row(o, field);
        Ok(self
            .sections
            .basis()
            .iter()
            .all(|v| dot(&row, v, field) == 0))
    }

    /// Rank of the matrix of chart partial derivatives of the section
    /// basis at one support; a full rank `dim X` certifies the component
    /// as a reduced isolated point of the base scheme.
    pub fn jacobian_rank_at(&self, component: usize, field: &PrimeField) -> usize {
        let point = &self.z.components()[component].point;
        let chart = point.chart_vars();
        let rows: Vec<Vec<u64>> = self
            .sections
            .basis()
            .iter()
            .map(|sec| {
                chart
                    .iter()
                    .map(|&(factor, var)| {
                        let mut acc = 0u64;
                        for (col, &coeff) in sec.iter().enumerate() {
                            if coeff != 0 {
                                let d = eval_partial(
                                    &self.monomials[col],
                                    factor,
                                    var,
                                    &point.coords,
                                    field,
                                );
                                if d != 0 {
                                    acc = field.add(acc, field.mul(coeff, d));
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return 0;
        }
        DenseMatrix::from_rows(rows).rank(field)
    }
}

/// Drop-test semantics of the probe: adding the evaluation row at a
/// non-base point lowers `h0` by exactly one.
pub fn probe_base_point(
    z: &ZeroScheme,
    a: &MultiIndex,
    o: &Point,
    field: &PrimeField,
) -> Result<bool> {
    LinearSystem::new(z, a, field).is_base_point(o, field)
}

pub fn jacobian_rank_at(
    z: &ZeroScheme,
    a: &MultiIndex,
    component: usize,
    field: &PrimeField,
) -> usize {
    LinearSystem::new(z, a, field).jacobian_rank_at(component, field)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    SchemeTheoreticEqualsZ,
    ExtraBasePointsFound,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobianEntry {
    pub point: Vec<Vec<u64>>,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeFailure {
    pub point: Vec<Vec<u64>>,
    /// "uniform" or "fiber" depending on how the probe was drawn.
    pub probe_kind: String,
}

/// Outcome of one base-locus instance.
#[derive(Debug, Clone, Serialize)]
pub struct BaseLocusReport {
    pub a: MultiIndex,
    pub h0: usize,
    /// Total probes tested (uniform plus fiber-forced).
    pub probes: usize,
    pub failures: Vec<ProbeFailure>,
    pub jacobian: Vec<JacobianEntry>,
    pub verdict: Verdict,
    /// Probes (off the supports) annihilated by `e` random sections,
    /// `e = min(dim X, h0 floor)`; sampling evidence for the codimension
    /// bound, expected to stay zero.
    pub codim_floor_violations: usize,
    /// Only checked by the one-step campaign: `h0 > dim X`.
    pub h0_exceeds_dim: bool,
}

/// Seed-indexed campaign outcome.
#[derive(Debug, Clone, Serialize)]
pub struct BaseLocusCampaign {
    pub verifier: String,
    pub space: Vec<u32>,
    pub params: serde_json::Value,
    pub seeds_total: usize,
    pub seeds_passed: usize,
    pub threshold: usize,
    pub pass: bool,
    pub reports: Vec<(u64, BaseLocusReport)>,
}

fn random_probe<R: Rng>(
    z: &ZeroScheme,
    rng: &mut R,
    field: &PrimeField,
) -> Point {
    loop {
        let coords: Vec<Vec<u64>> = z
            .space()
            .0
            .iter()
            .map(|&n| loop {
                let v: Vec<u64> = (0..=n).map(|_| field.random(rng)).collect();
                if v.iter().any(|&x| x != 0) {
                    break v;
                }
            })
            .collect();
        let p = Point { coords }.normalize(field).expect("nonzero");
        if !z.is_support(&p, field) {
            return p;
        }
    }
}

/// A probe constrained to the fiber of `pi_i` through one support.
fn fiber_probe<R: Rng>(
    z: &ZeroScheme,
    component: usize,
    factor: usize,
    rng: &mut R,
    field: &PrimeField,
) -> Point {
    loop {
        let mut p = random_probe(z, rng, field);
        p.coords[factor] = z.components()[component].point.coords[factor].clone();
        if !z.is_support(&p, field) {
            return p;
        }
    }
}

struct ProbeConfig {
    uniform: usize,
    per_fiber: usize,
}

fn run_instance(
    z: &ZeroScheme,
    a: &MultiIndex,
    probes: &ProbeConfig,
    require_h0_above_dim: bool,
    seed: u64,
    field: &PrimeField,
) -> BaseLocusReport {
    let sys = LinearSystem::new(z, a, field);
    let dim_x = z.space().total_dim() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);

    let jacobian: Vec<JacobianEntry> = (0..z.components().len())
        .map(|c| JacobianEntry {
            point: z.components()[c].point.coords.clone(),
            rank: sys.jacobian_rank_at(c, field),
        })
        .collect();

    let mut failures = Vec::new();
    let mut probe_count = 0;

    // codimension-floor sections: e random combinations of the basis
    let e = dim_x.min(sys.h0());
    let combos: Vec<Vec<u64>> = (0..e)
        .map(|_| {
            let mut v = vec![0u64; sys.monomials.len()];
            for row in sys.sections.basis() {
                let c = field.random(&mut rng);
                for (x, y) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(c, *y));
                }
            }
            v
        })
        .collect();
    let mut codim_floor_violations = 0;

    for _ in 0..probes.uniform {
        let p = random_probe(z, &mut rng, field);
        probe_count += 1;
        let row = sys.evaluation_row(&p, field);
        if sys.sections.basis().iter().all(|v| dot(&row, v, field) == 0) {
            failures.push(ProbeFailure {
                point: p.coords.clone(),
                probe_kind: "uniform".into(),
            });
        }
        if e > 0 && combos.iter().all(|c| dot(&row, c, field) == 0) {
            codim_floor_violations += 1;
        }
    }
    for c in 0..z.components().len() {
        for factor in 0..z.space().k() {
            for _ in 0..probes.per_fiber {
                let p = fiber_probe(z, c, factor, &mut rng, field);
                probe_count += 1;
                if sys.is_base_point(&p, field).expect("probe off supports") {
                    failures.push(ProbeFailure {
                        point: p.coords.clone(),
                        probe_kind: "fiber".into(),
                    });
                }
            }
        }
    }

    let h0_exceeds_dim = !require_h0_above_dim || sys.h0() > dim_x;
    let verdict = if !failures.is_empty() {
        Verdict::ExtraBasePointsFound
    } else if jacobian.iter().all(|j| j.rank == dim_x) {
        Verdict::SchemeTheoreticEqualsZ
    } else {
        Verdict::Inconclusive
    };
    BaseLocusReport {
        a: a.clone(),
        h0: sys.h0(),
        probes: probe_count,
        failures,
        jacobian,
        verdict,
        codim_floor_violations,
        h0_exceeds_dim,
    }
}

fn campaign_over_seeds(
    verifier: &str,
    space: &Space,
    s: usize,
    degree: &MultiIndex,
    params: serde_json::Value,
    probes: usize,
    require_h0_above_dim: bool,
    campaign: &Campaign,
    field: &PrimeField,
) -> BaseLocusCampaign {
    let config = ProbeConfig {
        uniform: probes,
        per_fiber: 5,
    };
    let reports: Vec<(u64, BaseLocusReport)> = campaign
        .seed_list()
        .par_iter()
        .map(|&seed| {
            let z = ZeroScheme::random_general(space, s, ComponentKind::Reduced, seed, field);
            (
                seed,
                run_instance(&z, degree, &config, require_h0_above_dim, seed, field),
            )
        })
        .collect();
    let seeds_passed = reports
        .iter()
        .filter(|(_, r)| {
            r.verdict == Verdict::SchemeTheoreticEqualsZ
                && r.codim_floor_violations == 0
                && r.h0_exceeds_dim
        })
        .count();
    BaseLocusCampaign {
        verifier: verifier.to_string(),
        space: space.0.clone(),
        params,
        seeds_total: reports.len(),
        seeds_passed,
        threshold: campaign.threshold,
        pass: seeds_passed >= campaign.threshold,
        reports,
    }
}

/// Campaign: a general reduced `Z` of size `s` is the scheme-theoretic
/// base locus of `|I_Z(a)|` when `0 < s < N(a) - dim X` and every `a_i`
/// is positive.
pub fn verify_f3(
    space: &Space,
    s: usize,
    a: &MultiIndex,
    probes: usize,
    campaign: &Campaign,
    field: &PrimeField,
) -> Result<BaseLocusCampaign> {
    if a.0.iter().any(|&x| x == 0) {
        return Err(Error::HypothesisViolation(
            "every slot of the multidegree must be positive".into(),
        ));
    }
    let n = space.piece_dim(a);
    let dim_x = space.total_dim() as usize;
    if s == 0 || n <= dim_x || s >= n - dim_x {
        return Err(Error::HypothesisViolation(format!(
            "need 0 < s < N(a) - dim X = {}, got s = {s}",
            n as i64 - dim_x as i64
        )));
    }
    Ok(campaign_over_seeds(
        "f3",
        space,
        s,
        a,
        serde_json::json!({"s": s, "a": a.0, "probes": probes}),
        probes,
        false,
        campaign,
        field,
    ))
}

/// Campaign for the one-step corollary: the same verdict at `a + eps_i`
/// under the weaker count bound `0 < s < N(a)`, plus the section-count
/// inequality `h0(I_Z(a + eps_i)) > dim X` the proof reduces to.
pub fn verify_f4(
    space: &Space,
    s: usize,
    a: &MultiIndex,
    i: usize,
    probes: usize,
    campaign: &Campaign,
    field: &PrimeField,
) -> Result<BaseLocusCampaign> {
    if a.0.iter().any(|&x| x == 0) {
        return Err(Error::HypothesisViolation(
            "every slot of the multidegree must be positive".into(),
        ));
    }
    if s == 0 || s >= space.piece_dim(a) {
        return Err(Error::HypothesisViolation(format!(
            "need 0 < s < N(a) = {}, got s = {s}",
            space.piece_dim(a)
        )));
    }
    let degree = a.plus_eps(i);
    Ok(campaign_over_seeds(
        "f4",
        space,
        s,
        &degree,
        serde_json::json!({"s": s, "a": a.0, "i": i, "probes": probes}),
        probes,
        true,
        campaign,
        field,
    ))
}

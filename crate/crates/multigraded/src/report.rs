//! Shared report shapes for the verification campaigns.
//!
//! Every verifier emits per-degree records `{a, i, formula, computed,
//! hypothesis_ok, pass}` grouped by seed, plus campaign-level pass rates.
//! Serialization is deterministic: all maps are ordered, no timestamps.

use serde::Serialize;

use crate::degree::MultiIndex;

/// One formula-vs-computation comparison.
#[derive(Debug, Clone, Serialize)]
pub struct FormulaCheck {
    pub a: MultiIndex,
    pub i: usize,
    /// The paper-side prediction (can be negative where a hypothesis fails).
    pub formula: i64,
    /// The independently computed value; absent for logged-only degrees
    /// that were not worth a span computation.
    pub computed: Option<i64>,
    /// Whether the statement's hypothesis held for this degree; checks with
    /// a failed hypothesis are logged but excluded from pass/fail.
    pub hypothesis_ok: bool,
    pub pass: bool,
}

/// All checks carried out for one seed.
#[derive(Debug, Clone, Serialize)]
pub struct SeedRun {
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<FormulaCheck>,
}

/// Extra context for kernel-bundle campaigns.
#[derive(Debug, Clone, Serialize)]
pub struct BundleInfo {
    pub slot: usize,
    pub t: u32,
    pub alpha: usize,
}

/// Campaign summary: per-seed runs and the pass-rate verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub verifier: String,
    pub space: Vec<u32>,
    pub params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleInfo>,
    pub seeds_total: usize,
    pub seeds_passed: usize,
    pub threshold: usize,
    pub pass: bool,
    pub runs: Vec<SeedRun>,
}

impl VerifyReport {
    pub fn new(
        verifier: &str,
        space: Vec<u32>,
        params: serde_json::Value,
        threshold: usize,
        runs: Vec<SeedRun>,
    ) -> Self {
        let seeds_total = runs.len();
        let seeds_passed = runs.iter().filter(|r| r.pass).count();
        VerifyReport {
            verifier: verifier.to_string(),
            space,
            params,
            bundle: None,
            seeds_total,
            seeds_passed,
            threshold,
            pass: seeds_passed >= threshold,
            runs,
        }
    }

    /// Checks whose hypothesis held but whose comparison failed, across seeds.
    pub fn failures(&self) -> Vec<(u64, &FormulaCheck)> {
        self.runs
            .iter()
            .flat_map(|r| {
                r.checks
                    .iter()
                    .filter(|c| c.hypothesis_ok && !c.pass)
                    .map(move |c| (r.seed, c))
            })
            .collect()
    }
}

/// Campaign configuration: seed derivation and the pass threshold.
#[derive(Debug, Clone, Copy)]
pub struct Campaign {
    pub base_seed: u64,
    pub seeds: usize,
    /// Minimum number of passing seeds for an overall pass (default 19/20).
    pub threshold: usize,
}

impl Default for Campaign {
    fn default() -> Self {
        Campaign {
            base_seed: 0,
            seeds: 20,
            threshold: 19,
        }
    }
}

impl Campaign {
    pub fn seed(&self, index: usize) -> u64 {
        self.base_seed.wrapping_add(index as u64)
    }

    pub fn seed_list(&self) -> Vec<u64> {
        (0..self.seeds).map(|i| self.seed(i)).collect()
    }
}

//! Existence of a joint distribution behind given marginal data.
//!
//! Constructive routes ([`fine_build`], [`d_interval`], [`symmetric_e_feasible`])
//! and the independent linear-feasibility oracle ([`lp_feasible`]) live side
//! by side so each can be checked against the other.

mod conjecture;
mod fine;
mod oracle;
mod symmetric;

use serde::{Deserialize, Serialize};

use crate::moments::{neumaier_sum, JointDistribution, FEASIBILITY_TOL};

pub use conjecture::{
    classify_sample, conjecture_check, draw_sample, ConjectureMode, ConjectureReport, Counterexample, SampleClass,
    SampleOutcome,
    BOUNDARY_TOL,
};
pub use fine::{
    c1n_interval, d_interval, fine_build, fine_build_from_moments, max_signed_sum, PairMarginal,
};
pub use oracle::{lp_feasible, lp_feasible_exact, violated_members, EXACT_MAX_TIMES, ORACLE_MAX_TIMES};
pub use symmetric::{symmetric_e_feasible, symmetric_e_feasible_from_moments, SymmetricSolution};

/// A closed interval `[lo, hi]`, empty when `lo > hi + 1e-9`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi + FEASIBILITY_TOL
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo - FEASIBILITY_TOL && x <= self.hi + FEASIBILITY_TOL
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<JointDistribution>,
    /// Identifiers such as `lg4[3]` of family members the data violates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated: Option<Vec<String>>,
    /// Construction stage (number of times) at which an interval was empty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<usize>,
    /// Optimal phase-one infeasibility when the oracle produced the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl FeasibilityVerdict {
    pub(crate) fn feasible(certificate: JointDistribution) -> Self {
        FeasibilityVerdict { feasible: true, certificate: Some(certificate), violated: None, stage: None, residual: None }
    }

    pub(crate) fn infeasible(violated: Vec<String>) -> Self {
        FeasibilityVerdict { feasible: false, certificate: None, violated: Some(violated), stage: None, residual: None }
    }
}

/// Clears entries in `[-1e-9, 0)` and renormalizes. Returns `None` if an
/// entry is more negative than that or the total is not positive.
pub(crate) fn certificate_from(n: usize, mut p: Vec<f64>) -> Option<JointDistribution> {
    if p.iter().any(|v| !v.is_finite() || *v < -FEASIBILITY_TOL) {
        return None;
    }
    p.iter_mut().for_each(|v| *v = v.max(0.0));
    let total = neumaier_sum(p.iter().copied());
    if total <= 0.0 {
        return None;
    }
    p.iter_mut().for_each(|v| *v /= total);
    JointDistribution::new(n, p).ok()
}

//! Random test of the sufficiency conjecture: do the two-time, three-time
//! and n-gon inequalities together guarantee a joint distribution behind
//! the means and all pair correlators?

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::oracle::{lp_feasible, ORACLE_MAX_TIMES};
use crate::error::{Error, Result};
use crate::inequalities::{ngon_family, three_time_complete, two_time_complete, InequalityFamily};
use crate::moments::{check_times, complete_pairs, MomentSpec, Subset};
use crate::par::*;
use crate::rng::stream;

/// Samples with a deciding slack or oracle residual below this magnitude
/// are tallied as boundary cases.
pub const BOUNDARY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureMode {
    /// All means zero; only pair correlators are drawn.
    Symmetric,
    /// Means and pair correlators drawn independently. Exploratory: the
    /// conjecture is only proven in the symmetric case.
    General,
}

impl fmt::Display for ConjectureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureMode::Symmetric => "symmetric",
            ConjectureMode::General => "general",
        })
    }
}

impl FromStr for ConjectureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(ConjectureMode::Symmetric),
            "general" => Ok(ConjectureMode::General),
            other => Err(Error::Unsupported(format!("mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleClass {
    HoldsFeasible,
    FailsInfeasible,
    /// Conditions hold but no joint distribution exists.
    Counterexample,
    /// Conditions fail yet a joint distribution exists; impossible if the
    /// inequalities are necessary, so any hit signals a bug.
    NecessityViolation,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleOutcome {
    pub class: SampleClass,
    /// Largest slack over the whole condition set.
    pub max_slack: f64,
    pub oracle_feasible: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: u64,
    pub spec: MomentSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub mode: ConjectureMode,
    pub samples: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub condition_holds_and_feasible: u64,
    pub condition_fails_and_infeasible: u64,
    pub necessity_violations: u64,
    pub boundary: u64,
    pub boundary_fraction: f64,
    pub counterexamples: Vec<Counterexample>,
}

impl ConjectureReport {
    /// Sum of all buckets; equals `samples`.
    pub fn tally(&self) -> u64 {
        self.condition_holds_and_feasible
            + self.condition_fails_and_infeasible
            + self.necessity_violations
            + self.boundary
            + self.counterexamples.len() as u64
    }
}

/// Sample `index` under `seed`: means (general mode) then the pair
/// correlators in lexicographic order, each uniform on `[-1, 1]`.
pub fn draw_sample(n: usize, seed: u64, index: u64, mode: ConjectureMode) -> Result<MomentSpec> {
    check_times(n, 3)?;
    let mut rng = stream(seed, index);
    let mut entries = Vec::with_capacity(n + n * (n - 1) / 2);
    for i in 1..=n {
        let b = match mode {
            ConjectureMode::Symmetric => 0.0,
            ConjectureMode::General => rng.random_range(-1.0..=1.0),
        };
        entries.push((Subset::single(i), b));
    }
    for p in complete_pairs(n) {
        entries.push((p.subset(), rng.random_range(-1.0..=1.0)));
    }
    MomentSpec::new(n, entries)
}

struct Conditions {
    families: [InequalityFamily; 3],
}

impl Conditions {
    fn new(n: usize) -> Result<Self> {
        Ok(Conditions { families: [two_time_complete(n)?, three_time_complete(n)?, ngon_family(n, false)?] })
    }

    fn max_slack(&self, spec: &MomentSpec) -> Result<f64> {
        let mut worst = f64::NEG_INFINITY;
        for f in &self.families {
            if let Some(s) = f.max_slack(spec)? {
                worst = worst.max(s);
            }
        }
        Ok(worst)
    }
}

fn classify(conditions: &Conditions, spec: &MomentSpec) -> Result<SampleOutcome> {
    let max_slack = conditions.max_slack(spec)?;
    let verdict = lp_feasible(spec)?;
    let residual = verdict.residual.unwrap_or(0.0);
    let holds = max_slack <= 0.0;
    let class = if max_slack.abs() < BOUNDARY_TOL || (!verdict.feasible && residual < BOUNDARY_TOL) {
        SampleClass::Boundary
    } else {
        match (holds, verdict.feasible) {
            (true, true) => SampleClass::HoldsFeasible,
            (false, false) => SampleClass::FailsInfeasible,
            (true, false) => SampleClass::Counterexample,
            (false, true) => SampleClass::NecessityViolation,
        }
    };
    Ok(SampleOutcome { class, max_slack, oracle_feasible: verdict.feasible, residual })
}

/// Evaluates the condition set on `spec` and compares with [`lp_feasible`].
pub fn classify_sample(spec: &MomentSpec) -> Result<SampleOutcome> {
    classify(&Conditions::new(spec.n())?, spec)
}

/// Draws `samples` moment sets and tallies agreement between the condition
/// set and the oracle. Samples are independent, so the tally does not depend
/// on the thread count.
pub fn conjecture_check(n: usize, samples: u64, seed: u64, mode: ConjectureMode) -> Result<ConjectureReport> {
    if !(3..=ORACLE_MAX_TIMES).contains(&n) {
        return Err(Error::TimesOutOfRange { n, min: 3, max: ORACLE_MAX_TIMES });
    }
    if samples == 0 {
        return Err(Error::Precondition("at least one sample".into()));
    }
    let conditions = Conditions::new(n)?;
    let outcomes: Vec<Result<(u64, SampleClass, MomentSpec)>> = (0..samples)
        .into_par_iter()
        .map(|index| {
            let spec = draw_sample(n, seed, index, mode)?;
            let outcome = classify(&conditions, &spec)?;
            Ok((index, outcome.class, spec))
        })
        .collect();

    let mut report = ConjectureReport {
        n,
        mode,
        samples,
        seed,
        rng: "chacha8",
        condition_holds_and_feasible: 0,
        condition_fails_and_infeasible: 0,
        necessity_violations: 0,
        boundary: 0,
        boundary_fraction: 0.0,
        counterexamples: Vec::new(),
    };
    for outcome in outcomes {
        let (index, class, spec) = outcome?;
        match class {
            SampleClass::HoldsFeasible => report.condition_holds_and_feasible += 1,
            SampleClass::FailsInfeasible => report.condition_fails_and_infeasible += 1,
            SampleClass::NecessityViolation => report.necessity_violations += 1,
            SampleClass::Boundary => report.boundary += 1,
            SampleClass::Counterexample => report.counterexamples.push(Counterexample { index, spec }),
        }
    }
    report.boundary_fraction = report.boundary as f64 / samples as f64;
    Ok(report)
}

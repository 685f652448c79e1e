//! Cosine-model correlators `C_ij = cos(omega (t_j - t_i))` and slack sweeps
//! over equally spaced measurement times.
//!
//! Two regimes map a grid value `x` onto the spacing `tau`:
//!
//! * `Extend`: `x` is the spacing itself, so the total window grows with `n`.
//! * `FixedWindow`: `x` is the window `T` and `tau = T / (n - 1)`.
//!
//! The grid is uniform with both endpoints excluded:
//! `x_k = min + k h`, `k = 1..=steps`, `h = (max - min) / (steps + 1)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::{distinct_under_equal_spacing, generate, FamilyKind, LinearInequality};
use crate::moments::{check_times, complete_pairs, CorrelatorSet, MAX_TIMES};
use crate::par::*;

/// Slack above which a grid point counts as violated.
pub const VIOLATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Extend,
    FixedWindow,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Extend => "extend",
            Regime::FixedWindow => "fixed_window",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "extend" => Ok(Regime::Extend),
            "fixed" | "fixed_window" | "fixed-window" => Ok(Regime::FixedWindow),
            other => Err(Error::Unsupported(format!("regime `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinSweepConfig {
    pub n: usize,
    pub omega: f64,
    /// Grid range: spacing (extend) or window (fixed window), in time units.
    pub tau_min: f64,
    pub tau_max: f64,
    pub steps: usize,
    pub regime: Regime,
    pub family: FamilyKind,
}

impl SpinSweepConfig {
    pub const DEFAULT_STEPS: usize = 2048;

    /// `omega = 1` with the default range of the regime.
    pub fn new(n: usize, family: FamilyKind, regime: Regime) -> Self {
        let (tau_min, tau_max) = Self::default_range(regime, 1.0);
        SpinSweepConfig { n, omega: 1.0, tau_min, tau_max, steps: Self::DEFAULT_STEPS, regime, family }
    }

    /// One period `(0, 2 pi / omega)` of spacing for `Extend`; windows
    /// `(0, 7 pi / (4 omega))` for `FixedWindow`.
    pub fn default_range(regime: Regime, omega: f64) -> (f64, f64) {
        match regime {
            Regime::Extend => (0.0, 2.0 * PI / omega),
            Regime::FixedWindow => (0.0, 1.75 * PI / omega),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_times(self.n, 3)?;
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::Precondition(format!("omega must be positive, got {}", self.omega)));
        }
        if !(self.tau_min.is_finite() && self.tau_max.is_finite() && self.tau_min < self.tau_max) {
            return Err(Error::Precondition(format!("empty range ({}, {})", self.tau_min, self.tau_max)));
        }
        if self.steps < 2 {
            return Err(Error::Precondition("at least two grid steps".into()));
        }
        if !matches!(self.family, FamilyKind::Lg | FamilyKind::Ngon) {
            return Err(Error::Unsupported(format!("sweeps of the {} family", self.family.label())));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let h = (self.tau_max - self.tau_min) / (self.steps + 1) as f64;
        (1..=self.steps).map(|k| self.tau_min + k as f64 * h).collect()
    }

    /// Spacing between consecutive times at grid value `x`.
    pub fn spacing(&self, x: f64) -> f64 {
        match self.regime {
            Regime::Extend => x,
            Regime::FixedWindow => x / (self.n - 1) as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub config: SpinSweepConfig,
    pub grid: Vec<f64>,
    /// Distinct members under equal spacing, in family order.
    pub members: Vec<LinearInequality>,
    /// `slacks[m][k]`: slack of member `m` at grid point `k`.
    pub slacks: Vec<Vec<f64>>,
    pub violated: Vec<bool>,
    /// Fraction of grid points with at least one violated member.
    pub nu: f64,
}

impl SweepResult {
    /// Members with positive slack somewhere on the grid.
    pub fn violating_members(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&m| self.slacks[m].iter().any(|s| *s > VIOLATION_TOL)).collect()
    }

    pub fn max_slack(&self) -> f64 {
        self.slacks.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `C_ij = cos(omega (t_j - t_i))` for every pair.
pub fn cosine_correlators(omega: f64, times: &[f64]) -> Result<CorrelatorSet> {
    check_times(times.len(), 2)?;
    if let Some(w) = times.windows(2).find(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Precondition(format!("times must increase strictly: {} then {}", w[0], w[1])));
    }
    let n = times.len();
    let entries = complete_pairs(n).into_iter().map(|p| (p, (omega * (times[p.j - 1] - times[p.i - 1])).cos()));
    CorrelatorSet::from_pairs(n, entries)
}

/// `0, tau, 2 tau, ..., (n - 1) tau`.
pub fn equal_spacing_times(n: usize, tau: f64) -> Vec<f64> {
    (0..n).map(|k| k as f64 * tau).collect()
}

/// Slack of each member for equally spaced times `tau` apart.
pub fn point_slacks(members: &[LinearInequality], omega: f64, tau: f64) -> Vec<f64> {
    members
        .iter()
        .map(|m| {
            m.slack_with(|p| Some((omega * tau * p.gap() as f64).cos()), |_| 0.0)
                .expect("correlators are defined for every pair")
        })
        .collect()
}

fn distinct_members(config: &SpinSweepConfig) -> Result<Vec<LinearInequality>> {
    let family = generate(config.family, config.n, false)?;
    Ok(distinct_under_equal_spacing(&family).members().to_vec())
}

pub fn sweep(config: &SpinSweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let members = distinct_members(config)?;
    let grid = config.grid();
    let per_point: Vec<Vec<f64>> =
        grid.par_iter().map(|&x| point_slacks(&members, config.omega, config.spacing(x))).collect();
    let violated: Vec<bool> = per_point.iter().map(|s| s.iter().any(|v| *v > VIOLATION_TOL)).collect();
    let nu = violated.iter().filter(|v| **v).count() as f64 / grid.len() as f64;
    let slacks = (0..members.len()).map(|m| per_point.iter().map(|s| s[m]).collect()).collect();
    Ok(SweepResult { config: config.clone(), grid, members, slacks, violated, nu })
}

/// `nu(n)` for each `n` in `n_min..=n_max`, with all other settings taken
/// from `base`.
pub fn nu_versus_n(n_min: usize, n_max: usize, base: &SpinSweepConfig) -> Result<Vec<(usize, f64)>> {
    if n_min < 3 || n_max > MAX_TIMES || n_min > n_max {
        return Err(Error::Precondition(format!("need 3 <= n_min <= n_max <= {MAX_TIMES}, got {n_min}..{n_max}")));
    }
    (n_min..=n_max)
        .map(|n| {
            let config = SpinSweepConfig { n, ..base.clone() };
            sweep(&config).map(|r| (n, r.nu))
        })
        .collect()
}

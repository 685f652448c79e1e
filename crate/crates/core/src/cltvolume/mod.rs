//! How much of the correlator hypercube violates a single inequality?
//!
//! Treating each correlator as uniform on `[-1, 1]`, a member with `j` unit
//! coefficients and bound `b` is violated with probability
//! `P(S_j > b)`, `S_j` a sum of `j` uniforms. The central limit theorem
//! gives `V = (1 - erf(sqrt(3/2) b / sqrt(j))) / 2`; Monte Carlo and an
//! exact convolution check it.

mod convolution;
mod erf;

pub use erf::{erf, erfc};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::LinearInequality;
use crate::par::*;
use crate::rng::stream;

/// Largest number of terms the exact convolution accepts.
pub const EXACT_MAX_TERMS: usize = 8;
/// Samples drawn from one RNG stream in [`mc_violation_fraction`].
pub const MC_CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeMethod {
    Clt,
    MonteCarlo,
    ExactConvolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub method: VolumeMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VolumeEstimate {
    fn closed(value: f64, method: VolumeMethod) -> Self {
        VolumeEstimate { value, method, stderr: None, samples: None, seed: None }
    }
}

/// `(1 - erf(sqrt(3/2) b / sqrt(j))) / 2`.
pub fn clt_violation_fraction(b: f64, j: usize) -> Result<VolumeEstimate> {
    if j == 0 {
        return Err(Error::Precondition("at least one term".into()));
    }
    if !b.is_finite() {
        return Err(Error::NonFinite(format!("bound {b}")));
    }
    let arg = (1.5f64).sqrt() * b / (j as f64).sqrt();
    Ok(VolumeEstimate::closed(0.5 * erfc(arg), VolumeMethod::Clt))
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TimesOutOfRange { n, min: 3, max: usize::MAX });
    }
    Ok(())
}

/// LG_n member: `n` terms, bound `n - 2`.
pub fn v_lg(n: usize) -> Result<VolumeEstimate> {
    check_n(n)?;
    clt_violation_fraction((n - 2) as f64, n)
}

/// n-gon member: `n (n - 1) / 2` terms, bound `floor(n / 2)`.
pub fn v_ngon(n: usize) -> Result<VolumeEstimate> {
    check_n(n)?;
    clt_violation_fraction((n / 2) as f64, n * (n - 1) / 2)
}

/// `(1 - erf(sqrt(3) / 2)) / 2`, the large-`n` limit of [`v_ngon`].
pub fn v_ngon_limit() -> f64 {
    0.5 * erfc(3f64.sqrt() / 2.0)
}

/// Fraction of uniform draws (every correlator and mean in `ineq`
/// independent on `[-1, 1]`) with positive slack. Chunk `k` of
/// [`MC_CHUNK`] samples uses stream `k` under `seed`.
pub fn mc_violation_fraction(ineq: &LinearInequality, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample".into()));
    }
    let coeffs: Vec<f64> = ineq
        .terms()
        .map(|(_, c)| f64::from(c))
        .chain(ineq.linear_terms().iter().map(|&(_, c)| f64::from(c)))
        .collect();
    let bound = ineq.bound();
    let chunks = samples.div_ceil(MC_CHUNK);
    let counts: Vec<u64> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = stream(seed, chunk);
            let size = MC_CHUNK.min(samples - chunk * MC_CHUNK);
            let mut hits = 0u64;
            for _ in 0..size {
                let lhs: f64 = coeffs.iter().map(|c| c * rng.random_range(-1.0..=1.0)).sum();
                if lhs > bound {
                    hits += 1;
                }
            }
            hits
        })
        .collect();
    let hits: u64 = counts.iter().sum();
    let p = hits as f64 / samples as f64;
    Ok(VolumeEstimate {
        value: p,
        method: VolumeMethod::MonteCarlo,
        stderr: Some((p * (1.0 - p) / samples as f64).sqrt()),
        samples: Some(samples),
        seed: Some(seed),
    })
}

/// `P(U_1 + ... + U_j > bound)` for uniforms on `[-1, 1]`, in exact
/// rational arithmetic on the binary value of `bound`.
pub fn exact_violation_fraction(bound: f64, j: usize) -> Result<VolumeEstimate> {
    Ok(VolumeEstimate::closed(exact_violation_ratio(bound, j)?.to_f64().unwrap_or(f64::NAN), VolumeMethod::ExactConvolution))
}

/// [`exact_violation_fraction`] as a rational.
pub fn exact_violation_ratio(bound: f64, j: usize) -> Result<BigRational> {
    if j == 0 || j > EXACT_MAX_TERMS {
        return Err(Error::Precondition(format!("exact convolution supports 1..={EXACT_MAX_TERMS} terms, got {j}")));
    }
    let b = BigRational::from_float(bound).ok_or_else(|| Error::NonFinite(format!("bound {bound}")))?;
    // with V = (U + 1) / 2 on [0, 1]: sum U > b  <=>  sum V > (b + j) / 2
    let c = (b + BigRational::from_integer(j.into())) / BigRational::from_integer(2.into());
    Ok(convolution::sum_tail(j, &c))
}

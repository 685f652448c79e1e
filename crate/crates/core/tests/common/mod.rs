#![allow(dead_code)]

use lgfine::feasibility::{fine_build_from_moments, lp_feasible, FeasibilityVerdict, BOUNDARY_TOL};
use lgfine::moments::{chain_pairs, FEASIBILITY_TOL};
use lgfine::rng::StreamRng;
use lgfine::{
    lg_family, marginalize, pairwise_probability, two_time_complete, CorrelatorSet, JointDistribution, MomentSpec,
    Error, Sign, SignVector, Subset,
};
use rand::Rng;

pub fn pair_nonnegative(b_i: f64, b_j: f64, c: f64) -> bool {
    Sign::BOTH
        .iter()
        .all(|&si| Sign::BOTH.iter().all(|&sj| pairwise_probability(b_i, b_j, c, si, sj) >= 0.0))
}

/// Uniform means and chain correlators, redrawn until every fixed pair has a
/// non-negative marginal.
pub fn chain_sample(rng: &mut StreamRng, n: usize) -> (Vec<f64>, CorrelatorSet) {
    loop {
        let means: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let values: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let chain = CorrelatorSet::chain(&values).unwrap();
        if chain_pairs(n).iter().all(|p| pair_nonnegative(means[p.i - 1], means[p.j - 1], chain.get(p.i, p.j).unwrap())) {
            return (means, chain);
        }
    }
}

/// Uniform means and chain correlators with no filtering.
pub fn chain_sample_raw(rng: &mut StreamRng, n: usize) -> (Vec<f64>, CorrelatorSet) {
    let means: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let values: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    (means, CorrelatorSet::chain(&values).unwrap())
}

/// Dense, sparse or vertex-heavy distributions so that samples reach the
/// faces of the polytope as well as its interior.
pub fn random_distribution(rng: &mut StreamRng, n: usize) -> JointDistribution {
    let len = 1usize << n;
    let style = rng.random_range(0..3);
    let mut p: Vec<f64> = match style {
        0 => (0..len).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect(),
        1 => {
            let mut p = vec![0.0; len];
            for _ in 0..rng.random_range(1..=4) {
                p[rng.random_range(0..len)] += rng.random::<f64>() + 1e-3;
            }
            p
        }
        _ => {
            let mut p = vec![0.0; len];
            p[rng.random_range(0..len)] = 1.0;
            p
        }
    };
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    // absorb the rounding into the largest entry
    let drift = 1.0 - p.iter().sum::<f64>();
    let k = (0..len).max_by(|a, b| p[*a].total_cmp(&p[*b])).unwrap();
    p[k] += drift;
    JointDistribution::new(n, p).unwrap()
}

/// Every certificate marginal within `1e-9` of the requested pair data.
pub fn certificate_matches(cert: &JointDistribution, means: &[f64], chain: &CorrelatorSet) -> bool {
    if !cert.is_valid() {
        return false;
    }
    chain.iter().all(|(p, c)| {
        let m = marginalize(cert, &[p.i, p.j]).unwrap();
        Sign::BOTH.iter().all(|&si| {
            Sign::BOTH.iter().all(|&sj| {
                let s = SignVector::new(vec![si, sj]).unwrap();
                (m.prob(&s) - pairwise_probability(means[p.i - 1], means[p.j - 1], c, si, sj)).abs() <= FEASIBILITY_TOL
            })
        })
    })
}

pub fn chain_spec(means: &[f64], chain: &CorrelatorSet) -> MomentSpec {
    MomentSpec::from_marginals(means, chain).unwrap()
}

#[derive(Debug, Default, Clone, Copy)]
pub struct ChainTally {
    pub agree_feasible: usize,
    pub agree_infeasible: usize,
    pub boundary: usize,
    pub disagreements: usize,
    pub bad_certificates: usize,
}

impl ChainTally {
    pub fn total(&self) -> usize {
        self.agree_feasible + self.agree_infeasible + self.boundary + self.disagreements
    }
}

/// Three-way comparison on chain data: the product construction, the LG_n
/// plus fixed-pair two-time conditions, and the oracle.
pub fn chain_trial(means: &[f64], chain: &CorrelatorSet, tally: &mut ChainTally) {
    let n = chain.n();
    let spec = chain_spec(means, chain);
    let lg = lg_family(n).unwrap().max_slack(chain).unwrap().unwrap();
    let two = two_time_complete(n).unwrap();
    let fixed: Vec<Subset> = chain.iter().map(|(p, _)| p.subset()).collect();
    let two_slack = two
        .members()
        .iter()
        .filter(|m| m.terms().all(|(p, _)| fixed.contains(&p.subset())))
        .map(|m| lgfine::evaluate(m, &spec).unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    let slack = lg.max(two_slack);
    let oracle = lp_feasible(&spec).unwrap();
    if slack.abs() < BOUNDARY_TOL || (!oracle.feasible && oracle.residual.unwrap_or(1.0) < BOUNDARY_TOL) {
        tally.boundary += 1;
        return;
    }
    // negative input marginals are rejected up front
    let fine = match fine_build_from_moments(means, chain) {
        Ok(v) => v,
        Err(Error::Precondition(_)) => FeasibilityVerdict { feasible: false, certificate: None, violated: None, stage: None, residual: None },
        Err(e) => panic!("{e}"),
    };
    let cond = slack <= 0.0;
    if fine.feasible == cond && cond == oracle.feasible {
        if cond {
            tally.agree_feasible += 1;
        } else {
            tally.agree_infeasible += 1;
        }
    } else {
        tally.disagreements += 1;
    }
    for v in [&fine, &oracle] {
        if let Some(cert) = &v.certificate {
            if !certificate_matches(cert, means, chain) {
                tally.bad_certificates += 1;
            }
        }
    }
}

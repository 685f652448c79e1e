//! Symmetric case: all odd moments vanish, so for four and five times the
//! only unknowns are the four-point moments.

use super::{certificate_from, FeasibilityVerdict, Interval};
use crate::error::{Error, Result};
use crate::moments::{parity_sign, CorrelatorSet, MomentSpec, PairPattern, EXACT_TOL, FEASIBILITY_TOL};
use crate::simplex::phase_one;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSolution {
    pub verdict: FeasibilityVerdict,
    /// Admissible `E = <Q_1 Q_2 Q_3 Q_4>` (four times only).
    pub e_interval: Option<Interval>,
    /// Chosen four-point moments; for five times `e[k]` omits time `k + 1`.
    pub e: Option<Vec<f64>>,
}

/// `1 + sum_{i<j} C_ij s_i s_j` at every sign vector.
fn pair_part(c: &CorrelatorSet) -> Vec<f64> {
    let n = c.n();
    (0..1usize << n)
        .map(|idx| 1.0 + c.iter().map(|(p, v)| v * parity_sign(((idx >> (p.i - 1)) ^ (idx >> (p.j - 1))) & 1)).sum::<f64>())
        .collect()
}

/// Searches the four-point moments directly: an interval for `E` when
/// `n = 4`, a phase-one solve over `E_1..E_5` when `n = 5`.
pub fn symmetric_e_feasible(correlators: &CorrelatorSet) -> Result<SymmetricSolution> {
    let n = correlators.n();
    if correlators.pattern() != PairPattern::Complete {
        return Err(Error::Precondition("symmetric search needs every pair correlator".into()));
    }
    match n {
        4 => four(correlators),
        5 => five(correlators),
        _ => Err(Error::TimesOutOfRange { n, min: 4, max: 5 }),
    }
}

/// [`symmetric_e_feasible`] on a moment set; fails unless every stored odd
/// moment is zero. Stored even moments beyond the pairs are ignored.
pub fn symmetric_e_feasible_from_moments(spec: &MomentSpec) -> Result<SymmetricSolution> {
    if let Some((s, v)) = spec.iter().find(|(s, v)| s.len() % 2 == 1 && v.abs() > EXACT_TOL) {
        return Err(Error::NonSymmetric(format!("moment ({s}) is {v}")));
    }
    symmetric_e_feasible(&spec.correlators()?)
}

fn four(c: &CorrelatorSet) -> Result<SymmetricSolution> {
    let f = pair_part(c);
    let mut interval = Interval::UNIT;
    for (idx, fs) in f.iter().enumerate() {
        // f(s) + E s_1 s_2 s_3 s_4 >= 0
        if parity_sign(idx) > 0.0 {
            interval.lo = interval.lo.max(-fs);
        } else {
            interval.hi = interval.hi.min(*fs);
        }
    }
    if interval.is_empty() {
        return Ok(SymmetricSolution { verdict: FeasibilityVerdict::infeasible(Vec::new()), e_interval: Some(interval), e: None });
    }
    let e = interval.midpoint();
    let p: Vec<f64> = f.iter().enumerate().map(|(idx, fs)| (fs + e * parity_sign(idx)) / 16.0).collect();
    let cert = certificate_from(4, p).ok_or_else(|| Error::Precondition("negative entry at the midpoint".into()))?;
    Ok(SymmetricSolution { verdict: FeasibilityVerdict::feasible(cert), e_interval: Some(interval), e: Some(vec![e]) })
}

fn five(c: &CorrelatorSet) -> Result<SymmetricSolution> {
    let f = pair_part(c);
    let full = 0b11111;
    // chi_k(s) = product of s_i over i != k
    let chi = |idx: usize, k: usize| parity_sign(idx & (full ^ 1 << k));
    // x_k = E_k + 1 >= 0, slack sigma_s >= 0:
    // sum_k chi_k x_k - sigma_s = sum_k chi_k - f(s)
    let rows = 32;
    let cols = 5 + rows;
    let mut a = vec![vec![0.0; cols]; rows];
    let mut b = vec![0.0; rows];
    for idx in 0..rows {
        for (k, slot) in a[idx].iter_mut().take(5).enumerate() {
            *slot = chi(idx, k);
            b[idx] += *slot;
        }
        a[idx][5 + idx] = -1.0;
        b[idx] -= f[idx];
    }
    let solved = phase_one(&a, &b, 50 * (rows + cols) + 1000)?;
    if solved.infeasibility > FEASIBILITY_TOL {
        let mut verdict = FeasibilityVerdict::infeasible(Vec::new());
        verdict.residual = Some(solved.infeasibility);
        return Ok(SymmetricSolution { verdict, e_interval: None, e: None });
    }
    let e: Vec<f64> = solved.x[..5].iter().map(|x| (x - 1.0).clamp(-1.0, 1.0)).collect();
    let p: Vec<f64> = f
        .iter()
        .enumerate()
        .map(|(idx, fs)| (fs + (0..5).map(|k| e[k] * chi(idx, k)).sum::<f64>()) / 32.0)
        .collect();
    let cert = certificate_from(5, p).ok_or(Error::OracleNonConvergence { iterations: solved.pivots })?;
    let mut verdict = FeasibilityVerdict::feasible(cert);
    verdict.residual = Some(solved.infeasibility.max(0.0));
    Ok(SymmetricSolution { verdict, e_interval: None, e: Some(e) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::lp_feasible;
    use crate::inequalities::{ngon_family, three_time_complete};
    use crate::moments::{moments_from_distribution, Pair, Subset};

    fn complete(n: usize, f: impl Fn(Pair) -> f64) -> CorrelatorSet {
        CorrelatorSet::complete_with(n, f).unwrap()
    }

    fn assert_reproduces(sol: &SymmetricSolution, c: &CorrelatorSet) {
        let cert = sol.verdict.certificate.as_ref().unwrap();
        assert!(cert.is_valid());
        let m = moments_from_distribution(cert, c.n()).unwrap();
        for (p, v) in c.iter() {
            assert!((m.get(p.subset()) - v).abs() < 1e-9);
        }
        for i in 1..=c.n() {
            assert!(m.mean(i).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_correlators() {
        let c4 = complete(4, |_| 0.0);
        let s4 = symmetric_e_feasible(&c4).unwrap();
        assert_eq!(s4.e_interval, Some(Interval::new(-1.0, 1.0)));
        assert_reproduces(&s4, &c4);
        let c5 = complete(5, |_| 0.0);
        let s5 = symmetric_e_feasible(&c5).unwrap();
        assert!(s5.verdict.feasible);
        assert_reproduces(&s5, &c5);
    }

    #[test]
    fn pentagon_violation_is_infeasible() {
        let c = complete(5, |_| -0.5);
        assert!(ngon_family(5, false).unwrap().max_slack(&c).unwrap().unwrap() > 0.0);
        assert!(!symmetric_e_feasible(&c).unwrap().verdict.feasible);
        let spec = MomentSpec::from_marginals(&[0.0; 5], &c).unwrap();
        assert!(!lp_feasible(&spec).unwrap().feasible);
    }

    #[test]
    fn three_time_violation_is_infeasible() {
        let c = complete(4, |p| if p.j <= 3 { -0.5 } else { 0.0 });
        let slack = three_time_complete(4).unwrap().max_slack(&c).unwrap().unwrap();
        assert!((slack - 0.5).abs() < 1e-12);
        assert!(!symmetric_e_feasible(&c).unwrap().verdict.feasible);
    }

    #[test]
    fn rejects_odd_moments_and_bad_sizes() {
        let c = complete(4, |_| 0.1);
        let mut spec = MomentSpec::from_marginals(&[0.0; 4], &c).unwrap();
        assert!(symmetric_e_feasible_from_moments(&spec).is_ok());
        spec.set(Subset::new(&[1, 2, 3], 4).unwrap(), 0.2).unwrap();
        assert!(matches!(symmetric_e_feasible_from_moments(&spec), Err(Error::NonSymmetric(_))));
        assert!(symmetric_e_feasible(&complete(3, |_| 0.0)).is_err());
        assert!(symmetric_e_feasible(&CorrelatorSet::chain(&[0.0; 4]).unwrap()).is_err());
    }

    #[test]
    fn feasible_five_time_point() {
        let c = complete(5, |p| 0.3 - 0.1 * p.gap() as f64);
        let sol = symmetric_e_feasible(&c).unwrap();
        assert!(sol.verdict.feasible);
        assert_reproduces(&sol, &c);
        assert!(sol.e.unwrap().iter().all(|e| e.abs() <= 1.0));
    }
}

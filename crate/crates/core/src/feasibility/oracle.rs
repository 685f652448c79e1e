//! Linear-feasibility oracle: does some `p >= 0` on `{-1,+1}^n` with
//! `sum p = 1` reproduce every fixed moment?

use num_rational::BigRational;

use super::{certificate_from, FeasibilityVerdict};
use crate::error::{Error, Result};
use crate::inequalities::{self, InequalityFamily};
use crate::moments::{check_times, parity_sign, MomentSpec, PairPattern, FEASIBILITY_TOL};
use crate::simplex::{phase_one, refine_basic_solution, LpScalar};

/// Largest `n` the floating oracle accepts.
pub const ORACLE_MAX_TIMES: usize = 12;
/// Largest `n` for exact rational solves.
pub const EXACT_MAX_TIMES: usize = 6;

fn constraint_system<S: LpScalar>(fixed: &MomentSpec) -> (Vec<Vec<S>>, Vec<S>) {
    let cols = 1usize << fixed.n();
    let mut a = vec![vec![S::one(); cols]];
    let mut b = vec![S::one()];
    for (subset, value) in fixed.iter() {
        let mask = subset.mask();
        a.push((0..cols).map(|idx| S::from_f64(parity_sign(idx & mask))).collect());
        b.push(S::from_f64(value));
    }
    (a, b)
}

fn max_pivots(rows: usize, cols: usize) -> usize {
    50 * (rows + cols) + 1000
}

fn max_residual(a: &[Vec<f64>], b: &[f64], x: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, bi)| (row.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() - bi).abs())
        .fold(0.0, f64::max)
}

/// Every stored moment of `fixed` is a constraint; absent subsets are free.
///
/// Infeasible verdicts list the members of the applicable named families
/// (two-time, LG_n for chain data, three-time and n-gon for complete data)
/// that the data violates, when any do.
pub fn lp_feasible(fixed: &MomentSpec) -> Result<FeasibilityVerdict> {
    check_times(fixed.n(), 2).and_then(|_| {
        if fixed.n() > ORACLE_MAX_TIMES {
            Err(Error::TimesOutOfRange { n: fixed.n(), min: 2, max: ORACLE_MAX_TIMES })
        } else {
            Ok(())
        }
    })?;
    let (a, b) = constraint_system::<f64>(fixed);
    let cols = 1usize << fixed.n();
    let solved = phase_one(&a, &b, max_pivots(b.len(), cols))?;
    let residual = solved.infeasibility.max(0.0);
    if residual > FEASIBILITY_TOL {
        let mut verdict = FeasibilityVerdict::infeasible(violated_members(fixed)?);
        verdict.residual = Some(residual);
        return Ok(verdict);
    }
    let refined = refine_basic_solution(&a, &b, &solved.basis);
    let candidates = refined.into_iter().chain(std::iter::once(solved.x));
    let mut best = None;
    for x in candidates {
        if let Some(cert) = certificate_from(fixed.n(), x) {
            let r = max_residual(&a, &b, cert.probabilities());
            if best.as_ref().is_none_or(|(_, br)| r < *br) {
                best = Some((cert, r));
            }
        }
    }
    let (cert, _) = best.ok_or(Error::OracleNonConvergence { iterations: solved.pivots })?;
    let mut verdict = FeasibilityVerdict::feasible(cert);
    verdict.residual = Some(residual);
    Ok(verdict)
}

/// [`lp_feasible`] in exact rational arithmetic on the binary values of the
/// inputs, for adjudicating near-boundary cases.
pub fn lp_feasible_exact(fixed: &MomentSpec) -> Result<FeasibilityVerdict> {
    if fixed.n() > EXACT_MAX_TIMES {
        return Err(Error::TimesOutOfRange { n: fixed.n(), min: 2, max: EXACT_MAX_TIMES });
    }
    let (a, b) = constraint_system::<BigRational>(fixed);
    let cols = 1usize << fixed.n();
    let solved = phase_one(&a, &b, max_pivots(b.len(), cols))?;
    let residual = LpScalar::to_f64(&solved.infeasibility);
    if residual > 0.0 {
        let mut verdict = FeasibilityVerdict::infeasible(violated_members(fixed)?);
        verdict.residual = Some(residual);
        return Ok(verdict);
    }
    let x: Vec<f64> = solved.x.iter().map(LpScalar::to_f64).collect();
    let cert = certificate_from(fixed.n(), x).ok_or(Error::OracleNonConvergence { iterations: solved.pivots })?;
    let mut verdict = FeasibilityVerdict::feasible(cert);
    verdict.residual = Some(0.0);
    Ok(verdict)
}

/// Identifiers of violated members (slack above `1e-9`) of the families
/// that apply to the fixed pairs of `fixed`.
pub fn violated_members(fixed: &MomentSpec) -> Result<Vec<String>> {
    let n = fixed.n();
    let mut families: Vec<InequalityFamily> = Vec::new();
    let two = inequalities::two_time_complete(n)?;
    let mut out = Vec::new();
    // two-time members only where the pair is fixed
    for (k, m) in two.members().iter().enumerate() {
        let (pair, _) = m.terms().next().expect("two-time member has a pair term");
        if fixed.get_stored(pair.subset()).is_some() && inequalities::evaluate(m, fixed)? > FEASIBILITY_TOL {
            out.push(two.member_id(k));
        }
    }
    if n >= 3 {
        if let Ok(pairs) = fixed.correlators() {
            match pairs.pattern() {
                PairPattern::Chain => families.push(inequalities::lg_family(n)?),
                PairPattern::Complete => {
                    families.push(inequalities::three_time_complete(n)?);
                    if n > 3 {
                        families.push(inequalities::ngon_family(n, false)?);
                    }
                }
            }
            for family in &families {
                for (k, m) in family.members().iter().enumerate() {
                    if inequalities::evaluate(m, &pairs)? > FEASIBILITY_TOL {
                        out.push(family.member_id(k));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::{lg_family, max_violation};
    use crate::moments::{marginalize, CorrelatorSet, Subset};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn with_zero_means(c: &CorrelatorSet) -> MomentSpec {
        MomentSpec::from_marginals(&vec![0.0; c.n()], c).unwrap()
    }

    #[test]
    fn zero_moments_are_feasible() {
        let fixed = with_zero_means(&CorrelatorSet::chain(&[0.0; 3]).unwrap());
        let v = lp_feasible(&fixed).unwrap();
        assert!(v.feasible);
        let cert = v.certificate.unwrap();
        assert!(cert.is_valid());
        for i in 1..=3 {
            let m = marginalize(&cert, &[i]).unwrap();
            assert!((m.probabilities()[0] - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn tsirelson_point_is_infeasible() {
        let data = CorrelatorSet::chain(&[0.5, 0.5, -0.5]).unwrap();
        let v = lp_feasible(&with_zero_means(&data)).unwrap();
        assert!(!v.feasible);
        assert!(v.residual.unwrap() > 1e-3);
        // for n = 3 the chain and complete patterns coincide; LG_3 is the
        // three-time family
        let violated = v.violated.unwrap();
        let (k, _) = max_violation(&crate::inequalities::three_time_complete(3).unwrap(), &data).unwrap().unwrap();
        assert!(violated.contains(&format!("three_time3[{k}]")), "{violated:?}");
        assert!(lg_family(3).unwrap().max_slack(&data).unwrap().unwrap() > 0.0);
    }

    #[test]
    fn chsh_point_is_infeasible() {
        let h = FRAC_1_SQRT_2;
        let data = CorrelatorSet::chain(&[h, h, h, -h]).unwrap();
        let v = lp_feasible(&with_zero_means(&data)).unwrap();
        assert!(!v.feasible);
        let violated = v.violated.unwrap();
        assert!(violated.iter().any(|id| id.starts_with("lg4[")), "{violated:?}");
        assert!(!lp_feasible_exact(&with_zero_means(&data)).unwrap().feasible);
    }

    #[test]
    fn certificate_reproduces_the_fixed_moments() {
        let data = CorrelatorSet::chain(&[0.3, -0.2, 0.6, 0.1, -0.4]).unwrap();
        let fixed = MomentSpec::from_marginals(&[0.1, 0.0, -0.2, 0.1, 0.05], &data).unwrap();
        let v = lp_feasible(&fixed).unwrap();
        assert!(v.feasible, "{v:?}");
        let cert = v.certificate.unwrap();
        let m = crate::moments::moments_from_distribution(&cert, 5).unwrap();
        for (s, value) in fixed.iter() {
            assert!((m.get(s) - value).abs() < 1e-9, "{s}");
        }
    }

    #[test]
    fn exact_mode_agrees_on_a_boundary_case() {
        // C_12 = C_23 = 1 forces C_13 = 1; fixing it at 1 is feasible, just.
        let data = CorrelatorSet::chain(&[1.0, 1.0, 1.0]).unwrap();
        let fixed = with_zero_means(&data);
        assert!(lp_feasible(&fixed).unwrap().feasible);
        assert!(lp_feasible_exact(&fixed).unwrap().feasible);
        let mut bad = fixed.clone();
        // C_12 + C_23 - C_13 <= 1 now fails by 1e-6
        bad.set(Subset::pair(1, 3), 1.0 - 1e-6).unwrap();
        assert!(!lp_feasible_exact(&bad).unwrap().feasible);
    }

    #[test]
    fn rejects_large_n() {
        assert!(lp_feasible(&MomentSpec::empty(13).unwrap()).is_err());
        assert!(lp_feasible_exact(&MomentSpec::empty(7).unwrap()).is_err());
    }
}

//! Interval solvers and the iterated product construction
//!
//! ```text
//! p(s_1..s_{k+1}) = p(s_1..s_k) p(s_1, s_k, s_{k+1}) / p(s_1, s_k)
//! ```
//!
//! for chain-pattern data `(1,2), (2,3), ..., (n-1,n), (1,n)`.

use super::{certificate_from, FeasibilityVerdict, Interval};
use crate::error::{Error, Result};
use crate::inequalities::{lg_family, max_violation};
use crate::moments::{
    chain_pairs, check_times, marginalize, pairwise_probability, CorrelatorSet, MomentSpec, Pair, Sign, SignVector,
    FEASIBILITY_TOL,
};

/// Pairwise probabilities for times `pair.i < pair.j`, indexed
/// `[(+,+), (-,+), (+,-), (-,-)]` (bit 0 is `s_i`, bit 1 is `s_j`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMarginal {
    pub pair: Pair,
    pub p: [f64; 4],
}

impl PairMarginal {
    pub fn from_moments(pair: Pair, b_i: f64, b_j: f64, c_ij: f64) -> Self {
        let mut p = [0.0; 4];
        for (k, slot) in p.iter_mut().enumerate() {
            let s_i = if k & 1 == 0 { Sign::Plus } else { Sign::Minus };
            let s_j = if k & 2 == 0 { Sign::Plus } else { Sign::Minus };
            *slot = pairwise_probability(b_i, b_j, c_ij, s_i, s_j);
        }
        PairMarginal { pair, p }
    }

    /// `(<Q_i>, <Q_j>, <Q_i Q_j>)`.
    pub fn moments(&self) -> (f64, f64, f64) {
        let [pp, mp, pm, mm] = self.p;
        (pp - mp + pm - mm, pp + mp - pm - mm, pp - mp - pm + mm)
    }

    fn first_plus(&self) -> f64 {
        self.p[0] + self.p[2]
    }

    fn second_plus(&self) -> f64 {
        self.p[0] + self.p[1]
    }
}

/// Largest `sum a_k v_k` over `a in {+-1}^len` whose number of minus signs
/// is odd (`odd_minus`) or even.
pub fn max_signed_sum(values: &[f64], odd_minus: bool) -> f64 {
    if values.is_empty() {
        return if odd_minus { f64::NEG_INFINITY } else { 0.0 };
    }
    let total: f64 = values.iter().map(|v| v.abs()).sum();
    let minus = values.iter().filter(|v| **v < 0.0).count();
    if (minus % 2 == 1) == odd_minus {
        total
    } else {
        let smallest = values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
        total - 2.0 * smallest
    }
}

fn three_time_a(b: [f64; 3], c12: f64, c13: f64, c23: f64, s: [f64; 3]) -> f64 {
    1.0 + b[0] * s[0] + b[1] * s[1] + b[2] * s[2] + c12 * s[0] * s[1] + c13 * s[0] * s[2] + c23 * s[1] * s[2]
}

/// Admissible `D = <Q_1 Q_2 Q_3>` for fixed means and correlators.
fn d_interval_raw(b: [f64; 3], c12: f64, c13: f64, c23: f64) -> Result<Interval> {
    let pairs = [(0, 1, c12), (0, 2, c13), (1, 2, c23)];
    for (x, y, c) in pairs {
        for si in Sign::BOTH {
            for sj in Sign::BOTH {
                let p = pairwise_probability(b[x], b[y], c, si, sj);
                if p < -FEASIBILITY_TOL || !p.is_finite() {
                    return Err(Error::Precondition(format!(
                        "pairwise probability for times ({}, {}) is {p}",
                        x + 1,
                        y + 1
                    )));
                }
            }
        }
    }
    let mut interval = Interval::UNIT;
    for idx in 0..8 {
        let s = [0, 1, 2].map(|k| if idx >> k & 1 == 0 { 1.0 } else { -1.0 });
        let a = three_time_a(b, c12, c13, c23, s);
        if s[0] * s[1] * s[2] > 0.0 {
            interval.lo = interval.lo.max(-a);
        } else {
            interval.hi = interval.hi.min(a);
        }
    }
    Ok(interval)
}

/// Range of the triple moment `D` keeping the three-time expansion
/// non-negative, intersected with `[-1, 1]`. Non-empty exactly when the four
/// LG_3 inequalities hold.
pub fn d_interval(spec: &MomentSpec) -> Result<Interval> {
    if spec.n() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: spec.n() });
    }
    let b = [spec.mean(1), spec.mean(2), spec.mean(3)];
    d_interval_raw(b, spec.correlator(1, 2), spec.correlator(1, 3), spec.correlator(2, 3))
}

/// Admissible values of the unfixed `C_1m` when extending a distribution on
/// times `1..m` to `m + 1`.
///
/// `chain` holds `C_12, ..., C_(m-1)m` (so `m = chain.len() + 1 >= 3`),
/// `next` is `C_m(m+1)`, `closure` is `C_1(m+1)`, and `b_first`, `b_last`
/// are `B_1`, `B_m`. The result intersects the LG_m bounds, the three-time
/// bounds of the block `(1, m, m+1)` and non-negativity of `p(s_1, s_m)`.
pub fn c1n_interval(chain: &[f64], next: f64, closure: f64, b_first: f64, b_last: f64) -> Interval {
    assert!(chain.len() >= 2, "need at least C_12 and C_23");
    let m = chain.len() + 1;
    let lg_bound = (m - 2) as f64;
    let lg = Interval::new(
        -lg_bound + max_signed_sum(chain, false),
        lg_bound - max_signed_sum(chain, true),
    );
    let three = Interval::new(-1.0 + (next + closure).abs(), 1.0 - (next - closure).abs());
    let pair = Interval::new(-1.0 + (b_first + b_last).abs(), 1.0 - (b_first - b_last).abs());
    lg.intersect(&three).intersect(&pair)
}

fn chain_from_marginals(marginals: &[PairMarginal]) -> Result<(usize, Vec<f64>, CorrelatorSet)> {
    let n = marginals.iter().map(|m| m.pair.j).max().unwrap_or(0);
    check_times(n, 3)?;
    let mut expected = chain_pairs(n);
    expected.sort();
    let mut given: Vec<Pair> = marginals.iter().map(|m| m.pair).collect();
    given.sort();
    if given != expected {
        return Err(Error::Precondition(format!("marginals must cover exactly the chain pairs for n = {n}")));
    }
    for m in marginals {
        let sum: f64 = m.p.iter().sum();
        if m.p.iter().any(|v| !v.is_finite() || *v < -FEASIBILITY_TOL) || (sum - 1.0).abs() > FEASIBILITY_TOL {
            return Err(Error::Precondition(format!(
                "marginal for ({}) is not a probability: {:?}",
                m.pair, m.p
            )));
        }
    }
    // single-time marginals must agree across the pairs that share a time
    let mut plus: Vec<Option<f64>> = vec![None; n + 1];
    for m in marginals {
        for (t, value) in [(m.pair.i, m.first_plus()), (m.pair.j, m.second_plus())] {
            match plus[t] {
                Some(prev) if (prev - value).abs() > FEASIBILITY_TOL => {
                    return Err(Error::IncompatibleMarginals(format!(
                        "P(s_{t} = +1) is {prev} in one pair and {value} in another"
                    )))
                }
                Some(_) => {}
                None => plus[t] = Some(value),
            }
        }
    }
    let means: Vec<f64> = (1..=n).map(|t| 2.0 * plus[t].expect("chain covers every time") - 1.0).collect();
    let entries = marginals.iter().map(|m| (m.pair, m.moments().2.clamp(-1.0, 1.0)));
    let correlators = CorrelatorSet::from_pairs(n, entries)?;
    Ok((n, means, correlators))
}

/// Builds a joint distribution matching chain-pattern pairwise marginals, or
/// reports the first stage whose interval is empty together with the LG
/// members violated at that stage.
///
/// Unfixed `C_1m` are fixed top-down (`m = n-1, ..., 3`) at the midpoint of
/// [`c1n_interval`]; each triple moment at the midpoint of its `D` interval.
/// A zero denominator `p(s_1, s_m)` contributes a zero factor.
pub fn fine_build(marginals: &[PairMarginal]) -> Result<FeasibilityVerdict> {
    let (n, means, correlators) = chain_from_marginals(marginals)?;
    build(n, &means, &correlators, marginals)
}

/// [`fine_build`] on means and chain correlators, via their pairwise
/// probabilities.
pub fn fine_build_from_moments(means: &[f64], chain: &CorrelatorSet) -> Result<FeasibilityVerdict> {
    let n = chain.n();
    if means.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: means.len() });
    }
    let marginals: Vec<PairMarginal> = chain_pairs(n)
        .into_iter()
        .map(|p| {
            let c = chain.get(p.i, p.j).ok_or(Error::MissingCorrelator { i: p.i, j: p.j })?;
            Ok(PairMarginal::from_moments(p, means[p.i - 1], means[p.j - 1], c))
        })
        .collect::<Result<_>>()?;
    fine_build(&marginals)
}

fn empty_stage(stage: usize, chain: &[f64], closure: f64) -> Result<FeasibilityVerdict> {
    let mut values = chain[..stage - 1].to_vec();
    values.push(closure);
    let data = CorrelatorSet::chain(&values)?;
    let family = lg_family(stage)?;
    let mut violated = Vec::new();
    for (k, m) in family.members().iter().enumerate() {
        if crate::inequalities::evaluate(m, &data)? > FEASIBILITY_TOL {
            violated.push(family.member_id(k));
        }
    }
    if violated.is_empty() {
        if let Some((k, _)) = max_violation(&family, &data)? {
            violated.push(family.member_id(k));
        }
    }
    let mut verdict = FeasibilityVerdict::infeasible(violated);
    verdict.stage = Some(stage);
    Ok(verdict)
}

fn build(n: usize, means: &[f64], correlators: &CorrelatorSet, marginals: &[PairMarginal]) -> Result<FeasibilityVerdict> {
    // chain[k] = C_{k+1, k+2}
    let chain: Vec<f64> = (1..n).map(|i| correlators.get(i, i + 1).expect("chain pair")).collect();
    // closure[m] = C_{1m}
    let mut closure = vec![f64::NAN; n + 1];
    closure[n] = correlators.get(1, n).expect("closure pair");
    for m in (3..n).rev() {
        let interval = c1n_interval(&chain[..m - 1], chain[m - 1], closure[m + 1], means[0], means[m - 1]);
        if interval.is_empty() {
            return empty_stage(m + 1, &chain, closure[m + 1]);
        }
        closure[m] = interval.midpoint().clamp(-1.0, 1.0);
    }

    let b = |t: usize| means[t - 1];
    let d = d_interval_raw([b(1), b(2), b(3)], chain[0], closure[3], chain[1])?;
    if d.is_empty() {
        return empty_stage(3, &chain, closure[3]);
    }
    let d = d.midpoint();
    let mut p: Vec<f64> = (0..8)
        .map(|idx| {
            let s = [0, 1, 2].map(|k| if idx >> k & 1 == 0 { 1.0 } else { -1.0 });
            (three_time_a([b(1), b(2), b(3)], chain[0], closure[3], chain[1], s) + d * s[0] * s[1] * s[2]) / 8.0
        })
        .collect();

    for k in 3..n {
        // block (s_1, s_k, s_{k+1})
        let bb = [b(1), b(k), b(k + 1)];
        let (c1k, ckk, c1kk) = (closure[k], chain[k - 1], closure[k + 1]);
        let dk = d_interval_raw(bb, c1k, c1kk, ckk)?;
        if dk.is_empty() {
            return empty_stage(k + 1, &chain, closure[k + 1]);
        }
        let dk = dk.midpoint();
        let mut block = [0.0; 8];
        for (idx, slot) in block.iter_mut().enumerate() {
            let s = [0, 1, 2].map(|q| if idx >> q & 1 == 0 { 1.0 } else { -1.0 });
            *slot = (three_time_a(bb, c1k, c1kk, ckk, s) + dk * s[0] * s[1] * s[2]) / 8.0;
        }
        let pair = PairMarginal::from_moments(Pair::new(1, k), b(1), b(k), c1k);
        let len = 1usize << k;
        let mut next = vec![0.0; len << 1];
        for (idx, value) in p.iter().enumerate() {
            let s1 = idx & 1;
            let sk = (idx >> (k - 1)) & 1;
            let denom = pair.p[s1 | (sk << 1)];
            for sn in 0..2 {
                let factor = if denom <= 1e-15 { 0.0 } else { block[s1 | (sk << 1) | (sn << 2)] / denom };
                next[idx | (sn << k)] = value * factor;
            }
        }
        p = next;
    }

    let cert = certificate_from(n, p)
        .ok_or_else(|| Error::Precondition("construction produced a negative entry".into()))?;
    for m in marginals {
        let got = marginalize(&cert, &[m.pair.i, m.pair.j])?;
        for (k, want) in m.p.iter().enumerate() {
            let s = SignVector::from_index(k, 2);
            if (got.prob(&s) - want).abs() > FEASIBILITY_TOL {
                return Err(Error::Precondition(format!(
                    "construction missed the marginal of ({}) by {}",
                    m.pair,
                    (got.prob(&s) - want).abs()
                )));
            }
        }
    }
    Ok(FeasibilityVerdict::feasible(cert))
}

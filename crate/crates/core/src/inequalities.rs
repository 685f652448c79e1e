//! Inequality families over two-time correlators.
//!
//! Every member is stored in the normalized form
//! `sum_ij c_ij C_ij + sum_i l_i B_i <= bound`, and its slack is
//! `lhs - bound`, so a positive slack is a violation for every family.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::moments::{chain_pairs, check_times, complete_pairs, CorrelatorSet, MomentSpec, Pair};

/// Read access to correlators and single-time means.
pub trait CorrelationData {
    fn times(&self) -> usize;
    fn correlator(&self, pair: Pair) -> Option<f64>;
    /// `<Q_i>`, zero when the data carries no means.
    fn mean(&self, i: usize) -> f64;
}

impl CorrelationData for CorrelatorSet {
    fn times(&self) -> usize {
        self.n()
    }

    fn correlator(&self, pair: Pair) -> Option<f64> {
        self.get(pair.i, pair.j)
    }

    fn mean(&self, _i: usize) -> f64 {
        0.0
    }
}

impl CorrelationData for MomentSpec {
    fn times(&self) -> usize {
        self.n()
    }

    fn correlator(&self, pair: Pair) -> Option<f64> {
        Some(self.correlator(pair.i, pair.j))
    }

    fn mean(&self, i: usize) -> f64 {
        MomentSpec::mean(self, i)
    }
}

/// One inequality `sum c_ij C_ij + sum l_i B_i <= bound`.
///
/// Pairs are kept sorted and may be shared between members of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearInequality {
    pairs: Arc<[Pair]>,
    coeffs: Vec<i8>,
    linear: Vec<(usize, i8)>,
    bound: f64,
}

impl LinearInequality {
    pub fn new(
        terms: impl IntoIterator<Item = (Pair, i8)>,
        linear: impl IntoIterator<Item = (usize, i8)>,
        bound: f64,
    ) -> Result<Self> {
        let mut terms: Vec<(Pair, i8)> = terms.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by_key(|(p, _)| *p);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Precondition("repeated pair in inequality".into()));
        }
        if terms.is_empty() {
            return Err(Error::Precondition("inequality needs a non-zero correlator term".into()));
        }
        let mut linear: Vec<(usize, i8)> = linear.into_iter().filter(|(_, c)| *c != 0).collect();
        linear.sort_by_key(|(i, _)| *i);
        if terms.iter().map(|(_, c)| c).chain(linear.iter().map(|(_, c)| c)).any(|c| c.abs() > 2) {
            return Err(Error::Precondition("coefficients must lie in -2..=2".into()));
        }
        if !bound.is_finite() {
            return Err(Error::NonFinite("bound".into()));
        }
        Ok(LinearInequality {
            pairs: terms.iter().map(|(p, _)| *p).collect(),
            coeffs: terms.iter().map(|(_, c)| *c).collect(),
            linear,
            bound,
        })
    }

    /// `pairs` must be sorted and `coeffs` non-zero.
    fn from_shared(pairs: Arc<[Pair]>, coeffs: Vec<i8>, linear: Vec<(usize, i8)>, bound: f64) -> Self {
        debug_assert_eq!(pairs.len(), coeffs.len());
        debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        LinearInequality { pairs, coeffs, linear, bound }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Pair, i8)> + '_ {
        self.pairs.iter().copied().zip(self.coeffs.iter().copied())
    }

    pub fn linear_terms(&self) -> &[(usize, i8)] {
        &self.linear
    }

    pub fn coefficient(&self, pair: Pair) -> i8 {
        self.pairs
            .binary_search(&pair)
            .map(|k| self.coeffs[k])
            .unwrap_or(0)
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `lhs - bound`, reading correlators through `correlator` and means
    /// through `mean`.
    pub fn slack_with(
        &self,
        mut correlator: impl FnMut(Pair) -> Option<f64>,
        mean: impl Fn(usize) -> f64,
    ) -> Result<f64> {
        let mut lhs = 0.0;
        for (pair, c) in self.terms() {
            let value = correlator(pair).ok_or(Error::MissingCorrelator { i: pair.i, j: pair.j })?;
            lhs += f64::from(c) * value;
        }
        for &(i, l) in &self.linear {
            lhs += f64::from(l) * mean(i);
        }
        Ok(lhs - self.bound)
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i8, name: String| -> fmt::Result {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let sep = if first { "" } else { " " };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            first = false;
            if sign.is_empty() {
                write!(f, "{mag}{name}")
            } else {
                write!(f, "{sep}{sign} {mag}{name}")
            }
        };
        for &(i, l) in &self.linear {
            term(f, l, format!("B{i}"))?;
        }
        for (p, c) in self.terms() {
            term(f, c, format!("C{}{}", p.i, p.j))?;
        }
        write!(f, " <= {}", self.bound)
    }
}

impl Serialize for LinearInequality {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a LinearInequality);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.coeffs.len()))?;
                for (p, c) in self.0.terms() {
                    map.serialize_entry(&p.to_string(), &c)?;
                }
                map.end()
            }
        }
        struct Linear<'a>(&'a [(usize, i8)]);
        impl Serialize for Linear<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (i, c) in self.0 {
                    map.serialize_entry(&i.to_string(), c)?;
                }
                map.end()
            }
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            terms: Terms<'a>,
            #[serde(skip_serializing_if = "is_empty")]
            linear: Linear<'a>,
            bound: f64,
        }
        fn is_empty(l: &Linear<'_>) -> bool {
            l.0.is_empty()
        }
        Repr { terms: Terms(self), linear: Linear(&self.linear), bound: self.bound }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearInequality {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            terms: HashMap<String, i8>,
            #[serde(default)]
            linear: HashMap<String, i8>,
            bound: f64,
        }
        let repr = Repr::deserialize(deserializer)?;
        let max = crate::moments::MAX_TIMES;
        let terms = repr
            .terms
            .iter()
            .map(|(k, c)| Pair::parse(k, max).map(|p| (p, *c)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let linear = repr
            .linear
            .iter()
            .map(|(k, c)| {
                k.parse::<usize>()
                    .ok()
                    .filter(|i| (1..=max).contains(i))
                    .map(|i| (i, *c))
                    .ok_or_else(|| D::Error::custom(format!("bad time index {k:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        LinearInequality::new(terms, linear, repr.bound).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// `LG_n` over the chain correlators.
    Lg,
    /// `n + 2 sum s_i s_j C_ij >= (n mod 2)` over all pairs.
    Ngon,
    /// Every three-time LG inequality over every triple.
    ThreeTime,
    /// Non-negativity of every pairwise probability.
    TwoTime,
}

impl FamilyKind {
    pub fn label(self) -> &'static str {
        match self {
            FamilyKind::Lg => "lg",
            FamilyKind::Ngon => "ngon",
            FamilyKind::ThreeTime => "three_time",
            FamilyKind::TwoTime => "two_time",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lg" => Ok(FamilyKind::Lg),
            "ngon" => Ok(FamilyKind::Ngon),
            "three" | "three_time" => Ok(FamilyKind::ThreeTime),
            "two" | "two_time" => Ok(FamilyKind::TwoTime),
            _ => Err(Error::Unsupported(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityFamily {
    kind: FamilyKind,
    n: usize,
    members: Vec<LinearInequality>,
}

impl InequalityFamily {
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[LinearInequality] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Stable identifier such as `lg4[3]`.
    pub fn member_id(&self, index: usize) -> String {
        format!("{}{}[{}]", self.kind.label(), self.n, index)
    }

    /// Slack of every member, in generation order.
    pub fn slacks(&self, data: &impl CorrelationData) -> Result<Vec<f64>> {
        self.members.iter().map(|m| evaluate(m, data)).collect()
    }

    /// Largest slack over the members, `None` for an empty family.
    pub fn max_slack(&self, data: &impl CorrelationData) -> Result<Option<f64>> {
        Ok(max_violation(self, data)?.map(|(_, s)| s))
    }
}

/// Sorted shared pair list plus the position of each input pair within it.
fn shared_pairs(pairs: &[Pair]) -> (Arc<[Pair]>, Vec<usize>) {
    let mut sorted = pairs.to_vec();
    sorted.sort();
    let position = pairs
        .iter()
        .map(|p| sorted.binary_search(p).expect("pair present"))
        .collect();
    (sorted.into(), position)
}

/// `2^(n-1)` inequalities `sum a_k C_chain_k <= n - 2` with `prod a_k = -1`,
/// over `C_12, ..., C_(n-1)n, C_1n`. Member `m` takes `a_k = -1` exactly
/// when bit `k - 1` of `m` is set (`k < n`); `a_n` fixes the product.
pub fn lg_family(n: usize) -> Result<InequalityFamily> {
    check_times(n, 3)?;
    let (pairs, position) = shared_pairs(&chain_pairs(n));
    let bound = (n - 2) as f64;
    let members = (0..1usize << (n - 1))
        .map(|mask| {
            let mut coeffs = vec![0i8; n];
            let mut product = 1i8;
            for k in 0..n - 1 {
                let a = if mask >> k & 1 == 1 { -1 } else { 1 };
                product *= a;
                coeffs[position[k]] = a;
            }
            coeffs[position[n - 1]] = -product;
            LinearInequality::from_shared(pairs.clone(), coeffs, Vec::new(), bound)
        })
        .collect();
    Ok(InequalityFamily { kind: FamilyKind::Lg, n, members })
}

/// n-gon inequalities, normalized to `-sum s_i s_j C_ij <= floor(n / 2)`.
///
/// With `raw = false` the sign vector has `s_1 = +1` (`s` and `-s` give the
/// same inequality), giving `2^(n-1)` members. With `raw = true` all `2^n`
/// sign vectors are emitted, each inequality twice. Member `m` has
/// `s_k = -1` exactly when bit `k - 2` (canonical) or `k - 1` (raw) is set.
pub fn ngon_family(n: usize, raw: bool) -> Result<InequalityFamily> {
    check_times(n, 3)?;
    let pairs: Arc<[Pair]> = complete_pairs(n).into();
    let bound = (n / 2) as f64;
    let count = if raw { 1usize << n } else { 1usize << (n - 1) };
    let members = (0..count)
        .map(|mask| {
            let signs = ngon_signs(n, mask, raw);
            let coeffs = pairs.iter().map(|p| -signs[p.i - 1] * signs[p.j - 1]).collect();
            LinearInequality::from_shared(pairs.clone(), coeffs, Vec::new(), bound)
        })
        .collect();
    Ok(InequalityFamily { kind: FamilyKind::Ngon, n, members })
}

/// Sign vector (`s_1..s_n` as `+-1`) of n-gon member `index`.
pub fn ngon_signs(n: usize, index: usize, raw: bool) -> Vec<i8> {
    let offset = if raw { 0 } else { 1 };
    (0..n)
        .map(|k| {
            if k < offset || index >> (k - offset) & 1 == 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// `1 + s_i s_j C_ij + s_i s_k C_ik + s_j s_k C_jk >= 0` for every triple
/// `i < j < k` and every sign choice with `s_i = +1`: `4 C(n,3)` members.
pub fn three_time_complete(n: usize) -> Result<InequalityFamily> {
    check_times(n, 3)?;
    let mut members = Vec::with_capacity(2 * n * (n - 1) * (n - 2) / 3);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let pairs: Arc<[Pair]> = vec![Pair::new(i, j), Pair::new(i, k), Pair::new(j, k)].into();
                for mask in 0..4 {
                    let sj: i8 = if mask & 1 == 1 { -1 } else { 1 };
                    let sk: i8 = if mask & 2 == 2 { -1 } else { 1 };
                    let coeffs = vec![-sj, -sk, -sj * sk];
                    members.push(LinearInequality::from_shared(pairs.clone(), coeffs, Vec::new(), 1.0));
                }
            }
        }
    }
    Ok(InequalityFamily { kind: FamilyKind::ThreeTime, n, members })
}

/// `p(s_i, s_j) >= 0` for every pair and sign choice, i.e.
/// `-s_i B_i - s_j B_j - s_i s_j C_ij <= 1`: `2n(n-1)` members.
pub fn two_time_complete(n: usize) -> Result<InequalityFamily> {
    check_times(n, 2)?;
    let mut members = Vec::with_capacity(2 * n * (n - 1));
    for pair in complete_pairs(n) {
        let pairs: Arc<[Pair]> = vec![pair].into();
        for mask in 0..4 {
            let si: i8 = if mask & 1 == 1 { -1 } else { 1 };
            let sj: i8 = if mask & 2 == 2 { -1 } else { 1 };
            members.push(LinearInequality::from_shared(
                pairs.clone(),
                vec![-si * sj],
                vec![(pair.i, -si), (pair.j, -sj)],
                1.0,
            ));
        }
    }
    Ok(InequalityFamily { kind: FamilyKind::TwoTime, n, members })
}

pub fn generate(kind: FamilyKind, n: usize, raw: bool) -> Result<InequalityFamily> {
    match kind {
        FamilyKind::Lg => lg_family(n),
        FamilyKind::Ngon => ngon_family(n, raw),
        FamilyKind::ThreeTime => three_time_complete(n),
        FamilyKind::TwoTime => two_time_complete(n),
    }
}

/// Slack `lhs - bound`; positive means violated.
pub fn evaluate(ineq: &LinearInequality, data: &impl CorrelationData) -> Result<f64> {
    ineq.slack_with(|p| data.correlator(p), |i| data.mean(i))
}

/// Coefficient sum per time gap `j - i` (index `gap - 1`). Two members with
/// equal sums, linear terms and bound have the same slack for every
/// assignment `C_ij = g(j - i)`.
pub fn gap_profile(ineq: &LinearInequality, n: usize) -> Vec<i32> {
    let mut sums = vec![0i32; n.saturating_sub(1)];
    for (p, c) in ineq.terms() {
        sums[p.gap() - 1] += i32::from(c);
    }
    sums
}

/// One representative (the first in generation order) per class of members
/// whose slack agrees for all equally spaced correlator assignments.
pub fn distinct_under_equal_spacing(family: &InequalityFamily) -> InequalityFamily {
    let mut seen = std::collections::HashSet::new();
    let members = family
        .members
        .iter()
        .filter(|m| seen.insert((gap_profile(m, family.n), m.linear.clone(), m.bound.to_bits())))
        .cloned()
        .collect();
    InequalityFamily { kind: family.kind, n: family.n, members }
}

/// Index and slack of the most violated member; ties go to the lowest index.
pub fn max_violation(family: &InequalityFamily, data: &impl CorrelationData) -> Result<Option<(usize, f64)>> {
    let mut best: Option<(usize, f64)> = None;
    for (k, m) in family.members.iter().enumerate() {
        let s = evaluate(m, data)?;
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((k, s));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ineq(terms: &[((usize, usize), i8)], bound: f64) -> LinearInequality {
        LinearInequality::new(terms.iter().map(|&((i, j), c)| (Pair::new(i, j), c)), [], bound).unwrap()
    }

    fn same_set(a: &[LinearInequality], b: &[LinearInequality]) -> bool {
        a.len() == b.len() && a.iter().all(|x| b.contains(x)) && b.iter().all(|x| a.contains(x))
    }

    #[test]
    fn lg3_matches_the_four_three_time_inequalities() {
        let expected = [
            ineq(&[((1, 2), 1), ((1, 3), 1), ((2, 3), -1)], 1.0),
            ineq(&[((1, 2), 1), ((1, 3), -1), ((2, 3), 1)], 1.0),
            ineq(&[((1, 2), -1), ((1, 3), 1), ((2, 3), 1)], 1.0),
            ineq(&[((1, 2), -1), ((1, 3), -1), ((2, 3), -1)], 1.0),
        ];
        assert!(same_set(lg_family(3).unwrap().members(), &expected));
    }

    #[test]
    fn lg4_matches_the_chsh_forms() {
        // -2 <= X <= 2 for each of the four sign patterns with one minus.
        let patterns = [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]];
        let pairs = [(1, 2), (2, 3), (3, 4), (1, 4)];
        let mut expected = Vec::new();
        for pat in patterns {
            for flip in [1i8, -1] {
                let terms: Vec<_> = pairs.iter().zip(pat).map(|(&p, a)| (p, a * flip)).collect();
                expected.push(ineq(&terms, 2.0));
            }
        }
        assert!(same_set(lg_family(4).unwrap().members(), &expected));
    }

    #[test]
    fn family_sizes() {
        for n in 3..=12 {
            assert_eq!(lg_family(n).unwrap().len(), 1 << (n - 1));
            assert_eq!(ngon_family(n, false).unwrap().len(), 1 << (n - 1));
            assert_eq!(ngon_family(n, true).unwrap().len(), 1 << n);
            assert_eq!(three_time_complete(n).unwrap().len(), 2 * n * (n - 1) * (n - 2) / 3);
            assert_eq!(two_time_complete(n).unwrap().len(), 2 * n * (n - 1));
        }
        assert_eq!(two_time_complete(2).unwrap().len(), 4);
        assert_eq!(three_time_complete(4).unwrap().len(), 16);
        assert!(lg_family(2).is_err());
        assert!(ngon_family(21, false).is_err());
    }

    #[test]
    fn lg_members_have_the_stated_shape() {
        for m in lg_family(6).unwrap().members() {
            assert_eq!(m.num_terms(), 6);
            assert_eq!(m.terms().map(|(_, c)| c).product::<i8>(), -1);
            assert_eq!(m.bound(), 4.0);
        }
    }

    #[test]
    fn ngon3_coincides_with_lg3() {
        assert!(same_set(ngon_family(3, false).unwrap().members(), lg_family(3).unwrap().members()));
    }

    #[test]
    fn pentagon_member() {
        // all-plus signs: 2 + sum C_ij >= 0  <=>  -sum C_ij <= 2
        let five = ngon_family(5, false).unwrap();
        let first = &five.members()[0];
        assert_eq!(first.bound(), 2.0);
        assert!(first.terms().all(|(_, c)| c == -1));
        assert_eq!(first.num_terms(), 10);
        // n = 4 has the same functional form
        let fam4 = ngon_family(4, false).unwrap();
        let four = &fam4.members()[0];
        assert_eq!(four.bound(), 2.0);
        assert!(four.terms().all(|(_, c)| c == -1));
    }

    #[test]
    fn raw_ngon_emits_each_inequality_twice() {
        let raw = ngon_family(5, true).unwrap();
        let canonical = ngon_family(5, false).unwrap();
        for m in canonical.members() {
            assert_eq!(raw.members().iter().filter(|r| *r == m).count(), 2);
        }
    }

    #[test]
    fn two_time_examples() {
        let data = MomentSpec::new(
            3,
            [
                (crate::moments::Subset::pair(1, 2), -0.5),
                (crate::moments::Subset::pair(2, 3), -0.5),
                (crate::moments::Subset::pair(1, 3), -0.5),
            ],
        )
        .unwrap();
        for m in two_time_complete(3).unwrap().members() {
            // satisfied with margin: 1 +- 1/2 >= 1/2
            assert!(evaluate(m, &data).unwrap() <= -0.5 + 1e-15);
        }
    }

    #[test]
    fn evaluate_examples() {
        let tsirelson = CorrelatorSet::chain(&[0.5, 0.5, -0.5]).unwrap();
        let m = ineq(&[((1, 2), 1), ((2, 3), 1), ((1, 3), -1)], 1.0);
        assert_abs_diff_eq!(evaluate(&m, &tsirelson).unwrap(), 0.5, epsilon = 1e-15);

        let zero = CorrelatorSet::chain(&[0.0; 4]).unwrap();
        for m in lg_family(4).unwrap().members() {
            assert_eq!(evaluate(m, &zero).unwrap(), -2.0);
        }

        let h = FRAC_1_SQRT_2;
        let chsh = CorrelatorSet::chain(&[h, h, h, -h]).unwrap();
        let m = ineq(&[((1, 2), 1), ((2, 3), 1), ((3, 4), 1), ((1, 4), -1)], 2.0);
        assert_abs_diff_eq!(evaluate(&m, &chsh).unwrap(), 2.0 * 2f64.sqrt() - 2.0, epsilon = 1e-12);

        let missing = CorrelatorSet::chain(&[0.0; 5]).unwrap();
        let m = ineq(&[((1, 3), 1)], 1.0);
        assert_eq!(evaluate(&m, &missing), Err(Error::MissingCorrelator { i: 1, j: 3 }));
    }

    #[test]
    fn max_violation_examples() {
        let fam = lg_family(3).unwrap();
        let (k, s) = max_violation(&fam, &CorrelatorSet::chain(&[0.5, 0.5, -0.5]).unwrap())
            .unwrap()
            .unwrap();
        assert_abs_diff_eq!(s, 0.5, epsilon = 1e-15);
        // enumeration oracle
        let slacks = fam.slacks(&CorrelatorSet::chain(&[0.5, 0.5, -0.5]).unwrap()).unwrap();
        assert_eq!(slacks.iter().position(|&x| x == s), Some(k));

        let (k, s) = max_violation(&lg_family(5).unwrap(), &CorrelatorSet::chain(&[0.0; 5]).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!((k, s), (0, -3.0));

        let h = FRAC_1_SQRT_2;
        let (_, s) = max_violation(&lg_family(4).unwrap(), &CorrelatorSet::chain(&[h, h, h, -h]).unwrap())
            .unwrap()
            .unwrap();
        assert_abs_diff_eq!(s, 2.0 * 2f64.sqrt() - 2.0, epsilon = 1e-12);
    }

    #[test]
    fn distinct_counts() {
        assert_eq!(distinct_under_equal_spacing(&lg_family(10).unwrap()).len(), 10);
        assert_eq!(distinct_under_equal_spacing(&ngon_family(5, false).unwrap()).len(), 10);
        assert_eq!(distinct_under_equal_spacing(&ngon_family(10, false).unwrap()).len(), 272);
        assert_eq!(distinct_under_equal_spacing(&ngon_family(10, true).unwrap()).len(), 272);
    }

    #[test]
    fn json_round_trip() {
        let fam = two_time_complete(2).unwrap();
        let text = serde_json::to_string(&fam.members()[0]).unwrap();
        assert_eq!(text, r#"{"terms":{"1,2":-1},"linear":{"1":-1,"2":-1},"bound":1.0}"#);
        let back: LinearInequality = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, &fam.members()[0]);
        let lg: LinearInequality =
            serde_json::from_str(r#"{"terms": {"1,2": 1, "2,3": 1, "1,3": -1}, "bound": 1.0}"#).unwrap();
        assert!(lg_family(3).unwrap().members().contains(&lg));
    }

    #[test]
    fn display_is_readable() {
        let m = ineq(&[((1, 2), 1), ((2, 3), 1), ((1, 3), -1)], 1.0);
        assert_eq!(m.to_string(), "C12 - C13 + C23 <= 1");
    }
}

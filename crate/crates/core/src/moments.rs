//! Sign vectors, moment specifications, correlator sets and joint
//! distributions over `n` dichotomic measurements, with exact conversions
//! through the moment expansion
//!
//! ```text
//! p(s) = 2^-n (1 + sum_T m_T prod_{i in T} s_i)
//! ```
//!
//! Outcome `s` is stored at index `sum_k bit_k 2^k` where bit `k` is 0 when
//! `s_{k+1} = +1` and 1 when `s_{k+1} = -1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` for dense `2^n` storage.
pub const MAX_TIMES: usize = 20;

/// Normalization and round-trip tolerance.
pub const EXACT_TOL: f64 = 1e-12;

/// Tolerance for non-negativity decisions.
pub const FEASIBILITY_TOL: f64 = 1e-9;

pub(crate) fn check_times(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_TIMES {
        return Err(Error::TimesOutOfRange { n, min, max: MAX_TIMES });
    }
    Ok(())
}

/// `(-1)^popcount(mask)`.
#[inline]
pub(crate) fn parity_sign(mask: usize) -> f64 {
    if mask.count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn from_bit(bit: usize) -> Sign {
        if bit == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// An outcome `(s_1, ..., s_n)` of `n >= 2` dichotomic measurements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        check_times(signs.len(), 1)?;
        Ok(SignVector(signs))
    }

    /// Accepts entries that are exactly `+1` or `-1`.
    pub fn from_values(values: &[i32]) -> Result<Self> {
        let signs = values
            .iter()
            .map(|&v| match v {
                1 => Ok(Sign::Plus),
                -1 => Ok(Sign::Minus),
                _ => Err(Error::Precondition(format!("sign value {v} is not +1 or -1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(signs)
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        SignVector((0..n).map(|k| Sign::from_bit((index >> k) & 1)).collect())
    }

    pub fn index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(k, s)| if *s == Sign::Minus { 1 << k } else { 0 })
            .sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// `s_i` for 1-based `i`.
    pub fn get(&self, i: usize) -> f64 {
        self.0[i - 1].value()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .filter(|c| *c != ',')
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::MalformedKey(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        SignVector::new(signs)
    }
}

/// A non-empty set of 1-based time indices, stored as a bit mask
/// (bit `k` is time `k + 1`). Ordered by size, then lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(u32);

impl Subset {
    pub fn new(indices: &[usize], n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > n || i > MAX_TIMES {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            let bit = 1u32 << (i - 1);
            if mask & bit != 0 {
                return Err(Error::DuplicateIndex(i));
            }
            mask |= bit;
        }
        Ok(Subset(mask))
    }

    pub(crate) fn from_mask(mask: usize) -> Self {
        debug_assert!(mask != 0);
        Subset(mask as u32)
    }

    pub fn pair(i: usize, j: usize) -> Self {
        Subset((1 << (i - 1)) | (1 << (j - 1)))
    }

    pub fn single(i: usize) -> Self {
        Subset(1 << (i - 1))
    }

    pub fn mask(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Largest index in the subset.
    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|k| self.0 >> k & 1 == 1).map(|k| k + 1).collect()
    }

    pub fn parse(key: &str, n: usize) -> Result<Self> {
        let indices = key
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::MalformedKey(key.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        if sorted != indices {
            return Err(Error::MalformedKey(key.to_string()));
        }
        Subset::new(&indices, n)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// An ordered pair of times `(i, j)` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub i: usize,
    pub j: usize,
}

impl Pair {
    /// Builds the pair with its indices put in ascending order.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "pair needs two distinct times");
        Pair { i: a.min(b), j: a.max(b) }
    }

    pub fn gap(self) -> usize {
        self.j - self.i
    }

    pub fn subset(self) -> Subset {
        Subset::pair(self.i, self.j)
    }

    pub fn parse(key: &str, n: usize) -> Result<Self> {
        let subset = Subset::parse(key, n)?;
        match subset.indices()[..] {
            [i, j] => Ok(Pair { i, j }),
            _ => Err(Error::MalformedKey(key.to_string())),
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.j)
    }
}

/// The pairs `(1,2), (2,3), ..., (n-1,n), (1,n)` of a standard LG test.
pub fn chain_pairs(n: usize) -> Vec<Pair> {
    let mut pairs: Vec<Pair> = (1..n).map(|i| Pair::new(i, i + 1)).collect();
    if n > 2 {
        pairs.push(Pair::new(1, n));
    }
    pairs
}

/// All `n(n-1)/2` pairs in lexicographic order.
pub fn complete_pairs(n: usize) -> Vec<Pair> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| Pair::new(i, j)))
        .collect()
}

fn check_coefficient(key: &dyn fmt::Display, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite(key.to_string()));
    }
    if value.abs() > 1.0 + EXACT_TOL {
        return Err(Error::CoefficientOutOfRange { key: key.to_string(), value });
    }
    Ok(())
}

/// Moments `m_T = <prod_{i in T} Q_i>` over non-empty subsets of `1..=n`.
///
/// Absent subsets read as 0 wherever a full expansion is needed. Code that
/// treats the spec as a set of constraints (the feasibility oracle) reads
/// the present keys as the fixed data.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSpec {
    n: usize,
    moments: BTreeMap<Subset, f64>,
}

impl MomentSpec {
    pub fn new(n: usize, moments: impl IntoIterator<Item = (Subset, f64)>) -> Result<Self> {
        check_times(n, 2)?;
        let mut map = BTreeMap::new();
        for (subset, value) in moments {
            if subset.max_index() > n {
                return Err(Error::IndexOutOfRange { index: subset.max_index(), n });
            }
            check_coefficient(&subset, value)?;
            map.insert(subset, value);
        }
        Ok(MomentSpec { n, moments: map })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    /// Fixes `B_i = means[i-1]` and every correlator present in `correlators`.
    pub fn from_marginals(means: &[f64], correlators: &CorrelatorSet) -> Result<Self> {
        let n = correlators.n();
        if means.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: means.len() });
        }
        let singles = means.iter().enumerate().map(|(k, &b)| (Subset::single(k + 1), b));
        let pairs = correlators.iter().map(|(p, c)| (p.subset(), c));
        Self::new(n, singles.chain(pairs))
    }

    pub(crate) fn from_raw(n: usize, moments: BTreeMap<Subset, f64>) -> Self {
        MomentSpec { n, moments }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Stored coefficient, 0 when absent.
    pub fn get(&self, subset: Subset) -> f64 {
        self.moments.get(&subset).copied().unwrap_or(0.0)
    }

    pub fn get_stored(&self, subset: Subset) -> Option<f64> {
        self.moments.get(&subset).copied()
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.get(Subset::single(i))
    }

    pub fn correlator(&self, i: usize, j: usize) -> f64 {
        self.get(Subset::pair(i, j))
    }

    pub fn set(&mut self, subset: Subset, value: f64) -> Result<()> {
        if subset.max_index() > self.n {
            return Err(Error::IndexOutOfRange { index: subset.max_index(), n: self.n });
        }
        check_coefficient(&subset, value)?;
        self.moments.insert(subset, value);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.moments.iter().map(|(s, v)| (*s, *v))
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    /// Dense vector indexed by subset mask, with `m_{} = 1`.
    pub(crate) fn dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; 1 << self.n];
        dense[0] = 1.0;
        for (s, v) in &self.moments {
            dense[s.mask()] = *v;
        }
        dense
    }

    /// Every stored odd-order moment is zero.
    pub fn is_symmetric(&self) -> bool {
        self.moments.iter().all(|(s, v)| s.len() % 2 == 0 || *v == 0.0)
    }

    /// The stored pairs as a correlator set.
    pub fn correlators(&self) -> Result<CorrelatorSet> {
        let entries = self
            .moments
            .iter()
            .filter(|(s, _)| s.len() == 2)
            .map(|(s, v)| {
                let idx = s.indices();
                (Pair::new(idx[0], idx[1]), *v)
            });
        CorrelatorSet::from_pairs(self.n, entries)
    }
}

impl Serialize for MomentSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            moments: OrderedKeys<'a, Subset>,
        }
        Repr { n: self.n, moments: OrderedKeys(&self.moments) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MomentSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            n: usize,
            #[serde(default)]
            moments: HashMap<String, f64>,
        }
        let repr = Repr::deserialize(deserializer)?;
        check_times(repr.n, 2).map_err(D::Error::custom)?;
        let entries = repr
            .moments
            .iter()
            .map(|(k, v)| Subset::parse(k, repr.n).map(|s| (s, *v)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        if entries.len() != entries.iter().map(|(s, _)| *s).collect::<std::collections::HashSet<_>>().len() {
            return Err(D::Error::custom("duplicate subset key"));
        }
        MomentSpec::new(repr.n, entries).map_err(D::Error::custom)
    }
}

/// Serializes a map with `Display` keys in the map's own order.
struct OrderedKeys<'a, K>(&'a BTreeMap<K, f64>);

impl<K: fmt::Display> Serialize for OrderedKeys<'_, K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairPattern {
    Chain,
    Complete,
}

/// Two-time correlators `C_ij`, either the chain pattern of a standard LG
/// test or the complete set of pairs. For `n = 3` the two coincide and the
/// set is tagged `Complete`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorSet {
    n: usize,
    pattern: PairPattern,
    entries: BTreeMap<Pair, f64>,
}

impl CorrelatorSet {
    pub fn from_pairs(n: usize, entries: impl IntoIterator<Item = (Pair, f64)>) -> Result<Self> {
        check_times(n, 2)?;
        let mut map = BTreeMap::new();
        for (pair, c) in entries {
            if pair.j > n {
                return Err(Error::IndexOutOfRange { index: pair.j, n });
            }
            check_coefficient(&pair, c)?;
            map.insert(pair, c);
        }
        let keys: Vec<Pair> = map.keys().copied().collect();
        let mut complete = complete_pairs(n);
        complete.sort();
        let mut chain = chain_pairs(n);
        chain.sort();
        let pattern = if keys == complete {
            PairPattern::Complete
        } else if keys == chain {
            PairPattern::Chain
        } else {
            return Err(Error::UnknownPattern { n });
        };
        Ok(CorrelatorSet { n, pattern, entries: map })
    }

    /// Chain correlators in the order `C_12, C_23, ..., C_(n-1)n, C_1n`.
    pub fn chain(values: &[f64]) -> Result<Self> {
        let n = values.len();
        check_times(n, 3)?;
        Self::from_pairs(n, chain_pairs(n).into_iter().zip(values.iter().copied()))
    }

    /// Complete set from a function of the pair.
    pub fn complete_with(n: usize, f: impl Fn(Pair) -> f64) -> Result<Self> {
        check_times(n, 2)?;
        Self::from_pairs(n, complete_pairs(n).into_iter().map(|p| (p, f(p))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pattern(&self) -> PairPattern {
        self.pattern
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.entries.get(&Pair::new(i, j)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, f64)> + '_ {
        self.entries.iter().map(|(p, c)| (*p, *c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Serialize for CorrelatorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            pattern: PairPattern,
            correlators: OrderedKeys<'a, Pair>,
        }
        Repr { n: self.n, pattern: self.pattern, correlators: OrderedKeys(&self.entries) }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CorrelatorSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            #[serde(default)]
            pattern: Option<PairPattern>,
            correlators: HashMap<String, f64>,
        }
        let repr = Repr::deserialize(deserializer)?;
        check_times(repr.n, 2).map_err(D::Error::custom)?;
        let entries = repr
            .correlators
            .iter()
            .map(|(k, v)| Pair::parse(k, repr.n).map(|p| (p, *v)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let set = CorrelatorSet::from_pairs(repr.n, entries).map_err(D::Error::custom)?;
        match repr.pattern {
            Some(p) if p != set.pattern && set.n != 3 => {
                Err(D::Error::custom(format!("pattern {p:?} does not match the stored keys")))
            }
            _ => Ok(set),
        }
    }
}

/// A (quasi-)probability over `{-1,+1}^n`, indexed as described in the
/// module docs. Entries may be negative; [`JointDistribution::is_valid`]
/// and [`JointDistribution::is_nonnegative`] report on that.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    n: usize,
    p: Vec<f64>,
}

impl JointDistribution {
    pub fn new(n: usize, p: Vec<f64>) -> Result<Self> {
        check_times(n, 1)?;
        if p.len() != 1 << n {
            return Err(Error::WrongLength { expected: 1 << n, found: p.len() });
        }
        if let Some(k) = p.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(SignVector::from_index(k, n).to_string()));
        }
        let sum = neumaier_sum(p.iter().copied());
        if (sum - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(JointDistribution { n, p })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        check_times(n, 1)?;
        Self::new(n, vec![1.0 / (1u64 << n) as f64; 1 << n])
    }

    pub fn point_mass(s: &SignVector) -> Self {
        let mut p = vec![0.0; 1 << s.len()];
        p[s.index()] = 1.0;
        JointDistribution { n: s.len(), p }
    }

    /// Equal-weight mixture of the given outcomes.
    pub fn mixture(outcomes: &[SignVector]) -> Result<Self> {
        let n = outcomes.first().ok_or(Error::EmptySubset)?.len();
        let mut p = vec![0.0; 1 << n];
        for s in outcomes {
            if s.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: s.len() });
            }
            p[s.index()] += 1.0 / outcomes.len() as f64;
        }
        Self::new(n, p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn prob(&self, s: &SignVector) -> f64 {
        self.p[s.index()]
    }

    /// All entries are at least `-FEASIBILITY_TOL`.
    pub fn is_valid(&self) -> bool {
        self.p.iter().all(|&v| v >= -FEASIBILITY_TOL)
    }

    /// All entries are `>= 0` exactly.
    pub fn is_nonnegative(&self) -> bool {
        self.p.iter().all(|&v| v >= 0.0)
    }

    pub fn min_entry(&self) -> f64 {
        self.p.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

impl Serialize for JointDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a JointDistribution);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.p.len()))?;
                for (k, v) in self.0.p.iter().enumerate() {
                    map.serialize_entry(&SignVector::from_index(k, self.0.n).to_string(), v)?;
                }
                map.end()
            }
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            p: Entries<'a>,
        }
        Repr { n: self.n, p: Entries(self) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JointDistribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            p: HashMap<String, f64>,
        }
        let repr = Repr::deserialize(deserializer)?;
        check_times(repr.n, 1).map_err(D::Error::custom)?;
        let mut p = vec![f64::NAN; 1 << repr.n];
        for (k, v) in &repr.p {
            let s: SignVector = k.parse().map_err(D::Error::custom)?;
            if s.len() != repr.n {
                return Err(D::Error::custom(format!("outcome {k} has wrong length")));
            }
            p[s.index()] = *v;
        }
        JointDistribution::new(repr.n, p).map_err(D::Error::custom)
    }
}

pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// In-place Walsh-Hadamard transform: `out[T] = sum_x in[x] (-1)^|x & T|`.
fn walsh_hadamard(values: &mut [f64]) {
    let len = values.len();
    let mut h = 1;
    while h < len {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// All `2^n - 1` moments of `dist`. Values can leave `[-1, 1]` only when
/// `dist` has negative entries.
pub fn moments_from_distribution(dist: &JointDistribution, n: usize) -> Result<MomentSpec> {
    if dist.n != n {
        return Err(Error::DimensionMismatch { expected: n, found: dist.n });
    }
    check_times(n, 2)?;
    let mut m = dist.p.clone();
    walsh_hadamard(&mut m);
    let map = m
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(mask, v)| (Subset::from_mask(mask), v))
        .collect();
    Ok(MomentSpec::from_raw(n, map))
}

/// Evaluates the moment expansion with absent moments set to 0.
pub fn distribution_from_moments(spec: &MomentSpec) -> Result<JointDistribution> {
    let n = spec.n;
    check_times(n, 2)?;
    let mut p = spec.dense();
    walsh_hadamard(&mut p);
    let scale = 1.0 / (1u64 << n) as f64;
    p.iter_mut().for_each(|v| *v *= scale);
    JointDistribution::new(n, p)
}

/// `(1 + B_i s_i + B_j s_j + C_ij s_i s_j) / 4`.
pub fn pairwise_probability(b_i: f64, b_j: f64, c_ij: f64, s_i: Sign, s_j: Sign) -> f64 {
    let (si, sj) = (s_i.value(), s_j.value());
    (1.0 + b_i * si + b_j * sj + c_ij * si * sj) / 4.0
}

/// Sums out every time not in `keep`. The result's time `k` is the `k`-th
/// smallest kept index.
pub fn marginalize(dist: &JointDistribution, keep: &[usize]) -> Result<JointDistribution> {
    let subset = Subset::new(keep, dist.n)?;
    let kept = subset.indices();
    let mut p = vec![0.0; 1 << kept.len()];
    for (idx, v) in dist.p.iter().enumerate() {
        let target = kept
            .iter()
            .enumerate()
            .map(|(k, &i)| ((idx >> (i - 1)) & 1) << k)
            .sum::<usize>();
        p[target] += v;
    }
    Ok(JointDistribution { n: kept.len(), p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn random_dist(n: usize, weights: &[f64]) -> JointDistribution {
        let w = &weights[..1 << n];
        let total: f64 = w.iter().sum();
        JointDistribution::new(n, w.iter().map(|x| x / total).collect()).unwrap()
    }

    #[test]
    fn sign_vector_index_is_little_endian() {
        assert_eq!(sv("+++").index(), 0);
        assert_eq!(sv("-++").index(), 1);
        assert_eq!(sv("+-+").index(), 2);
        assert_eq!(sv("++-").index(), 4);
        for k in 0..16 {
            assert_eq!(SignVector::from_index(k, 4).index(), k);
        }
        assert!(SignVector::from_values(&[1, 0, -1]).is_err());
    }

    #[test]
    fn subset_order_and_parse() {
        let a = Subset::parse("1,2", 3).unwrap();
        let b = Subset::parse("3", 3).unwrap();
        let c = Subset::parse("1,2,3", 3).unwrap();
        assert!(b < a && a < c);
        assert_eq!(a.to_string(), "1,2");
        assert!(Subset::parse("2,1", 3).is_err());
        assert!(Subset::parse("1,1", 3).is_err());
        assert!(Subset::parse("4", 3).is_err());
        assert!(Subset::parse("", 3).is_err());
    }

    #[test]
    fn uniform_has_zero_moments() {
        let m = moments_from_distribution(&JointDistribution::uniform(3).unwrap(), 3).unwrap();
        assert_eq!(m.len(), 7);
        for (_, v) in m.iter() {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn point_mass_has_unit_moments() {
        let m = moments_from_distribution(&JointDistribution::point_mass(&sv("+++")), 3).unwrap();
        for (_, v) in m.iter() {
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn two_point_mixture_moments() {
        let d = JointDistribution::mixture(&[sv("+++"), sv("---")]).unwrap();
        let m = moments_from_distribution(&d, 3).unwrap();
        for i in 1..=3 {
            assert_abs_diff_eq!(m.mean(i), 0.0);
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_abs_diff_eq!(m.correlator(i, j), 1.0);
        }
        assert_abs_diff_eq!(m.get(Subset::parse("1,2,3", 3).unwrap()), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let d = JointDistribution::uniform(3).unwrap();
        assert_eq!(
            moments_from_distribution(&d, 4),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn zero_moments_give_uniform() {
        let d = distribution_from_moments(&MomentSpec::empty(2).unwrap()).unwrap();
        assert_eq!(d.probabilities(), &[0.25; 4]);
    }

    #[test]
    fn perfect_correlation_distribution() {
        let spec = MomentSpec::new(2, [(Subset::pair(1, 2), 1.0)]).unwrap();
        let d = distribution_from_moments(&spec).unwrap();
        assert_abs_diff_eq!(d.prob(&sv("++")), 0.5);
        assert_abs_diff_eq!(d.prob(&sv("--")), 0.5);
        assert_abs_diff_eq!(d.prob(&sv("+-")), 0.0);
        assert_abs_diff_eq!(d.prob(&sv("-+")), 0.0);
    }

    #[test]
    fn negative_quasi_probability_is_flagged() {
        let spec = MomentSpec::new(
            3,
            [(Subset::pair(1, 2), -0.5), (Subset::pair(2, 3), -0.5), (Subset::pair(1, 3), -0.5)],
        )
        .unwrap();
        let d = distribution_from_moments(&spec).unwrap();
        assert_abs_diff_eq!(d.prob(&sv("+++")), -1.0 / 16.0, epsilon = 1e-15);
        assert!(!d.is_valid());
        assert!(!d.is_nonnegative());
    }

    #[test]
    fn pairwise_probability_examples() {
        assert_eq!(pairwise_probability(0.0, 0.0, 0.0, Sign::Plus, Sign::Plus), 0.25);
        assert_eq!(pairwise_probability(0.0, 0.0, 1.0, Sign::Plus, Sign::Minus), 0.0);
        assert_eq!(pairwise_probability(1.0, 0.0, 0.0, Sign::Minus, Sign::Plus), 0.0);
    }

    #[test]
    fn marginalize_examples() {
        let u = marginalize(&JointDistribution::uniform(3).unwrap(), &[1, 2]).unwrap();
        assert_eq!(u, JointDistribution::uniform(2).unwrap());

        let pm = marginalize(&JointDistribution::point_mass(&sv("+++")), &[2]).unwrap();
        assert_eq!(pm.probabilities(), &[1.0, 0.0]);

        let d = JointDistribution::mixture(&[sv("+++"), sv("---")]).unwrap();
        let m = marginalize(&d, &[1, 3]).unwrap();
        assert_abs_diff_eq!(m.prob(&sv("++")), 0.5);
        assert_abs_diff_eq!(m.prob(&sv("--")), 0.5);
        assert_abs_diff_eq!(m.prob(&sv("+-")), 0.0);

        assert_eq!(marginalize(&d, &[]), Err(Error::EmptySubset));
        assert!(marginalize(&d, &[4]).is_err());
    }

    #[test]
    fn rejects_out_of_range_inputs() {
        assert!(MomentSpec::empty(21).is_err());
        assert!(MomentSpec::empty(1).is_err());
        assert!(MomentSpec::new(3, [(Subset::pair(1, 2), 1.5)]).is_err());
        assert!(JointDistribution::new(2, vec![0.5, 0.5, 0.5, 0.5]).is_err());
        assert!(CorrelatorSet::from_pairs(4, [(Pair::new(1, 2), 0.0)]).is_err());
    }

    #[test]
    fn correlator_set_pattern_detection() {
        let chain = CorrelatorSet::chain(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(chain.pattern(), PairPattern::Chain);
        assert_eq!(chain.get(1, 4), Some(0.4));
        assert_eq!(chain.get(1, 3), None);
        let full = CorrelatorSet::complete_with(4, |_| 0.0).unwrap();
        assert_eq!(full.pattern(), PairPattern::Complete);
        assert_eq!(CorrelatorSet::chain(&[0.0; 3]).unwrap().pattern(), PairPattern::Complete);
    }

    #[test]
    fn json_schema() {
        let spec: MomentSpec =
            serde_json::from_str(r#"{"n": 5, "moments": {"1": 0.0, "1,2": 0.5, "1,2,3": 0.0}}"#).unwrap();
        assert_eq!(spec.correlator(1, 2), 0.5);
        assert_eq!(spec.len(), 3);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"n":5,"moments":{"1":0.0,"1,2":0.5,"1,2,3":0.0}}"#);
        assert!(serde_json::from_str::<MomentSpec>(r#"{"n": 3, "moments": {"2,1": 0.5}}"#).is_err());
        assert!(serde_json::from_str::<MomentSpec>(r#"{"n": 3, "moments": {"1,2": 2.0}}"#).is_err());

        let d = JointDistribution::point_mass(&sv("+-"));
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"{"n":2,"p":{"++":0.0,"-+":0.0,"+-":1.0,"--":0.0}}"#);
        assert_eq!(serde_json::from_str::<JointDistribution>(&text).unwrap(), d);

        let c: CorrelatorSet =
            serde_json::from_str(r#"{"n": 3, "correlators": {"1,2": 0.5, "2,3": 0.5, "1,3": -0.5}}"#).unwrap();
        assert_eq!(c.get(1, 3), Some(-0.5));
    }

    proptest! {
        #[test]
        fn round_trip(n in 2usize..=8, weights in prop::collection::vec(0.0f64..1.0, 256)) {
            prop_assume!(weights[..1 << n].iter().sum::<f64>() > 1e-3);
            let d = random_dist(n, &weights);
            let m = moments_from_distribution(&d, n).unwrap();
            let back = distribution_from_moments(&m).unwrap();
            for (a, b) in d.probabilities().iter().zip(back.probabilities()) {
                prop_assert!((a - b).abs() <= EXACT_TOL);
            }
            for (_, v) in m.iter() {
                prop_assert!(v.abs() <= 1.0 + EXACT_TOL);
            }
        }

        #[test]
        fn expansion_is_normalized(n in 2usize..=8, values in prop::collection::vec(-1.0f64..=1.0, 256)) {
            let spec = MomentSpec::new(n, values.iter().enumerate().skip(1).take((1 << n) - 1)
                .map(|(mask, v)| (Subset::from_mask(mask), *v))).unwrap();
            let d = distribution_from_moments(&spec).unwrap();
            prop_assert!((neumaier_sum(d.probabilities().iter().copied()) - 1.0).abs() <= EXACT_TOL);
        }

        #[test]
        fn pair_marginals_match_pairwise_probability(
            n in 3usize..=6,
            values in prop::collection::vec(-1.0f64..=1.0, 64),
            i in 1usize..=6, j in 1usize..=6,
        ) {
            prop_assume!(i < j && j <= n);
            let spec = MomentSpec::new(n, values.iter().enumerate().skip(1).take((1 << n) - 1)
                .map(|(mask, v)| (Subset::from_mask(mask), *v))).unwrap();
            let d = distribution_from_moments(&spec).unwrap();
            let pair = marginalize(&d, &[i, j]).unwrap();
            for si in Sign::BOTH {
                for sj in Sign::BOTH {
                    let expected = pairwise_probability(spec.mean(i), spec.mean(j), spec.correlator(i, j), si, sj);
                    let got = pair.prob(&SignVector::new(vec![si, sj]).unwrap());
                    prop_assert!((expected - got).abs() <= EXACT_TOL);
                }
            }
        }
    }
}

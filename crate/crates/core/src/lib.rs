//! Leggett-Garg inequality families and joint-probability feasibility for
//! temporal correlation data.
//!
//! * [`moments`]: sign vectors, moment specs, correlator sets, distributions.
//! * [`inequalities`]: LG_n, n-gon, three-time and two-time families.
//! * [`feasibility`]: interval solvers, the product construction, the
//!   symmetric E search and the linear-feasibility oracle.
//! * [`spinmodel`]: cosine-model sweeps over equal measurement spacing.
//! * [`cltvolume`]: CLT, Monte Carlo and exact estimates of violating volume.
//!
//! ```
//! use lgfine::feasibility::{fine_build_from_moments, lp_feasible};
//! use lgfine::{lg_family, CorrelatorSet, MomentSpec};
//!
//! # fn main() -> lgfine::Result<()> {
//! let chain = CorrelatorSet::chain(&[0.5, 0.5, -0.5])?; // C12, C23, C13
//! let slack = lg_family(3)?.max_slack(&chain)?.unwrap();
//! assert!((slack - 0.5).abs() < 1e-12);
//! let spec = MomentSpec::from_marginals(&[0.0; 3], &chain)?;
//! assert!(!lp_feasible(&spec)?.feasible);
//! assert!(!fine_build_from_moments(&[0.0; 3], &chain)?.feasible);
//! # Ok(())
//! # }
//! ```

pub mod cltvolume;
pub mod error;
pub mod feasibility;
pub mod inequalities;
pub mod moments;
pub mod par;
pub mod rng;
pub mod simplex;
pub mod spinmodel;

pub use error::{Error, Result};
pub use inequalities::{
    distinct_under_equal_spacing, evaluate, lg_family, max_violation, ngon_family, three_time_complete,
    two_time_complete, CorrelationData, FamilyKind, InequalityFamily, LinearInequality,
};
pub use moments::{
    distribution_from_moments, marginalize, moments_from_distribution, pairwise_probability, CorrelatorSet,
    JointDistribution, MomentSpec, Pair, PairPattern, Sign, SignVector, Subset,
};

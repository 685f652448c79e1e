mod common;

use std::f64::consts::PI;

use common::random_distribution;
use lgfine::inequalities::ngon_signs;
use lgfine::rng::stream;
use lgfine::spinmodel::{cosine_correlators, equal_spacing_times, SpinSweepConfig};
use lgfine::{lg_family, moments_from_distribution, ngon_family, three_time_complete, two_time_complete, FamilyKind};
use rand::Rng;

#[test]
fn joint_distributions_satisfy_every_family() {
    let mut rng = stream(9, 0);
    for _ in 0..2000 {
        let n = rng.random_range(3..=8);
        let dist = random_distribution(&mut rng, n);
        let spec = moments_from_distribution(&dist, n).unwrap();
        let pairs = spec.correlators().unwrap();
        let families = [
            lg_family(n).unwrap(),
            ngon_family(n, true).unwrap(),
            three_time_complete(n).unwrap(),
            two_time_complete(n).unwrap(),
        ];
        for family in &families {
            let worst = family.max_slack(&spec).unwrap().unwrap();
            assert!(worst <= 1e-9, "{}{n}: slack {worst}", family.kind().label());
        }
        assert!(lg_family(n).unwrap().max_slack(&pairs).unwrap().unwrap() <= 1e-9);
    }
}

/// `n + 2 sum_{i<j} s_i s_j C_ij` over every sign vector.
fn ngon_quadratic_min(c: &lgfine::CorrelatorSet) -> f64 {
    let n = c.n();
    (0..1usize << n)
        .map(|index| {
            let s = ngon_signs(n, index, true);
            n as f64 + 2.0 * c.iter().map(|(p, v)| f64::from(s[p.i - 1] * s[p.j - 1]) * v).sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn cosine_model_respects_the_quantum_ngon_bound() {
    for n in 3..=10 {
        let config = SpinSweepConfig { steps: 256, ..SpinSweepConfig::new(n, FamilyKind::Ngon, lgfine::spinmodel::Regime::Extend) };
        for tau in config.grid() {
            let c = cosine_correlators(1.0, &equal_spacing_times(n, tau)).unwrap();
            assert!(ngon_quadratic_min(&c) >= -1e-9, "n = {n}, tau = {tau}");
        }
    }
    let mut rng = stream(10, 0);
    for _ in 0..200 {
        let n = rng.random_range(3..=10);
        let mut times: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..4.0 * PI)).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        if times.len() < 3 {
            continue;
        }
        let c = cosine_correlators(rng.random_range(0.1..3.0), &times).unwrap();
        assert!(ngon_quadratic_min(&c) >= -1e-9);
    }
}

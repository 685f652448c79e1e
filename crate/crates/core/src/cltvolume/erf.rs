use std::f64::consts::PI;

const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Error function. Maclaurin series with compensated summation for
/// `|x| <= 2`, continued fraction for `erfc` beyond.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let a = x.abs();
    let value = if a <= 2.0 { series(a) } else { 1.0 - erfc_cf(a) };
    value.copysign(x)
}

/// Complementary error function, accurate in the tail for `x > 2`.
pub fn erfc(x: f64) -> f64 {
    if x > 2.0 {
        erfc_cf(x)
    } else {
        1.0 - erf(x)
    }
}

fn series(x: f64) -> f64 {
    // sum_k (-1)^k x^(2k+1) / (k! (2k+1))
    let x2 = x * x;
    let mut power = x;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for k in 0..200u32 {
        let term = power / f64::from(2 * k + 1);
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        power *= -x2 / f64::from(k + 1);
    }
    TWO_OVER_SQRT_PI * (sum + comp)
}

/// `erfc(x) = exp(-x^2) / (sqrt(pi) (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))))`,
/// evaluated with the modified Lentz method.
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..2000u32 {
        let a = f64::from(k) / 2.0;
        d = x + a * d;
        d = if d.abs() < TINY { TINY } else { d };
        c = x + a / c;
        c = if c.abs() < TINY { TINY } else { c };
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    /// Maclaurin series summed exactly in rationals; only the final
    /// `2 / sqrt(pi)` scale is a float.
    fn oracle(x: f64) -> f64 {
        let q = BigRational::from_float(x).unwrap();
        let q2 = &q * &q;
        let mut power = q.clone();
        let mut sum = BigRational::zero();
        let mut factorial = BigInt::one();
        for k in 0..400u32 {
            let term = &power / BigRational::from_integer(&factorial * BigInt::from(2 * k + 1));
            if k > 8 && term.to_f64().unwrap().abs() < 1e-24 {
                break;
            }
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power = &power * &q2;
            factorial *= BigInt::from(k + 1);
        }
        sum.to_f64().unwrap() * TWO_OVER_SQRT_PI
    }

    #[test]
    fn known_values() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(1.0) - 0.8427007929497149).abs() < 1e-15);
        assert!((erf(1.0) - oracle(1.0)).abs() < 1e-15);
        assert_eq!(erf(40.0), 1.0);
        assert_eq!(erf(-40.0), -1.0);
        assert!(erf(f64::NAN).is_nan());
    }

    #[test]
    fn matches_the_exact_series() {
        for k in 0..=48 {
            let x = -6.0 + 0.25 * f64::from(k) + 0.013;
            assert!((erf(x) - oracle(x)).abs() <= 1e-12, "x = {x}: {} vs {}", erf(x), oracle(x));
        }
        for x in [1.999, 2.0, 2.001] {
            assert!((erf(x) - oracle(x)).abs() <= 1e-14);
        }
    }

    #[test]
    fn tail_is_relatively_accurate() {
        // erfc(5) = 1.5374597944280348e-12
        assert!((erfc(5.0) / 1.5374597944280348e-12 - 1.0).abs() < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn odd(x in -8.0f64..8.0) {
            proptest::prop_assert_eq!(erf(-x), -erf(x));
        }

        #[test]
        fn monotone_and_bounded(x in -8.0f64..8.0, dx in 1e-6f64..1.0) {
            proptest::prop_assert!(erf(x + dx) >= erf(x));
            proptest::prop_assert!(erf(x).abs() <= 1.0);
        }
    }
}

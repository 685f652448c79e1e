//! Density of a sum of `m` independent uniforms on `[0, 1]` as exact
//! piecewise polynomials, built by repeated convolution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients in ascending powers of the global variable `x`.
type Poly = Vec<BigRational>;

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn antiderivative(p: &Poly) -> Poly {
    let mut out = vec![BigRational::zero()];
    out.extend(p.iter().enumerate().map(|(k, c)| c / int(k as i64 + 1)));
    out
}

/// `p(x - 1)`.
fn shift_right(p: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); p.len()];
    for (k, c) in p.iter().enumerate() {
        // (x - 1)^k = sum_i C(k, i) x^i (-1)^(k - i)
        let mut binom = BigInt::one();
        for (i, slot) in out.iter_mut().enumerate().take(k + 1) {
            let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
            *slot += c * BigRational::from_integer(&binom * BigInt::from(sign));
            binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
        }
    }
    out
}

fn add(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.iter().enumerate() {
        out[k] += c;
    }
    out
}

fn scale(p: &Poly, s: &BigRational) -> Poly {
    p.iter().map(|c| c * s).collect()
}

/// Density pieces of the sum of `m >= 1` uniforms; piece `k` covers `[k, k + 1]`.
pub(crate) fn sum_density(m: usize) -> Vec<Poly> {
    let mut pieces = vec![vec![BigRational::one()]];
    for len in 1..m {
        let anti: Vec<Poly> = pieces.iter().map(antiderivative).collect();
        let mut next = Vec::with_capacity(len + 1);
        for k in 0..=len {
            let mut piece: Poly = vec![BigRational::zero()];
            let kq = int(k as i64);
            if k >= 1 {
                // integral over [x - 1, k] of piece k - 1
                let f = &anti[k - 1];
                piece = add(&piece, &[eval(f, &kq)]);
                piece = add(&piece, &scale(&shift_right(f), &int(-1)));
            }
            if k < len {
                // integral over [k, x] of piece k
                let f = &anti[k];
                piece = add(&piece, f);
                piece = add(&piece, &[-eval(f, &kq)]);
            }
            next.push(piece);
        }
        pieces = next;
    }
    pieces
}

/// `P(S > c)` for `S` the sum of `m` uniforms on `[0, 1]`.
pub(crate) fn sum_tail(m: usize, c: &BigRational) -> BigRational {
    if *c >= int(m as i64) {
        return BigRational::zero();
    }
    if *c <= BigRational::zero() {
        return BigRational::one();
    }
    let mut total = BigRational::zero();
    for (k, piece) in sum_density(m).iter().enumerate() {
        let hi = int(k as i64 + 1);
        if hi <= *c {
            continue;
        }
        let lo = if int(k as i64) > *c { int(k as i64) } else { c.clone() };
        let f = antiderivative(piece);
        total += eval(&f, &hi) - eval(&f, &lo);
    }
    total
}

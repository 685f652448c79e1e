//! Phase-one simplex on a dense tableau.
//!
//! Finds `x >= 0` with `A x = b`, or shows none exists, by minimizing the
//! sum of artificial variables. Entering and leaving variables follow
//! Bland's rule (lowest index), which rules out cycling. The kernel is
//! generic over the scalar so the same code runs in `f64` and in exact
//! rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait LpScalar: Clone + Num + Signed + PartialOrd + std::fmt::Debug {
    /// Magnitudes at or below this are treated as zero when pivoting.
    fn pivot_tol() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
}

impl LpScalar for f64 {
    fn pivot_tol() -> Self {
        1e-11
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl LpScalar for BigRational {
    fn pivot_tol() -> Self {
        BigRational::zero()
    }

    /// Exact binary value of `x`.
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // numerator/denominator too large for a direct conversion
            let scale = BigRational::from_u64(1 << 52).expect("finite");
            let scaled = (self * &scale).round();
            ToPrimitive::to_f64(&scaled).unwrap_or(f64::NAN) / (1u64 << 52) as f64
        })
    }
}

#[derive(Debug, Clone)]
pub struct PhaseOne<S> {
    /// A solution of `A x = b, x >= 0` when `infeasibility` is zero.
    pub x: Vec<S>,
    /// Optimal sum of artificial variables.
    pub infeasibility: S,
    /// Basic column per row; indices `>= ncols` are artificials.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

/// Solves the phase-one problem for `A x = b, x >= 0`. `a` is row-major
/// with `b.len()` rows. Gives up after `max_pivots` pivots.
pub fn phase_one<S: LpScalar>(a: &[Vec<S>], b: &[S], max_pivots: usize) -> Result<PhaseOne<S>> {
    let rows = b.len();
    assert_eq!(a.len(), rows, "one row of A per entry of b");
    let ncols = a.first().map_or(0, Vec::len);
    let width = ncols + rows + 1;
    let rhs = width - 1;
    let tol = S::pivot_tol();

    let mut tableau: Vec<Vec<S>> = Vec::with_capacity(rows + 1);
    for (r, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), ncols, "ragged constraint matrix");
        let flip = bi.is_negative();
        let mut t = Vec::with_capacity(width);
        t.extend(row.iter().map(|v| if flip { -v.clone() } else { v.clone() }));
        t.extend((0..rows).map(|k| if k == r { S::one() } else { S::zero() }));
        t.push(if flip { -bi.clone() } else { bi.clone() });
        tableau.push(t);
    }
    // Reduced costs of the phase-one objective for the artificial basis.
    let mut objective = vec![S::zero(); width];
    for row in &tableau {
        for (j, v) in row.iter().enumerate() {
            if j < ncols || j == rhs {
                objective[j] = objective[j].clone() - v.clone();
            }
        }
    }
    tableau.push(objective);
    let mut basis: Vec<usize> = (ncols..ncols + rows).collect();

    let mut pivots = 0;
    loop {
        let obj = &tableau[rows];
        let entering = (0..ncols + rows).find(|&j| obj[j] < -tol.clone());
        let Some(col) = entering else { break };

        let mut leave: Option<(usize, S)> = None;
        for r in 0..rows {
            let coeff = &tableau[r][col];
            if *coeff > tol {
                let ratio = tableau[r][rhs].clone() / coeff.clone();
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // The phase-one objective is bounded below by zero, so an entering
        // column always has a positive entry.
        let Some((pivot_row, _)) = leave else { break };

        pivot(&mut tableau, pivot_row, col);
        basis[pivot_row] = col;
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::OracleNonConvergence { iterations: pivots });
        }
    }

    let mut x = vec![S::zero(); ncols];
    for (r, &col) in basis.iter().enumerate() {
        if col < ncols {
            x[col] = tableau[r][rhs].clone();
        }
    }
    let infeasibility = -tableau[rows][rhs].clone();
    Ok(PhaseOne { x, infeasibility, basis, pivots })
}

fn pivot<S: LpScalar>(tableau: &mut [Vec<S>], pivot_row: usize, col: usize) {
    let p = tableau[pivot_row][col].clone();
    for v in tableau[pivot_row].iter_mut() {
        if !v.is_zero() {
            *v = v.clone() / p.clone();
        }
    }
    let pivot_values = tableau[pivot_row].clone();
    let nz: Vec<usize> = (0..pivot_values.len()).filter(|&j| !pivot_values[j].is_zero()).collect();
    for (r, row) in tableau.iter_mut().enumerate() {
        if r == pivot_row || row[col].is_zero() {
            continue;
        }
        let factor = row[col].clone();
        for &j in &nz {
            row[j] = row[j].clone() - factor.clone() * pivot_values[j].clone();
        }
        row[col] = S::zero();
    }
}

/// Recomputes the basic values of `x` from the original columns by
/// Gaussian elimination with partial pivoting. Returns `None` when the
/// basis matrix is numerically singular.
pub fn refine_basic_solution(a: &[Vec<f64>], b: &[f64], basis: &[usize]) -> Option<Vec<f64>> {
    let rows = b.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<f64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<f64> = basis
                .iter()
                .map(|&col| if col < ncols { a[r][col] } else if col - ncols == r { 1.0 } else { 0.0 })
                .collect();
            row.push(b[r]);
            row
        })
        .collect();
    for k in 0..rows {
        let (piv, max) = (k..rows)
            .map(|r| (r, m[r][k].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if max < 1e-14 {
            return None;
        }
        m.swap(k, piv);
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail {
            let f = row[k] / pivot_row[k];
            if f != 0.0 {
                for (dst, src) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                    *dst -= f * src;
                }
            }
        }
    }
    let mut sol = vec![0.0; rows];
    for k in (0..rows).rev() {
        let s: f64 = (k + 1..rows).map(|c| m[k][c] * sol[c]).sum();
        sol[k] = (m[k][rows] - s) / m[k][k];
    }
    let mut x = vec![0.0; ncols];
    for (r, &col) in basis.iter().enumerate() {
        if col < ncols {
            x[col] = sol[r];
        }
    }
    Some(x)
}

//! Zeros of `H_n` as eigenvalues of the Jacobi matrix, located by Sturm
//! bisection.
//!
//! The Jacobi matrix of the Hermite family is symmetric tridiagonal with a
//! zero diagonal and off-diagonals `sqrt(k/2)`, `k = 1..n-1`. Its
//! eigenvalues are exactly the zeros of `H_n`.

use super::HermiteOrder;
use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 200;
const MAX_EXACT_ORDER: HermiteOrder = 2000;

/// Number of zeros of `H_n` strictly below `lambda`: the count of negative
/// pivots in the LDLᵀ factorisation of `J - lambda I`.
pub fn sturm_count(n: HermiteOrder, lambda: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0f64;
    for i in 0..n as usize {
        // b_{i}^2 = i/2 couples row i with row i-1
        let coupling = if i == 0 { 0.0 } else { 0.5 * i as f64 / d };
        d = -lambda - coupling;
        if d == 0.0 {
            d = -f64::EPSILON * (1.0 + lambda.abs());
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// All `n` zeros of `H_n`, ascending, each located to within `abs_tol`.
pub fn hermite_zeros_exact(n: HermiteOrder, abs_tol: f64) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_EXACT_ORDER {
        return Err(Error::InvalidArgument(format!(
            "exact zeros need 1 <= n <= {MAX_EXACT_ORDER}, got {n}"
        )));
    }
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "abs_tol must be positive, got {abs_tol}"
        )));
    }
    let bound = (2.0 * n as f64 + 1.0).sqrt();
    let mut zeros = Vec::with_capacity(n as usize);
    let mut lo_start = -bound;
    for i in 0..n as usize {
        // zero i is the one with exactly i zeros below it
        let (mut lo, mut hi) = (lo_start, bound);
        let mut steps = 0;
        while hi - lo > abs_tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(n, mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
            if steps > MAX_BISECTIONS {
                return Err(Error::NumericalFailure(format!(
                    "Sturm bisection for zero {} of H_{n} did not reach {abs_tol:e}",
                    i + 1
                )));
            }
        }
        zeros.push(0.5 * (lo + hi));
        lo_start = lo;
    }
    if n % 2 == 1 {
        // H_n is odd
        zeros[n as usize / 2] = 0.0;
    }
    Ok(zeros)
}

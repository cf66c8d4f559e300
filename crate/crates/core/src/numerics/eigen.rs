use super::TridiagonalMatrix;
use crate::{Error, Result};

const MAX_BISECTION_STEPS: usize = 2000;

/// Number of eigenvalues strictly below `lambda`, from the signs of the
/// LDLᵀ pivots (Sturm sequence).
pub fn sturm_count(matrix: &TridiagonalMatrix, lambda: f64) -> usize {
    let d = &matrix.diagonal;
    let e = &matrix.off_diagonal;
    let max_e2 = e.iter().fold(1.0_f64, |m, x| m.max(x * x));
    let pivot_floor = f64::MIN_POSITIVE * max_e2;
    let mut count = 0;
    let mut q = d[0] - lambda;
    for i in 0..d.len() {
        if i > 0 {
            q = d[i] - lambda - e[i - 1] * e[i - 1] / q;
        }
        if q.abs() < pivot_floor {
            q = -pivot_floor;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest `count` eigenvalues in ascending order, each bisected until its
/// bracket can no longer be halved in f64.
pub fn eigenvalues_tridiagonal(matrix: &TridiagonalMatrix, count: usize) -> Result<Vec<f64>> {
    if count > matrix.dim() {
        return Err(Error::InvalidParameter(format!(
            "requested {count} eigenvalues of a {}x{} matrix",
            matrix.dim(),
            matrix.dim()
        )));
    }
    let (mut lower, mut upper) = gershgorin(matrix);
    let pad = 1e-12 * lower.abs().max(upper.abs()).max(1.0);
    lower -= pad;
    upper += pad;
    let mut values = Vec::with_capacity(count);
    for k in 0..count {
        let mut lo = values.last().copied().unwrap_or(lower).min(upper);
        // lo must have at most k eigenvalues below it.
        if sturm_count(matrix, lo) > k {
            lo = lower;
        }
        let mut hi = upper;
        let mut steps = 0;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(matrix, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
            if steps > MAX_BISECTION_STEPS {
                return Err(Error::Convergence(format!(
                    "eigenvalue {k} still bracketed by [{lo}, {hi}] after {MAX_BISECTION_STEPS} steps"
                )));
            }
        }
        values.push(0.5 * (lo + hi));
    }
    Ok(values)
}

fn gershgorin(matrix: &TridiagonalMatrix) -> (f64, f64) {
    let d = &matrix.diagonal;
    let e = &matrix.off_diagonal;
    let n = d.len();
    (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { e[i].abs() } else { 0.0 };
        (lo.min(d[i] - left - right), hi.max(d[i] + left + right))
    })
}

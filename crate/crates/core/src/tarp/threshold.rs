use std::cmp::Ordering;

use crate::dataset::Label;
use crate::error::{Error, Result};

/// Best one-dimensional threshold rule for a vector of projected values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdFit {
    pub threshold: f64,
    /// Label assigned to values at or above the threshold.
    pub orientation: Label,
    pub errors: usize,
}

/// Finds `(τ, s)` minimizing the number of `i` with `s·sign(z_i − τ) ≠ y_i`.
///
/// Values are sorted once and the threshold swept across the gaps between
/// distinct values, so the cost is `O(N log N)`. Equal values form one block
/// that no threshold can split. The threshold is placed at the midpoint of the
/// winning gap, or one unit outside the data range for the two extreme cells.
/// Ties prefer the lowest cell, then `s = +1`.
pub fn best_threshold(z: &[f64], y: &[Label]) -> Result<ThresholdFit> {
    let mut order: Vec<usize> = (0..z.len()).collect();
    best_threshold_with(z, y, &mut order)
}

/// As [`best_threshold`], reusing `order` as scratch space for the sort.
pub(crate) fn best_threshold_with(
    z: &[f64],
    y: &[Label],
    order: &mut Vec<usize>,
) -> Result<ThresholdFit> {
    if z.is_empty() {
        return Err(Error::EmptyDataset("no projected values".into()));
    }
    if z.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: z.len(),
            got: y.len(),
        });
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("projected value".into()));
    }
    order.clear();
    order.extend(0..z.len());
    order.sort_unstable_by(|&a, &b| z[a].partial_cmp(&z[b]).unwrap_or(Ordering::Equal));

    let n = z.len();
    // Errors of s = +1 with every point predicted +1 (threshold below all).
    let mut err_plus = y.iter().filter(|&&l| l == Label::Neg).count();
    let mut best = (
        err_plus.min(n - err_plus),
        0usize,
        orientation_for(err_plus, n),
    );
    // `best.1` is the number of points left of the threshold.
    let mut i = 0;
    while i < n {
        let v = z[order[i]];
        let mut j = i;
        while j < n && z[order[j]] == v {
            // moving this point below the threshold flips it to -1 under s = +1
            match y[order[j]] {
                Label::Pos => err_plus += 1,
                Label::Neg => err_plus -= 1,
            }
            j += 1;
        }
        let cell_best = err_plus.min(n - err_plus);
        if cell_best < best.0 {
            best = (cell_best, j, orientation_for(err_plus, n));
        }
        i = j;
    }

    let (errors, left, orientation) = best;
    let threshold = if left == 0 {
        z[order[0]] - 1.0
    } else if left == n {
        z[order[n - 1]] + 1.0
    } else {
        let lo = z[order[left - 1]];
        let hi = z[order[left]];
        let mid = lo + (hi - lo) / 2.0;
        // adjacent floats: the midpoint can round onto `lo`
        if mid > lo {
            mid
        } else {
            hi
        }
    };
    Ok(ThresholdFit {
        threshold,
        orientation,
        errors,
    })
}

#[inline]
fn orientation_for(err_plus: usize, n: usize) -> Label {
    if err_plus <= n - err_plus {
        Label::Pos
    } else {
        Label::Neg
    }
}

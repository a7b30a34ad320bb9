//! Generalization-gap bounds and related calculators.
//!
//! Notation used throughout: `samples` is the training-set size `N`,
//! `projections` the number of random directions `n`, `vc_dim` a VC dimension
//! and `delta` the failure probability. Growth-function powers such as
//! `(2eN/d_VC)^{d_VC}` are handled as logarithms, since they overflow `f64`
//! already for moderate VC dimensions.

mod quadrature;
mod report;
mod special;

use std::f64::consts::{E, LN_2};

use crate::error::{Error, Result};
use crate::feature_map::extended_dim;

pub use quadrature::adaptive_simpson;
pub use report::{BoundConfig, BoundReport};
pub use special::{ln_beta, ln_gamma, ln_regularized_incomplete_beta, regularized_incomplete_beta};

/// Constant of the classical chaining bound `C·sqrt(d_VC/N)`.
pub const CHAINING_VC_CONSTANT: f64 = 65.16;
/// Leading constant of the chaining bound for n-TARP.
pub const CHAINING_TARP_CONSTANT: f64 = 24.0;
/// Upper bound on the single-projection entropy integral.
pub const CHAINING_INTEGRAL_BOUND: f64 = 1.66;

const QUAD_TOL: f64 = 1e-10;
// Beyond u = 60 the substituted integrand is below 1e-24.
const QUAD_CUTOFF: f64 = 60.0;

fn check_samples(samples: f64) -> Result<()> {
    if samples >= 1.0 && samples.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "sample count must be >= 1, got {samples}"
        )))
    }
}

fn check_projections(projections: f64) -> Result<()> {
    if projections >= 1.0 && projections.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "projection count must be >= 1, got {projections}"
        )))
    }
}

fn check_vc(vc_dim: f64) -> Result<()> {
    if vc_dim >= 1.0 && vc_dim.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "VC dimension must be >= 1, got {vc_dim}"
        )))
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "delta must lie in (0, 1), got {delta}"
        )))
    }
}

/// `sqrt(8/N · (ln 4 + ln m − ln δ))` for a growth-function value `m = exp(ln_growth)`.
fn high_probability_gap(samples: f64, ln_growth: f64, delta: f64) -> f64 {
    (8.0 / samples * ((4.0f64).ln() + ln_growth - delta.ln())).sqrt()
}

/// `ln (2eN/d_VC)^{d_VC}`, the Sauer-type bound on the growth function at `2N`.
pub fn ln_vc_growth(samples: f64, vc_dim: f64) -> f64 {
    vc_dim * (2.0 * E * samples / vc_dim).ln()
}

/// High-probability gap bound for n-TARP: `sqrt(8/N · ln(16 n N / δ))`.
pub fn tarp_gap_bound(samples: f64, projections: f64, delta: f64) -> Result<f64> {
    check_samples(samples)?;
    check_projections(projections)?;
    check_delta(delta)?;
    // growth function on 2N points is at most 4nN
    Ok(high_probability_gap(
        samples,
        (4.0 * projections * samples).ln(),
        delta,
    ))
}

/// High-probability gap bound for a class of VC dimension `d_VC`:
/// `sqrt(8/N · ln(4 (2eN/d_VC)^{d_VC} / δ))`.
pub fn vc_gap_bound(samples: f64, vc_dim: f64, delta: f64) -> Result<f64> {
    check_samples(samples)?;
    check_vc(vc_dim)?;
    check_delta(delta)?;
    Ok(high_probability_gap(
        samples,
        ln_vc_growth(samples, vc_dim),
        delta,
    ))
}

/// Gap bound using the smaller of the n-TARP growth estimate `4nN` and the
/// affine-class estimate `(2Ne/(d+1))^{d+1}` for inputs in `R^dim`.
pub fn combined_gap_bound(samples: f64, projections: f64, dim: usize, delta: f64) -> Result<f64> {
    check_samples(samples)?;
    check_projections(projections)?;
    check_delta(delta)?;
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let tarp = (4.0 * projections * samples).ln();
    let affine = ln_vc_growth(samples, dim as f64 + 1.0);
    Ok(high_probability_gap(samples, tarp.min(affine), delta))
}

/// `ln` of [`crossover_n`].
pub fn ln_crossover_n(samples: f64, vc_dim: f64) -> Result<f64> {
    check_samples(samples)?;
    check_vc(vc_dim)?;
    Ok(ln_vc_growth(samples, vc_dim) - (4.0 * samples).ln())
}

/// Projection count `(1/(4N))·(2Ne/d_VC)^{d_VC}` above which the VC bound with
/// exponent `d_VC` is tighter than the n-TARP bound. The exponent is explicit:
/// for the affine class in `R^d` it is `d + 1`.
pub fn crossover_n(samples: f64, vc_dim: f64) -> Result<f64> {
    Ok(ln_crossover_n(samples, vc_dim)?.exp())
}

/// Bound on the expected gap of n-TARP: `sqrt(2 ln(8nN) / N)`.
pub fn tarp_expected_gap_bound(samples: f64, projections: f64) -> Result<f64> {
    check_samples(samples)?;
    check_projections(projections)?;
    Ok((2.0 * (8.0 * projections * samples).ln() / samples).sqrt())
}

/// Expected-gap bound for VC dimension `d_VC` with the polynomial Sauer
/// estimate `m(2N) <= (2N+1)^{d_VC}`: `sqrt(2 ln(2 (2N+1)^{d_VC}) / N)`.
pub fn vc_expected_gap_bound_sauer(samples: f64, vc_dim: f64) -> Result<f64> {
    check_samples(samples)?;
    check_vc(vc_dim)?;
    let ln_growth = vc_dim * (2.0 * samples + 1.0).ln();
    Ok((2.0 * (LN_2 + ln_growth) / samples).sqrt())
}

/// Expected-gap bound for VC dimension `d_VC` with the exponential Sauer
/// estimate `m(2N) <= (2eN/d_VC)^{d_VC}`.
pub fn vc_expected_gap_bound_exp(samples: f64, vc_dim: f64) -> Result<f64> {
    check_samples(samples)?;
    check_vc(vc_dim)?;
    Ok((2.0 * (LN_2 + ln_vc_growth(samples, vc_dim)) / samples).sqrt())
}

/// Chaining bound on the expected gap of n-TARP: `24/sqrt(N) · (sqrt(ln n) + 1.66)`.
pub fn chaining_tarp_bound(samples: f64, projections: f64) -> Result<f64> {
    check_samples(samples)?;
    check_projections(projections)?;
    Ok(CHAINING_TARP_CONSTANT / samples.sqrt()
        * (projections.ln().sqrt() + CHAINING_INTEGRAL_BOUND))
}

/// Classical chaining bound `65.16·sqrt(d_VC/N)`.
pub fn chaining_vc_bound(samples: f64, vc_dim: f64) -> Result<f64> {
    check_samples(samples)?;
    check_vc(vc_dim)?;
    Ok(CHAINING_VC_CONSTANT * (vc_dim / samples).sqrt())
}

/// `∫_0^1 sqrt(ln n + ln(2/r² + 2)) dr`.
///
/// The substitution `r = e^{-u}` turns the `r → 0` endpoint into a smooth,
/// exponentially decaying tail on `[0, ∞)`, which is truncated at `u = 60`.
pub fn chaining_integral(projections: f64) -> Result<f64> {
    check_projections(projections)?;
    let ln_n = projections.ln();
    let integrand = |u: f64| {
        // ln(2/r² + 2) = ln 2 + 2u + ln(1 + e^{-2u})
        let inner = ln_n + LN_2 + 2.0 * u + (-2.0 * u).exp().ln_1p();
        inner.sqrt() * (-u).exp()
    };
    adaptive_simpson(integrand, 0.0, QUAD_CUTOFF, QUAD_TOL)
}

/// Upper bound `⌈2N/(2i+1)⌉` on the number of radius-`sqrt(i/N)` balls needed
/// to cover the dichotomies of one projection.
pub fn covering_number_bound(samples: u64, i: u64) -> Result<u64> {
    if samples == 0 || i == 0 || i > samples {
        return Err(Error::invalid(format!(
            "covering radius index must satisfy 1 <= i <= N, got i = {i}, N = {samples}"
        )));
    }
    Ok((2 * samples).div_ceil(2 * i + 1))
}

/// Step-function entropy sum
/// `Σ_{i=1}^{N} (sqrt(i/N) − sqrt((i−1)/N)) · sqrt(ln(2⌈2N/(2i+1)⌉))`
/// built from [`covering_number_bound`].
pub fn covering_entropy_sum(samples: u64) -> Result<f64> {
    let n = samples as f64;
    let mut total = 0.0;
    for i in 1..=samples {
        let width = (i as f64 / n).sqrt() - ((i - 1) as f64 / n).sqrt();
        let cover = covering_number_bound(samples, i)? as f64;
        total += width * (2.0 * cover).ln().sqrt();
    }
    Ok(total)
}

/// Limit as `N → ∞` of the ratio between the n-TARP chaining bound and the
/// classical chaining bound for VC dimension `d_VC`.
pub fn ratio_limit(projections: f64, vc_dim: f64) -> Result<f64> {
    check_projections(projections)?;
    check_vc(vc_dim)?;
    Ok(CHAINING_TARP_CONSTANT / CHAINING_VC_CONSTANT
        * ((projections.ln() / vc_dim).sqrt() + CHAINING_INTEGRAL_BOUND / vc_dim.sqrt()))
}

/// Largest projection count for which the n-TARP chaining bound stays below
/// the classical one for VC dimension `d_VC`:
/// `exp(d_VC (65.16/24 − 1.66/sqrt(d_VC))²)`.
pub fn max_projections_for_vc(vc_dim: f64) -> Result<f64> {
    check_vc(vc_dim)?;
    let gap =
        CHAINING_VC_CONSTANT / CHAINING_TARP_CONSTANT - CHAINING_INTEGRAL_BOUND / vc_dim.sqrt();
    Ok((vc_dim * gap * gap).exp())
}

/// Number of random directions that reach a near-optimal direction with
/// probability at least `1 − δ`:
/// `ln δ / ln(1 − I_x((d̃−1)/2, 1/2))` with `x = sin²(4·asin(1/(8 d̃)))`
/// and `d̃ = C(d+k, k)`.
pub fn required_projections(dim: usize, k: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let ext = extended_dim(dim, k)?;
    if ext < 2 {
        return Err(Error::invalid(
            "required projections need an expanded dimension of at least 2",
        ));
    }
    required_projections_for_extended_dim(ext as f64, delta)
}

/// [`required_projections`] for an explicit expanded dimension `d̃ >= 2`.
pub fn required_projections_for_extended_dim(ext_dim: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if !(ext_dim >= 2.0 && ext_dim.is_finite()) {
        return Err(Error::invalid(format!(
            "expanded dimension must be >= 2, got {ext_dim}"
        )));
    }
    let x = (4.0 * (1.0 / (8.0 * ext_dim)).asin()).sin().powi(2);
    let a = (ext_dim - 1.0) / 2.0;
    let ln_cap = ln_regularized_incomplete_beta(x, a, 0.5)?;
    let cap = ln_cap.exp();
    let n = if cap > 1e-8 {
        delta.ln() / (-cap).ln_1p()
    } else {
        // ln(1 − I) = −I (1 + I/2 + ...), relative error below 1e-8
        ((-delta.ln()).ln() - ln_cap).exp() / (1.0 + cap / 2.0)
    };
    if n.is_finite() {
        Ok(n)
    } else {
        Err(Error::Overflow(format!(
            "required projection count for expanded dimension {ext_dim} exceeds f64 range"
        )))
    }
}

/// Two-sided Hoeffding deviation `sqrt(ln(2/δ) / (2N))`.
pub fn hoeffding_deviation(samples: f64, delta: f64) -> Result<f64> {
    check_samples(samples)?;
    check_delta(delta)?;
    Ok(((2.0 / delta).ln() / (2.0 * samples)).sqrt())
}

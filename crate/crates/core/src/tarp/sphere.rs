use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Draws a direction uniformly from the unit sphere `S^{dim-1}` by normalizing
/// a standard Gaussian vector. Degenerate draws are redrawn.
pub fn sample_direction<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<Vec<f64>> {
    if dim == 0 {
        return Err(Error::invalid("direction dimension must be positive"));
    }
    let mut v = vec![0.0; dim];
    fill_direction(rng, &mut v);
    Ok(v)
}

pub(crate) fn fill_direction<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    loop {
        for c in out.iter_mut() {
            *c = rng.sample(StandardNormal);
        }
        let norm = out.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 0.0 && norm.is_finite() {
            out.iter_mut().for_each(|c| *c /= norm);
            return;
        }
    }
}

//! Two-class Bernoulli-plus-Gaussian data model.
//!
//! Coordinate `i` of a class-`c` point is `Ber(p_i^c) + N(0, σ²)`, all
//! coordinates independent.

use rand::seq::SliceRandom;
use rand_distr::{Bernoulli, Distribution, Normal};

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};
use crate::rng;

/// Dimension of the default experiment model.
pub const DEFAULT_DIM: usize = 65;
/// Size of each of the two constant blocks in the default model (`2·32 + 1 = 65`).
const BLOCK: usize = 32;
const LOW: f64 = 0.25;
const HIGH: f64 = 0.8;

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticModel {
    pub p_plus: Vec<f64>,
    pub p_minus: Vec<f64>,
    pub sigma: f64,
}

impl SyntheticModel {
    pub fn new(p_plus: Vec<f64>, p_minus: Vec<f64>, sigma: f64) -> Result<SyntheticModel> {
        if p_plus.is_empty() || p_plus.len() != p_minus.len() {
            return Err(Error::invalid(format!(
                "class parameter vectors must be non-empty and of equal length ({} vs {})",
                p_plus.len(),
                p_minus.len()
            )));
        }
        if p_plus
            .iter()
            .chain(&p_minus)
            .any(|p| !(0.0..=1.0).contains(p))
        {
            return Err(Error::invalid("Bernoulli parameters must lie in [0, 1]"));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::invalid(format!(
                "noise level must be finite and >= 0, got {sigma}"
            )));
        }
        Ok(SyntheticModel {
            p_plus,
            p_minus,
            sigma,
        })
    }

    pub fn dim(&self) -> usize {
        self.p_plus.len()
    }

    /// Draws `n` points, `n/2` per class, in random order.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Dataset> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "sample size must be even and positive, got {n}"
            )));
        }
        let mut rng = rng::stream(seed);
        let noise = if self.sigma > 0.0 {
            Some(Normal::new(0.0, self.sigma).map_err(|e| Error::invalid(e.to_string()))?)
        } else {
            None
        };
        let plus = bernoullis(&self.p_plus)?;
        let minus = bernoullis(&self.p_minus)?;

        let d = self.dim();
        let mut features = Vec::with_capacity(n * d);
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let (label, coins) = if i % 2 == 0 {
                (Label::Pos, &plus)
            } else {
                (Label::Neg, &minus)
            };
            for coin in coins {
                let mut v = if coin.sample(&mut rng) { 1.0 } else { 0.0 };
                if let Some(noise) = &noise {
                    v += noise.sample(&mut rng);
                }
                features.push(v);
            }
            labels.push(label);
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        Dataset::from_flat(features, d, labels)?.subset(&order)
    }
}

fn bernoullis(p: &[f64]) -> Result<Vec<Bernoulli>> {
    p.iter()
        .map(|&p| Bernoulli::new(p).map_err(|e| Error::invalid(e.to_string())))
        .collect()
}

/// `(0.25 × 32, 0.8 × 32, 1)`.
pub fn default_p_plus() -> Vec<f64> {
    blocks(LOW, HIGH)
}

/// `(0.8 × 32, 0.25 × 32, 1)`, the final class −1 parameters of the schedule.
pub fn default_p_end() -> Vec<f64> {
    blocks(HIGH, LOW)
}

fn blocks(first: f64, second: f64) -> Vec<f64> {
    let mut p = vec![first; BLOCK];
    p.extend(std::iter::repeat_n(second, BLOCK));
    p.push(1.0);
    p
}

/// Mixture schedule of `steps` models: class +1 fixed at [`default_p_plus`],
/// class −1 moving linearly from the class +1 parameters (indistinguishable
/// classes) to [`default_p_end`].
pub fn schedule(steps: usize, sigma: f64) -> Result<Vec<SyntheticModel>> {
    if steps < 2 {
        return Err(Error::invalid(format!(
            "schedule needs at least 2 steps, got {steps}"
        )));
    }
    let start = default_p_plus();
    let end = default_p_end();
    (0..steps)
        .map(|t| {
            let w = t as f64 / (steps - 1) as f64;
            let p_minus = start
                .iter()
                .zip(&end)
                .map(|(a, b)| if t == steps - 1 { *b } else { a + w * (b - a) })
                .collect();
            SyntheticModel::new(start.clone(), p_minus, sigma)
        })
        .collect()
}

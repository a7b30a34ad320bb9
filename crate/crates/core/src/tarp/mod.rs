//! The n-TARP classifier.
//!
//! Fitting expands the training data once with the polynomial map, draws `n`
//! unit directions from a seeded stream, solves the exact threshold problem on
//! each projection and keeps the projection with the fewest training errors
//! (lowest index on ties).

mod chain;
mod model_io;
mod sphere;
mod threshold;

use rayon::prelude::*;

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};
use crate::feature_map::PolyFeatureMap;
use crate::rng;

pub use chain::{dichotomy_chain, Dichotomy};
pub use sphere::sample_direction;
pub use threshold::{best_threshold, ThresholdFit};

// Directions are generated sequentially in blocks of this size and each block
// is evaluated in parallel.
const DIRECTION_BLOCK: usize = 1024;

/// Anything that maps an input vector to a label.
pub trait Classifier {
    fn input_dim(&self) -> usize;

    /// Label for `x`; `x.len()` is assumed to equal `input_dim()`.
    fn classify(&self, x: &[f64]) -> Label;

    fn predict(&self, x: &[f64]) -> Result<Label> {
        if x.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        Ok(self.classify(x))
    }
}

/// Fraction of points of `data` misclassified by `f`.
pub fn empirical_error<C: Classifier + ?Sized>(f: &C, data: &Dataset) -> Result<f64> {
    Ok(error_count(f, data)? as f64 / data.len() as f64)
}

/// Number of points of `data` misclassified by `f`.
pub fn error_count<C: Classifier + ?Sized>(f: &C, data: &Dataset) -> Result<usize> {
    if data.dim() != f.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.input_dim(),
            got: data.dim(),
        });
    }
    Ok(data
        .rows()
        .zip(data.labels())
        .filter(|(x, &y)| f.classify(x) != y)
        .count())
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A single projection with its threshold rule `s·sign(a·v − τ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionStump {
    pub direction: Vec<f64>,
    pub threshold: f64,
    pub orientation: Label,
    /// Misclassified training points.
    pub error_count: usize,
    /// Size of the training set `error_count` refers to.
    pub sample_count: usize,
}

impl ProjectionStump {
    pub fn train_error(&self) -> f64 {
        self.error_count as f64 / self.sample_count as f64
    }

    /// Label of an already expanded vector `v`. `sign(0)` counts as `+1`.
    #[inline]
    pub fn classify_expanded(&self, v: &[f64]) -> Label {
        self.orientation
            .times(Label::of_value(dot(&self.direction, v) - self.threshold))
    }
}

/// Best-of-`n` projection stump together with its feature map and fit record.
#[derive(Debug, Clone, PartialEq)]
pub struct TarpModel {
    pub map: PolyFeatureMap,
    pub stump: ProjectionStump,
    pub projections: usize,
    pub seed: u64,
    /// Index of the selected direction in the seeded stream.
    pub best_index: usize,
    /// Training error count of every projection, in stream order.
    pub per_projection_errors: Vec<u32>,
}

impl TarpModel {
    pub fn train_error(&self) -> f64 {
        self.stump.train_error()
    }

    pub fn projection_errors(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.stump.sample_count as f64;
        self.per_projection_errors
            .iter()
            .map(move |&e| e as f64 / n)
    }
}

impl Classifier for TarpModel {
    fn input_dim(&self) -> usize {
        self.map.input_dim()
    }

    fn classify(&self, x: &[f64]) -> Label {
        let v = self
            .map
            .expand(x)
            .expect("input dimension checked by caller");
        self.stump.classify_expanded(&v)
    }
}

/// `s·sign(a·φ_k(x) − τ)` for the model's selected stump.
pub fn predict(model: &TarpModel, x: &[f64]) -> Result<Label> {
    model.predict(x)
}

/// Fits n-TARP with feature order `k` and `n` projections drawn from `seed`.
///
/// The result depends only on `(data, k, n, seed)`: directions come from one
/// sequential stream, so the first `n` directions of a larger fit are exactly
/// the directions of a fit with `n`.
pub fn fit(data: &Dataset, k: usize, n: usize, seed: u64) -> Result<TarpModel> {
    if n == 0 {
        return Err(Error::invalid("number of projections must be at least 1"));
    }
    let map = PolyFeatureMap::new(data.dim(), k)?;
    let width = map.output_dim();
    let expanded = map.expand_rows(data.features())?;
    let labels = data.labels();

    let mut rng = rng::stream(seed);
    let mut per_projection_errors = Vec::with_capacity(n);
    let mut best: Option<(usize, ThresholdFit, Vec<f64>)> = None;
    let mut block = Vec::new();

    let mut start = 0;
    while start < n {
        let len = DIRECTION_BLOCK.min(n - start);
        block.resize(len * width, 0.0);
        for dir in block.chunks_exact_mut(width) {
            sphere::fill_direction(&mut rng, dir);
        }
        let fits: Vec<ThresholdFit> = block
            .par_chunks_exact(width)
            .map_init(
                || {
                    (
                        Vec::with_capacity(labels.len()),
                        Vec::with_capacity(labels.len()),
                    )
                },
                |(z, order), dir| {
                    z.clear();
                    z.extend(expanded.chunks_exact(width).map(|row| dot(dir, row)));
                    threshold::best_threshold_with(z, labels, order)
                },
            )
            .collect::<Result<_>>()?;
        for (offset, f) in fits.into_iter().enumerate() {
            per_projection_errors.push(f.errors as u32);
            if best.as_ref().is_none_or(|(_, b, _)| f.errors < b.errors) {
                let dir = block[offset * width..(offset + 1) * width].to_vec();
                best = Some((start + offset, f, dir));
            }
        }
        start += len;
    }

    let (best_index, f, direction) = best.expect("n >= 1");
    Ok(TarpModel {
        map,
        stump: ProjectionStump {
            direction,
            threshold: f.threshold,
            orientation: f.orientation,
            error_count: f.errors,
            sample_count: data.len(),
        },
        projections: n,
        seed,
        best_index,
        per_projection_errors,
    })
}

pub use model_io::{read_model, write_model};

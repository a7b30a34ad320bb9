//! Dichotomies realized by a single projection.
//!
//! Sweeping the threshold of one projection from −∞ to +∞ moves the projected
//! points, block by block, from the `s` side to the `−s` side. Consecutive
//! label vectors of the sweep therefore differ exactly in the points of one
//! block, i.e. in one coordinate when projected values are distinct.

use std::cmp::Ordering;

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};
use crate::tarp::dot;

/// Label vector a classifier assigns to a fixed list of points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dichotomy(pub Vec<Label>);

impl Dichotomy {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hamming(&self, other: &Dichotomy) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    /// Root-normalized Hamming distance `sqrt(hamming / N)`.
    pub fn distance(&self, other: &Dichotomy) -> f64 {
        (self.hamming(other) as f64 / self.len() as f64).sqrt()
    }
}

/// All distinct dichotomies produced by the threshold sweep along `direction`
/// with orientation `s`, in sweep order. `direction` must match the dataset's
/// dimension (apply any feature map beforehand).
pub fn dichotomy_chain(direction: &[f64], data: &Dataset, s: Label) -> Result<Vec<Dichotomy>> {
    if direction.len() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            got: direction.len(),
        });
    }
    let z: Vec<f64> = data.rows().map(|x| dot(direction, x)).collect();
    let mut order: Vec<usize> = (0..z.len()).collect();
    order.sort_by(|&a, &b| z[a].partial_cmp(&z[b]).unwrap_or(Ordering::Equal));

    let mut current = vec![s; z.len()];
    let mut chain = vec![Dichotomy(current.clone())];
    let mut i = 0;
    while i < order.len() {
        let v = z[order[i]];
        while i < order.len() && z[order[i]] == v {
            current[order[i]] = s.flip();
            i += 1;
        }
        chain.push(Dichotomy(current.clone()));
    }
    Ok(chain)
}

//! Labeled feature matrices for binary classification.

use std::fmt;

use crate::error::{Error, Result};

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Neg,
    Pos,
}

impl Label {
    pub fn from_sign(v: i64) -> Result<Label> {
        match v {
            1 => Ok(Label::Pos),
            -1 => Ok(Label::Neg),
            other => Err(Error::invalid(format!(
                "label must be -1 or +1, got {other}"
            ))),
        }
    }

    /// Sign of a real number with `sign(0) = +1`.
    #[inline]
    pub fn of_value(v: f64) -> Label {
        if v >= 0.0 {
            Label::Pos
        } else {
            Label::Neg
        }
    }

    #[inline]
    pub fn sign(self) -> i8 {
        match self {
            Label::Pos => 1,
            Label::Neg => -1,
        }
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        f64::from(self.sign())
    }

    #[inline]
    pub fn flip(self) -> Label {
        match self {
            Label::Pos => Label::Neg,
            Label::Neg => Label::Pos,
        }
    }

    /// `self` times `other`, treating labels as ±1.
    #[inline]
    pub fn times(self, other: Label) -> Label {
        if self == other {
            Label::Pos
        } else {
            Label::Neg
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign())
    }
}

/// `N` feature vectors of dimension `d` (row-major) with ±1 labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Vec<f64>,
    dim: usize,
    labels: Vec<Label>,
}

impl Dataset {
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Dataset> {
        let dim = rows.first().map(Vec::len).unwrap_or(0);
        let mut features = Vec::with_capacity(rows.len() * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            features.extend_from_slice(row);
        }
        Dataset::from_flat(features, dim, labels)
    }

    /// Builds a dataset from a row-major buffer of `labels.len() * dim` values.
    pub fn from_flat(features: Vec<f64>, dim: usize, labels: Vec<Label>) -> Result<Dataset> {
        if labels.is_empty() {
            return Err(Error::EmptyDataset(
                "a dataset needs at least one point".into(),
            ));
        }
        if dim == 0 {
            return Err(Error::invalid("feature dimension must be positive"));
        }
        if features.len() != labels.len() * dim {
            return Err(Error::DimensionMismatch {
                expected: labels.len() * dim,
                got: features.len(),
            });
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "feature {} of row {}",
                pos % dim,
                pos / dim
            )));
        }
        Ok(Dataset {
            features,
            dim,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.features.chunks_exact(self.dim)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Rows selected by `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Dataset> {
        let mut features = Vec::with_capacity(indices.len() * self.dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::invalid(format!(
                    "row index {i} out of range for {} rows",
                    self.len()
                )));
            }
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Dataset::from_flat(features, self.dim, labels)
    }

    /// Z-scores every column with the given means and scales. Columns with zero
    /// spread keep scale 1.
    pub fn standardized(&self, means: &[f64], scales: &[f64]) -> Result<Dataset> {
        if means.len() != self.dim || scales.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: means.len().min(scales.len()),
            });
        }
        let features = self
            .rows()
            .flat_map(|row| {
                row.iter()
                    .zip(means.iter().zip(scales))
                    .map(|(v, (m, s))| (v - m) / s)
            })
            .collect();
        Dataset::from_flat(features, self.dim, self.labels.clone())
    }

    /// Per-column mean and standard deviation (1 for constant columns).
    pub fn column_moments(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.len() as f64;
        let mut means = vec![0.0; self.dim];
        for row in self.rows() {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut vars = vec![0.0; self.dim];
        for row in self.rows() {
            for ((s, v), m) in vars.iter_mut().zip(row).zip(&means) {
                *s += (v - m) * (v - m);
            }
        }
        let scales = vars
            .into_iter()
            .map(|s| {
                let sd = (s / n).sqrt();
                if sd > 0.0 {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        (means, scales)
    }
}

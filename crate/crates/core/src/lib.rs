//! Thresholding after random projection (n-TARP) for binary classification.
//!
//! The classifier expands inputs with a polynomial feature map, projects the
//! expanded vectors onto `n` directions drawn uniformly from the unit sphere,
//! learns the best one-dimensional threshold on each projection and keeps the
//! best of the `n` stumps by training error.
//!
//! Besides the classifier the crate carries:
//!
//! * [`bounds`]: generalization-gap bounds (growth-function, expectation and
//!   chaining forms), the regularized incomplete beta function and the
//!   projection-count calculators built on top of them.
//! * [`synthetic`] and [`dataset_io`]: data sources used by the experiments.
//! * [`baselines`]: logistic regression and a linear SVM for comparison.
//! * [`harness`]: table and experiment generators emitting CSV.

pub mod baselines;
pub mod bounds;
pub mod dataset;
pub mod dataset_io;
mod error;
pub mod feature_map;
pub mod harness;
pub mod rng;
pub mod synthetic;
pub mod tarp;

pub use dataset::{Dataset, Label};
pub use error::{Error, Result};
pub use feature_map::PolyFeatureMap;
pub use tarp::{Classifier, ProjectionStump, TarpModel};

//! Linear comparison classifiers: logistic regression by full-batch gradient
//! descent and a soft-margin linear SVM trained with Pegasos.

use rand::seq::SliceRandom;

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};
use crate::rng;
use crate::tarp::Classifier;

/// `sign(w·x + b)` with `sign(0) = +1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearModel {
    pub fn zeros(dim: usize) -> LinearModel {
        LinearModel {
            weights: vec![0.0; dim],
            bias: 0.0,
        }
    }

    #[inline]
    pub fn margin(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }

    pub fn negated(&self) -> LinearModel {
        LinearModel {
            weights: self.weights.iter().map(|w| -w).collect(),
            bias: -self.bias,
        }
    }
}

impl Classifier for LinearModel {
    fn input_dim(&self) -> usize {
        self.weights.len()
    }

    fn classify(&self, x: &[f64]) -> Label {
        Label::of_value(self.margin(x))
    }
}

pub fn predict_linear(model: &LinearModel, x: &[f64]) -> Result<Label> {
    model.predict(x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    pub l2: f64,
    pub iters: usize,
    pub step: f64,
}

impl Default for LogisticParams {
    fn default() -> Self {
        LogisticParams {
            l2: 0.0,
            iters: 2000,
            step: 0.1,
        }
    }
}

/// `lambda` weighs `λ/2·‖(w, b)‖²` against the mean hinge loss. The default
/// `5e-3` equals `1/N` at 200 training points, i.e. unit weight on the summed
/// hinge loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    pub lambda: f64,
    pub epochs: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            lambda: 5e-3,
            epochs: 200,
        }
    }
}

/// Mean logistic loss plus `l2/2·‖w‖²` (bias unpenalized).
pub fn logistic_loss(model: &LinearModel, data: &Dataset, l2: f64) -> f64 {
    let n = data.len() as f64;
    let loss: f64 = data
        .rows()
        .zip(data.labels())
        .map(|(x, y)| softplus(-y.as_f64() * model.margin(x)))
        .sum::<f64>()
        / n;
    loss + 0.5 * l2 * model.weights.iter().map(|w| w * w).sum::<f64>()
}

/// `ln(1 + e^t)` without overflow.
fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

/// `1 / (1 + e^{-t})` without overflow.
fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// Full-batch gradient descent on the regularized logistic loss from zero.
pub fn fit_logistic(data: &Dataset, params: LogisticParams) -> Result<LinearModel> {
    if !(params.l2 >= 0.0 && params.step > 0.0 && params.step.is_finite()) {
        return Err(Error::invalid(
            "logistic regression needs l2 >= 0 and step > 0",
        ));
    }
    let n = data.len() as f64;
    let mut model = LinearModel::zeros(data.dim());
    let mut grad_w = vec![0.0; data.dim()];
    for _ in 0..params.iters {
        grad_w.iter_mut().for_each(|g| *g = 0.0);
        let mut grad_b = 0.0;
        for (x, y) in data.rows().zip(data.labels()) {
            let y = y.as_f64();
            // d/dm softplus(-y m) = -y σ(-y m)
            let coef = -y * sigmoid(-y * model.margin(x)) / n;
            grad_w.iter_mut().zip(x).for_each(|(g, v)| *g += coef * v);
            grad_b += coef;
        }
        for (w, g) in model.weights.iter_mut().zip(&grad_w) {
            *w -= params.step * (g + params.l2 * *w);
        }
        model.bias -= params.step * grad_b;
    }
    let loss = logistic_loss(&model, data, params.l2);
    if !loss.is_finite() || model.weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::NonFinite(format!(
            "logistic regression diverged; reduce the step size (step = {})",
            params.step
        )));
    }
    Ok(model)
}

/// `λ/2·‖(w, b)‖² + mean hinge loss`. The bias is treated as the weight of a
/// constant feature and therefore regularized.
pub fn svm_objective(model: &LinearModel, data: &Dataset, lambda: f64) -> f64 {
    let n = data.len() as f64;
    let hinge: f64 = data
        .rows()
        .zip(data.labels())
        .map(|(x, y)| (1.0 - y.as_f64() * model.margin(x)).max(0.0))
        .sum::<f64>()
        / n;
    let norm2 = model.weights.iter().map(|w| w * w).sum::<f64>() + model.bias * model.bias;
    0.5 * lambda * norm2 + hinge
}

/// Pegasos stochastic subgradient descent, one pass over a freshly shuffled
/// order per epoch, step `1/(λt)` and projection onto the `1/sqrt(λ)` ball.
pub fn fit_linear_svm(data: &Dataset, params: SvmParams, seed: u64) -> Result<LinearModel> {
    pegasos(data, params, seed, None)
}

/// As [`fit_linear_svm`], also returning after every epoch the objective of
/// the running average of all iterates so far.
pub fn fit_linear_svm_traced(
    data: &Dataset,
    params: SvmParams,
    seed: u64,
) -> Result<(LinearModel, Vec<f64>)> {
    let mut trace = Vec::with_capacity(params.epochs);
    let model = pegasos(data, params, seed, Some(&mut trace))?;
    Ok((model, trace))
}

fn pegasos(
    data: &Dataset,
    params: SvmParams,
    seed: u64,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<LinearModel> {
    let lambda = params.lambda;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid(format!(
            "SVM regularization must be > 0, got {lambda}"
        )));
    }
    let dim = data.dim();
    let radius = 1.0 / lambda.sqrt();
    let mut rng = rng::stream(seed);
    let mut order: Vec<usize> = (0..data.len()).collect();
    // weights with the bias as last coordinate
    let mut w = vec![0.0; dim + 1];
    let mut t: u64 = 0;
    let mut avg = vec![0.0; dim + 1];
    for _ in 0..params.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let x = data.row(i);
            let y = data.labels()[i].as_f64();
            let eta = 1.0 / (lambda * t as f64);
            let margin = y * (w[..dim].iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + w[dim]);
            let shrink = 1.0 - eta * lambda;
            w.iter_mut().for_each(|v| *v *= shrink);
            if margin < 1.0 {
                w[..dim]
                    .iter_mut()
                    .zip(x)
                    .for_each(|(v, xi)| *v += eta * y * xi);
                w[dim] += eta * y;
            }
            let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > radius {
                let s = radius / norm;
                w.iter_mut().for_each(|v| *v *= s);
            }
            avg.iter_mut().zip(&w).for_each(|(a, v)| *a += v);
        }
        if let Some(trace) = trace.as_deref_mut() {
            let k = t as f64;
            let m = LinearModel {
                weights: avg[..dim].iter().map(|a| a / k).collect(),
                bias: avg[dim] / k,
            };
            trace.push(svm_objective(&m, data, lambda));
        }
    }
    if w.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("linear SVM weights".into()));
    }
    let bias = w.pop().expect("bias coordinate");
    Ok(LinearModel { weights: w, bias })
}

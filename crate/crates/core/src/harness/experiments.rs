use rayon::prelude::*;

use crate::baselines::{fit_linear_svm, fit_logistic, LogisticParams, SvmParams};
use crate::bounds;
use crate::dataset::{Dataset, Label};
use crate::dataset_io::{relabel, split, DigitTask, LabeledDigits};
use crate::error::{Error, Result};
use crate::harness::{mean_std, num, Method, Table};
use crate::rng::derive_seed;
use crate::synthetic::{schedule, DEFAULT_DIM};
use crate::tarp::{self, empirical_error};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub train_size: usize,
    pub test_size: usize,
    pub projections: usize,
    pub order: usize,
    pub steps: usize,
    pub reps: usize,
    pub sigma: f64,
    pub delta: f64,
    pub seed: u64,
    pub standardize: bool,
    pub logistic: LogisticParams,
    pub svm: SvmParams,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            train_size: 200,
            test_size: 2000,
            projections: 10_000,
            order: 1,
            steps: 20,
            reps: 5,
            sigma: 0.0,
            delta: 0.1,
            seed: 0,
            standardize: false,
            logistic: LogisticParams::default(),
            svm: SvmParams::default(),
        }
    }
}

impl SyntheticConfig {
    /// Shrinks the projection count and repetitions tenfold (at least 1 each).
    pub fn quick(mut self) -> Self {
        self.projections = (self.projections / 10).max(1);
        self.reps = (self.reps / 10).max(1);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.train_size < 2 || self.test_size < 2 {
            return Err(Error::invalid("training and test sizes must be at least 2"));
        }
        if !self.train_size.is_multiple_of(2) || !self.test_size.is_multiple_of(2) {
            return Err(Error::invalid("training and test sizes must be even"));
        }
        if self.projections == 0 || self.reps == 0 {
            return Err(Error::invalid(
                "projections and repetitions must be at least 1",
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::invalid(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DigitsConfig {
    pub task: DigitTask,
    pub projections: usize,
    pub order: usize,
    pub train_size: usize,
    pub reps: usize,
    pub delta: f64,
    pub seed: u64,
    pub standardize: bool,
    pub logistic: LogisticParams,
    pub svm: SvmParams,
}

impl DigitsConfig {
    /// Defaults per task: 20000 projections for even_odd and small_large,
    /// 2000 projections and 100 training points for zero_one.
    pub fn preset(task: DigitTask) -> DigitsConfig {
        let (projections, train_size) = match task {
            DigitTask::EvenOdd | DigitTask::SmallLarge => (20_000, 200),
            DigitTask::ZeroOne => (2_000, 100),
        };
        DigitsConfig {
            task,
            projections,
            order: 1,
            train_size,
            reps: 10,
            delta: 0.1,
            seed: 0,
            standardize: false,
            logistic: LogisticParams::default(),
            svm: SvmParams::default(),
        }
    }

    pub fn quick(mut self) -> Self {
        self.projections = (self.projections / 10).max(1);
        self.reps = (self.reps / 10).max(1);
        self
    }
}

/// One method on one train/test draw.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Schedule step index or task name.
    pub group: String,
    pub rep: usize,
    pub method: Method,
    pub train_error: f64,
    pub test_error: f64,
    /// `test_error − train_error`.
    pub gap: f64,
    /// High-probability gap bound of the method's class at the run's settings.
    pub bound: f64,
}

/// Mean and sample standard deviation over the repetitions of one group.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRecord {
    pub group: String,
    pub method: Method,
    pub train: (f64, f64),
    pub test: (f64, f64),
    pub gap: (f64, f64),
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    /// Header of the group column, `step` or `task`.
    pub group_column: &'static str,
    pub seed: u64,
    pub runs: Vec<RunRecord>,
    pub summaries: Vec<SummaryRecord>,
}

impl ExperimentReport {
    fn new(group_column: &'static str, seed: u64, runs: Vec<RunRecord>) -> ExperimentReport {
        let mut summaries = Vec::new();
        let mut groups: Vec<&str> = Vec::new();
        for r in &runs {
            if !groups.contains(&r.group.as_str()) {
                groups.push(&r.group);
            }
        }
        for g in groups {
            for method in Method::ALL {
                let sel: Vec<&RunRecord> = runs
                    .iter()
                    .filter(|r| r.group == g && r.method == method)
                    .collect();
                if sel.is_empty() {
                    continue;
                }
                let col = |f: fn(&RunRecord) -> f64| {
                    mean_std(&sel.iter().map(|r| f(r)).collect::<Vec<_>>())
                };
                summaries.push(SummaryRecord {
                    group: g.to_string(),
                    method,
                    train: col(|r| r.train_error),
                    test: col(|r| r.test_error),
                    gap: col(|r| r.gap),
                    bound: sel[0].bound,
                });
            }
        }
        ExperimentReport {
            group_column,
            seed,
            runs,
            summaries,
        }
    }

    pub fn summary(&self, group: &str, method: Method) -> Option<&SummaryRecord> {
        self.summaries
            .iter()
            .find(|s| s.group == group && s.method == method)
    }

    /// Per-run rows (`stat = run`) followed by `mean` and `std` rows per group
    /// and method.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new([
            self.group_column,
            "stat",
            "rep",
            "seed",
            "method",
            "train_error",
            "test_error",
            "gap",
            "bound",
        ]);
        for r in &self.runs {
            t.push(vec![
                r.group.clone(),
                "run".into(),
                r.rep.to_string(),
                self.seed.to_string(),
                r.method.to_string(),
                num(r.train_error),
                num(r.test_error),
                num(r.gap),
                num(r.bound),
            ]);
        }
        for s in &self.summaries {
            for (stat, pick) in [("mean", 0), ("std", 1)] {
                let get = |p: (f64, f64)| if pick == 0 { p.0 } else { p.1 };
                t.push(vec![
                    s.group.clone(),
                    stat.into(),
                    String::new(),
                    self.seed.to_string(),
                    s.method.to_string(),
                    num(get(s.train)),
                    num(get(s.test)),
                    num(get(s.gap)),
                    num(s.bound),
                ]);
            }
        }
        t
    }
}

/// Fit settings and gap bounds shared by every run of one experiment.
struct Methods {
    order: usize,
    projections: usize,
    logistic: LogisticParams,
    svm: SvmParams,
    tarp_bound: f64,
    linear_bound: f64,
}

struct RunSeeds {
    tarp: u64,
    svm: u64,
}

/// Trains the three methods on `train` and scores them on `test`.
fn run_methods(
    group: &str,
    rep: usize,
    train: &Dataset,
    test: &Dataset,
    methods: &Methods,
    seeds: RunSeeds,
) -> Result<Vec<RunRecord>> {
    let record = |method, train_error: f64, test_error: f64, bound| RunRecord {
        group: group.to_string(),
        rep,
        method,
        train_error,
        test_error,
        gap: test_error - train_error,
        bound,
    };
    let model = tarp::fit(train, methods.order, methods.projections, seeds.tarp)?;
    let lr = fit_logistic(train, methods.logistic)?;
    let sv = fit_linear_svm(train, methods.svm, seeds.svm)?;
    Ok(vec![
        record(
            Method::Tarp,
            model.train_error(),
            empirical_error(&model, test)?,
            methods.tarp_bound,
        ),
        record(
            Method::Logistic,
            empirical_error(&lr, train)?,
            empirical_error(&lr, test)?,
            methods.linear_bound,
        ),
        record(
            Method::LinearSvm,
            empirical_error(&sv, train)?,
            empirical_error(&sv, test)?,
            methods.linear_bound,
        ),
    ])
}

fn maybe_standardize(train: Dataset, test: Dataset, on: bool) -> Result<(Dataset, Dataset)> {
    if !on {
        return Ok((train, test));
    }
    let (means, scales) = train.column_moments();
    Ok((
        train.standardized(&means, &scales)?,
        test.standardized(&means, &scales)?,
    ))
}

/// Bernoulli mixture sweep: `steps` models from indistinguishable classes
/// (step 0) to well separated ones, `reps` fresh train/test draws per step.
pub fn synthetic(config: &SyntheticConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let models = schedule(config.steps, config.sigma)?;
    let methods = Methods {
        order: config.order,
        projections: config.projections,
        logistic: config.logistic,
        svm: config.svm,
        tarp_bound: bounds::tarp_gap_bound(
            config.train_size as f64,
            config.projections as f64,
            config.delta,
        )?,
        linear_bound: bounds::vc_gap_bound(
            config.train_size as f64,
            DEFAULT_DIM as f64 + 1.0,
            config.delta,
        )?,
    };
    let jobs: Vec<(usize, usize)> = (0..config.steps)
        .flat_map(|s| (0..config.reps).map(move |r| (s, r)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(step, rep)| {
            let path = |purpose: u64| derive_seed(config.seed, &[step as u64, rep as u64, purpose]);
            let model = &models[step];
            let train = model.sample(config.train_size, path(0))?;
            let test = model.sample(config.test_size, path(1))?;
            let (train, test) = maybe_standardize(train, test, config.standardize)?;
            run_methods(
                &step.to_string(),
                rep,
                &train,
                &test,
                &methods,
                RunSeeds {
                    tarp: path(2),
                    svm: path(3),
                },
            )
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ExperimentReport::new("step", config.seed, runs))
}

/// Random train/test splits of one digit task, `reps` times.
pub fn digits(corpus: &LabeledDigits, config: &DigitsConfig) -> Result<ExperimentReport> {
    if config.projections == 0 || config.reps == 0 {
        return Err(Error::invalid(
            "projections and repetitions must be at least 1",
        ));
    }
    let data = relabel(corpus, config.task)?;
    let train_n = config.train_size as f64;
    let methods = Methods {
        order: config.order,
        projections: config.projections,
        logistic: config.logistic,
        svm: config.svm,
        tarp_bound: bounds::tarp_gap_bound(train_n, config.projections as f64, config.delta)?,
        linear_bound: bounds::vc_gap_bound(train_n, data.dim() as f64 + 1.0, config.delta)?,
    };
    let name = config.task.name();
    let runs = (0..config.reps)
        .into_par_iter()
        .map(|rep| {
            let path = |purpose: u64| derive_seed(config.seed, &[rep as u64, purpose]);
            let (train, test) = split(&data, config.train_size, path(0))?;
            let (train, test) = maybe_standardize(train, test, config.standardize)?;
            run_methods(
                name,
                rep,
                &train,
                &test,
                &methods,
                RunSeeds {
                    tarp: path(1),
                    svm: path(2),
                },
            )
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ExperimentReport::new("task", config.seed, runs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroTrainDataset {
    /// `(±1, ±1)` labelled by the sign of `x1·x2`.
    Xor,
    /// 20 points on two interleaved half circles.
    Arcs,
}

impl ZeroTrainDataset {
    pub fn name(self) -> &'static str {
        match self {
            ZeroTrainDataset::Xor => "xor",
            ZeroTrainDataset::Arcs => "arcs",
        }
    }

    pub fn build(self) -> Dataset {
        let (rows, labels): (Vec<Vec<f64>>, Vec<Label>) = match self {
            ZeroTrainDataset::Xor => [(1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0)]
                .into_iter()
                .map(|(a, b)| (vec![a, b], Label::of_value(a * b)))
                .unzip(),
            ZeroTrainDataset::Arcs => (0..10)
                .flat_map(|j| {
                    let t = std::f64::consts::PI * j as f64 / 9.0;
                    [
                        (vec![t.cos(), t.sin()], Label::Pos),
                        (vec![1.0 - t.cos(), 0.5 - t.sin()], Label::Neg),
                    ]
                })
                .unzip(),
        };
        Dataset::new(rows, labels).expect("built-in dataset is well formed")
    }
}

impl std::str::FromStr for ZeroTrainDataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xor" => Ok(ZeroTrainDataset::Xor),
            "arcs" => Ok(ZeroTrainDataset::Arcs),
            other => Err(Error::invalid(format!(
                "unknown dataset `{other}` (expected xor or arcs)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTrainConfig {
    pub dataset: ZeroTrainDataset,
    pub max_order: usize,
    pub projections: usize,
    pub seed: u64,
}

impl Default for ZeroTrainConfig {
    fn default() -> Self {
        ZeroTrainConfig {
            dataset: ZeroTrainDataset::Arcs,
            max_order: 6,
            projections: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTrainReport {
    pub config: ZeroTrainConfig,
    /// `(k, n, training error of the best of the first n projections)`.
    pub grid: Vec<(usize, usize, f64)>,
    /// Smallest order reaching zero training error with all projections.
    pub smallest_zero_order: Option<usize>,
}

impl ZeroTrainReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["dataset", "seed", "k", "n", "train_error"]);
        for &(k, n, e) in &self.grid {
            t.push(vec![
                self.config.dataset.name().into(),
                self.config.seed.to_string(),
                k.to_string(),
                n.to_string(),
                num(e),
            ]);
        }
        t
    }
}

/// Training error over a `(k, n)` grid with `k = 1..=max_order` and `n` the
/// powers of ten below the projection budget plus the budget itself. One fit
/// per order; smaller `n` read off its prefix minima.
pub fn zero_train(config: &ZeroTrainConfig) -> Result<ZeroTrainReport> {
    if config.max_order == 0 || config.projections == 0 {
        return Err(Error::invalid("order and projections must be at least 1"));
    }
    let data = config.dataset.build();
    let mut ns: Vec<usize> = std::iter::successors(Some(1usize), |n| n.checked_mul(10))
        .take_while(|&n| n < config.projections)
        .collect();
    ns.push(config.projections);

    let mut grid = Vec::new();
    let mut smallest_zero_order = None;
    for k in 1..=config.max_order {
        let model = tarp::fit(&data, k, config.projections, config.seed)?;
        let mut running = u32::MAX;
        let prefix_min: Vec<u32> = model
            .per_projection_errors
            .iter()
            .map(|&e| {
                running = running.min(e);
                running
            })
            .collect();
        for &n in &ns {
            grid.push((k, n, prefix_min[n - 1] as f64 / data.len() as f64));
        }
        if model.stump.error_count == 0 && smallest_zero_order.is_none() {
            smallest_zero_order = Some(k);
        }
    }
    Ok(ZeroTrainReport {
        config: config.clone(),
        grid,
        smallest_zero_order,
    })
}

//! `ntarp` command-line harness: bound tables, figure data and experiments as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ntarp::bounds::{BoundConfig, BoundReport};
use ntarp::dataset_io::{load_optdigits_files, DigitTask};
use ntarp::harness::{
    self, DigitsConfig, SyntheticConfig, Table, ZeroTrainConfig, ZeroTrainDataset,
};
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(
    name = "ntarp",
    version,
    about = "Thresholding after random projection: bounds, tables and experiments",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Gap bounds of n-TARP (k = 1) next to affine classifiers, per input dimension
    BoundsTable,
    /// Largest n for which the n-TARP chaining bound beats the VC chaining bound
    BudgetTable,
    /// Expected-gap bounds as a function of n, with VC reference curves
    GapCurve,
    /// Bernoulli mixture experiment over a schedule of class separations
    Synthetic,
    /// Train/test splits of a digit classification task
    Digits,
    /// Training error on a small built-in set over a grid of orders and projection counts
    ZeroTrain,
    /// Projection count beyond which the affine-class bound is tighter
    Crossover,
    /// Every bound for one configuration, as name,value rows
    Report,
}

/// Flags shared by all subcommands. Unset flags fall back to `--config`,
/// then to the subcommand's defaults.
#[derive(clap::Args, Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct Options {
    /// TOML file with any of these options (flags take precedence)
    #[arg(long, global = true)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// Number of projections (maximum n for gap-curve)
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Polynomial order (maximum order for zero-train)
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// Training-set size N used in bound formulas
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    reps: Option<usize>,
    #[arg(long, global = true)]
    sigma: Option<f64>,
    #[arg(long, global = true)]
    steps: Option<usize>,
    #[arg(long, global = true)]
    train_size: Option<usize>,
    #[arg(long, global = true)]
    test_size: Option<usize>,
    /// Input dimensions, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    d: Option<Vec<usize>>,
    /// VC dimensions, comma separated (maximum only for budget-table)
    #[arg(long, global = true, value_delimiter = ',')]
    vc: Option<Vec<u64>>,
    /// even_odd, small_large or zero_one
    #[arg(long, global = true)]
    task: Option<String>,
    /// xor or arcs
    #[arg(long, global = true)]
    dataset: Option<String>,
    /// Digit corpus file; repeat to concatenate several files
    #[arg(long, global = true)]
    data: Option<Vec<PathBuf>>,
    /// Write CSV here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Divide projections and repetitions by 10
    #[arg(long, global = true)]
    #[serde(default)]
    quick: bool,
    /// Z-score features with training-set moments before fitting
    #[arg(long, global = true)]
    #[serde(default)]
    standardize: bool,
    /// Require the digit corpus to match the 1797-image reference counts
    #[arg(long, global = true)]
    #[serde(default)]
    check_corpus: bool,
}

macro_rules! merge_fields {
    ($dst:ident, $src:ident; $($opt:ident),*; $($flag:ident),*) => {
        $( if $dst.$opt.is_none() { $dst.$opt = $src.$opt; } )*
        $( $dst.$flag |= $src.$flag; )*
    };
}

impl Options {
    fn merged_with(mut self, file: Options) -> Options {
        merge_fields!(self, file;
            n, k, delta, samples, seed, reps, sigma, steps, train_size, test_size,
            d, vc, task, dataset, data, out;
            quick, standardize, check_corpus);
        self
    }
}

enum Failure {
    Config(String),
    Data(String),
}

impl From<ntarp::Error> for Failure {
    fn from(e: ntarp::Error) -> Failure {
        if e.is_data_error() {
            Failure::Data(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

fn load_config(path: &Path) -> Result<Options, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn default_data_path() -> PathBuf {
    std::env::var_os("OPTDIGITS_PATH")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data/optdigits.csv"))
}

fn run(command: Command, o: &Options) -> Result<Table, Failure> {
    let delta = o.delta.unwrap_or(0.1);
    let table = match command {
        Command::BoundsTable => {
            let dims = o.d.clone().unwrap_or_else(|| (2..=10).collect());
            harness::bounds_table(delta, o.samples.unwrap_or(10_000) as f64, &dims)?.1
        }
        Command::BudgetTable => {
            let max = match o.vc.as_deref() {
                None => 5,
                Some(&[m]) => m,
                Some(_) => {
                    return Err(Failure::Config(
                        "budget-table takes a single --vc maximum".into(),
                    ))
                }
            };
            harness::budget_table(max)?.1
        }
        Command::GapCurve => {
            let vc = o.vc.clone().unwrap_or_else(|| vec![2, 3]);
            harness::gap_curve(
                o.samples.unwrap_or(10_000) as f64,
                o.n.unwrap_or(1000) as u64,
                &vc,
            )?
            .1
        }
        Command::Synthetic => {
            let base = SyntheticConfig::default();
            let mut cfg = SyntheticConfig {
                train_size: o.train_size.unwrap_or(base.train_size),
                test_size: o.test_size.unwrap_or(base.test_size),
                projections: o.n.unwrap_or(base.projections),
                order: o.k.unwrap_or(base.order),
                steps: o.steps.unwrap_or(base.steps),
                reps: o.reps.unwrap_or(base.reps),
                sigma: o.sigma.unwrap_or(base.sigma),
                delta,
                seed: o.seed.unwrap_or(base.seed),
                standardize: o.standardize,
                ..base
            };
            if o.quick {
                cfg = cfg.quick();
            }
            harness::synthetic(&cfg)?.to_table()
        }
        Command::Digits => {
            let task: DigitTask = o
                .task
                .as_deref()
                .ok_or_else(|| Failure::Config("digits needs --task".into()))?
                .parse()?;
            let paths = o.data.clone().unwrap_or_else(|| vec![default_data_path()]);
            let corpus = load_optdigits_files(&paths).map_err(|e| match Failure::from(e) {
                Failure::Data(msg) => {
                    let names: Vec<_> = paths.iter().map(|p| p.display().to_string()).collect();
                    Failure::Data(format!("{}: {msg}", names.join(", ")))
                }
                other => other,
            })?;
            if o.check_corpus {
                corpus.check_reference_corpus()?;
            }
            let base = DigitsConfig::preset(task);
            let mut cfg = DigitsConfig {
                projections: o.n.unwrap_or(base.projections),
                order: o.k.unwrap_or(base.order),
                train_size: o.train_size.unwrap_or(base.train_size),
                reps: o.reps.unwrap_or(base.reps),
                delta,
                seed: o.seed.unwrap_or(base.seed),
                standardize: o.standardize,
                ..base
            };
            if o.quick {
                cfg = cfg.quick();
            }
            harness::digits(&corpus, &cfg)?.to_table()
        }
        Command::ZeroTrain => {
            let base = ZeroTrainConfig::default();
            let dataset: ZeroTrainDataset = match &o.dataset {
                Some(s) => s.parse()?,
                None => base.dataset,
            };
            let mut projections = o.n.unwrap_or(base.projections);
            if o.quick {
                projections = (projections / 10).max(1);
            }
            let cfg = ZeroTrainConfig {
                dataset,
                max_order: o.k.unwrap_or(base.max_order),
                projections,
                seed: o.seed.unwrap_or(base.seed),
            };
            let report = harness::zero_train(&cfg)?;
            match report.smallest_zero_order {
                Some(k) => {
                    eprintln!("smallest order with zero training error at n = {projections}: {k}")
                }
                None => eprintln!(
                    "no order up to {} reached zero training error",
                    cfg.max_order
                ),
            }
            report.to_table()
        }
        Command::Crossover => {
            let dims: Vec<u64> = match &o.d {
                Some(d) => d.iter().map(|&v| v as u64).collect(),
                None => vec![1, 2, 3, 5],
            };
            harness::crossover_table(o.samples.unwrap_or(1000) as f64, &dims)?.1
        }
        Command::Report => {
            let dim = match o.d.as_deref() {
                None => 2,
                Some(&[d]) => d,
                Some(_) => return Err(Failure::Config("report takes a single --d".into())),
            };
            let vc_dim = match o.vc.as_deref() {
                None => dim as u64 + 1,
                Some(&[v]) => v,
                Some(_) => return Err(Failure::Config("report takes a single --vc".into())),
            };
            let report = BoundReport::compute(BoundConfig {
                samples: o.samples.unwrap_or(10_000),
                projections: o.n.unwrap_or(1000) as u64,
                dim,
                order: o.k.unwrap_or(1),
                vc_dim,
                delta,
            })?;
            let mut t = Table::new(["bound", "value"]);
            for (name, v) in &report.values {
                t.push(vec![name.to_string(), v.to_string()]);
            }
            t
        }
    };
    Ok(table)
}

fn emit(table: &Table, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::Config(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table.write_csv(&mut w)?;
            w.flush().map_err(|e| Failure::Config(e.to_string()))?;
        }
        None => table.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let opts = match &cli.opts.config {
            Some(path) => cli.opts.clone().merged_with(load_config(path)?),
            None => cli.opts.clone(),
        };
        let table = run(cli.command, &opts)?;
        emit(&table, opts.out.as_deref())
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("data error: {msg}");
            ExitCode::from(3)
        }
    }
}

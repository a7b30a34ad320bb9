//! Table and experiment generators behind the command-line harness.
//!
//! Every generator returns typed rows plus a [`Table`] view with a stable
//! header. Numbers are written in shortest round-trip decimal form. Runs that
//! use randomness derive all of their streams from one base seed, which is
//! repeated in a `seed` column on every row.

mod experiments;
mod tables;

use std::fmt;
use std::io::Write;

use crate::error::Result;

pub use experiments::{
    digits, synthetic, zero_train, DigitsConfig, ExperimentReport, RunRecord, SummaryRecord,
    SyntheticConfig, ZeroTrainConfig, ZeroTrainDataset, ZeroTrainReport,
};
pub use tables::{
    bounds_table, budget_table, crossover_table, gap_curve, BoundsRow, BudgetRow, CrossoverRow,
    GapCurveRow, REFERENCE_PROJECTIONS,
};

/// Header plus string cells, ready to be written as CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Table {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    /// Column index by header name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

pub(crate) fn num(v: f64) -> String {
    v.to_string()
}

/// Classifiers compared in the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Tarp,
    Logistic,
    LinearSvm,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Tarp, Method::Logistic, Method::LinearSvm];

    pub fn name(self) -> &'static str {
        match self {
            Method::Tarp => "ntarp",
            Method::Logistic => "logistic",
            Method::LinearSvm => "linear_svm",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Mean and sample standard deviation (0 for fewer than two values).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

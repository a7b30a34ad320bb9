use std::collections::BTreeMap;

use crate::bounds;
use crate::error::{Error, Result};

/// Parameters shared by the bound calculators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConfig {
    pub samples: u64,
    pub projections: u64,
    pub dim: usize,
    pub order: usize,
    pub vc_dim: u64,
    pub delta: f64,
}

impl BoundConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 || self.projections == 0 || self.vc_dim == 0 || self.dim == 0 {
            return Err(Error::invalid(
                "samples, projections, dimension and VC dimension must be positive",
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

/// Every bound evaluated for one configuration, keyed by name.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub config: BoundConfig,
    pub values: BTreeMap<&'static str, f64>,
}

impl BoundReport {
    pub fn compute(config: BoundConfig) -> Result<BoundReport> {
        config.validate()?;
        let n_samples = config.samples as f64;
        let n_proj = config.projections as f64;
        let vc = config.vc_dim as f64;
        let delta = config.delta;

        let mut values = BTreeMap::new();
        values.insert(
            "tarp_gap",
            bounds::tarp_gap_bound(n_samples, n_proj, delta)?,
        );
        values.insert("vc_gap", bounds::vc_gap_bound(n_samples, vc, delta)?);
        values.insert(
            "combined_gap",
            bounds::combined_gap_bound(n_samples, n_proj, config.dim, delta)?,
        );
        values.insert("crossover_n", bounds::crossover_n(n_samples, vc)?);
        values.insert(
            "tarp_expected_gap",
            bounds::tarp_expected_gap_bound(n_samples, n_proj)?,
        );
        values.insert(
            "vc_expected_gap_sauer",
            bounds::vc_expected_gap_bound_sauer(n_samples, vc)?,
        );
        values.insert(
            "chaining_tarp",
            bounds::chaining_tarp_bound(n_samples, n_proj)?,
        );
        values.insert("chaining_vc", bounds::chaining_vc_bound(n_samples, vc)?);
        values.insert("ratio_limit", bounds::ratio_limit(n_proj, vc)?);
        values.insert(
            "max_projections_for_vc",
            bounds::max_projections_for_vc(vc)?,
        );
        values.insert(
            "hoeffding_deviation",
            bounds::hoeffding_deviation(n_samples, delta)?,
        );
        if let Ok(n) = bounds::required_projections(config.dim, config.order, delta) {
            values.insert("required_projections", n);
        }
        if let Some((name, v)) = values.iter().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::NonFinite(format!("bound `{name}` evaluated to {v}")));
        }
        Ok(BoundReport { config, values })
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }
}

use crate::bounds;
use crate::error::{Error, Result};
use crate::harness::{num, Table};

/// Reference projection counts for input dimensions 2..=10 shown in the bound
/// comparison table. They sit well below [`bounds::required_projections`].
pub const REFERENCE_PROJECTIONS: [(usize, u64); 9] = [
    (2, 25),
    (3, 117),
    (4, 592),
    (5, 3278),
    (6, 19664),
    (7, 126414),
    (8, 863981),
    (9, 6236483),
    (10, 47292177),
];

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub dim: usize,
    /// `required_projections(d, 1, δ)`, `None` when it overflows.
    pub n_required: Option<f64>,
    pub tarp_gap_required: Option<f64>,
    pub n_reference: Option<u64>,
    pub tarp_gap_reference: Option<f64>,
    /// Gap bound of the affine class, VC dimension `d + 1`.
    pub affine_gap: f64,
}

/// n-TARP versus affine-class gap bounds for `k = 1` and each input dimension.
pub fn bounds_table(delta: f64, samples: f64, dims: &[usize]) -> Result<(Vec<BoundsRow>, Table)> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::invalid(
            "dimensions must be non-empty and at least 1",
        ));
    }
    let mut rows = Vec::new();
    for &dim in dims {
        let n_required = match bounds::required_projections(dim, 1, delta) {
            Ok(n) => Some(n),
            Err(Error::Overflow(_)) => None,
            Err(e) => return Err(e),
        };
        let tarp_gap_required = n_required
            .map(|n| bounds::tarp_gap_bound(samples, n.max(1.0), delta))
            .transpose()?;
        let n_reference = REFERENCE_PROJECTIONS
            .iter()
            .find(|(d, _)| *d == dim)
            .map(|&(_, n)| n);
        let tarp_gap_reference = n_reference
            .map(|n| bounds::tarp_gap_bound(samples, n as f64, delta))
            .transpose()?;
        rows.push(BoundsRow {
            dim,
            n_required,
            tarp_gap_required,
            n_reference,
            tarp_gap_reference,
            affine_gap: bounds::vc_gap_bound(samples, dim as f64 + 1.0, delta)?,
        });
    }

    let mut table = Table::new([
        "d",
        "delta",
        "samples",
        "n_required",
        "tarp_gap_n_required",
        "n_reference",
        "tarp_gap_n_reference",
        "affine_gap_vc_d_plus_1",
    ]);
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    for r in &rows {
        table.push(vec![
            r.dim.to_string(),
            num(delta),
            num(samples),
            opt(r.n_required),
            opt(r.tarp_gap_required),
            r.n_reference.map(|n| n.to_string()).unwrap_or_default(),
            opt(r.tarp_gap_reference),
            num(r.affine_gap),
        ]);
    }
    Ok((rows, table))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetRow {
    pub vc_dim: u64,
    pub max_projections: f64,
    pub floor: f64,
}

/// Largest projection counts keeping the n-TARP chaining bound below the
/// classical chaining bound, for VC dimensions `1..=max_vc`.
pub fn budget_table(max_vc: u64) -> Result<(Vec<BudgetRow>, Table)> {
    if max_vc == 0 {
        return Err(Error::invalid("maximum VC dimension must be at least 1"));
    }
    let rows = (1..=max_vc)
        .map(|vc| {
            let n = bounds::max_projections_for_vc(vc as f64)?;
            Ok(BudgetRow {
                vc_dim: vc,
                max_projections: n,
                floor: n.floor(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(["vc_dim", "max_projections", "max_projections_floor"]);
    for r in &rows {
        table.push(vec![
            r.vc_dim.to_string(),
            num(r.max_projections),
            num(r.floor),
        ]);
    }
    Ok((rows, table))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapCurveRow {
    pub projections: u64,
    pub tarp: f64,
    /// `(vc_dim, polynomial Sauer form, exponential Sauer form)`.
    pub vc: Vec<(u64, f64, f64)>,
}

/// Expected-gap bounds of n-TARP for `n = 1..=n_max` next to the VC bounds.
pub fn gap_curve(samples: f64, n_max: u64, vc_dims: &[u64]) -> Result<(Vec<GapCurveRow>, Table)> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let vc = vc_dims
        .iter()
        .map(|&d| {
            Ok((
                d,
                bounds::vc_expected_gap_bound_sauer(samples, d as f64)?,
                bounds::vc_expected_gap_bound_exp(samples, d as f64)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = (1..=n_max)
        .map(|n| {
            Ok(GapCurveRow {
                projections: n,
                tarp: bounds::tarp_expected_gap_bound(samples, n as f64)?,
                vc: vc.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut header = vec![
        "n".to_string(),
        "samples".into(),
        "tarp_expected_gap".into(),
    ];
    for &d in vc_dims {
        header.push(format!("vc{d}_sauer"));
        header.push(format!("vc{d}_exp"));
    }
    let mut table = Table::new(header);
    for r in &rows {
        let mut cells = vec![r.projections.to_string(), num(samples), num(r.tarp)];
        for &(_, s, e) in &r.vc {
            cells.push(num(s));
            cells.push(num(e));
        }
        table.push(cells);
    }
    Ok((rows, table))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverRow {
    pub dim: u64,
    pub exponent: u64,
    pub crossover: f64,
    pub note: &'static str,
}

/// Crossover projection counts for inputs in `R^d` under both exponent readings.
pub fn crossover_table(samples: f64, dims: &[u64]) -> Result<(Vec<CrossoverRow>, Table)> {
    let mut rows = Vec::new();
    for &d in dims {
        if d == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        rows.push(CrossoverRow {
            dim: d,
            exponent: d,
            crossover: bounds::crossover_n(samples, d as f64)?,
            note: "exponent d; one below the VC dimension of affine classifiers in R^d",
        });
        rows.push(CrossoverRow {
            dim: d,
            exponent: d + 1,
            crossover: bounds::crossover_n(samples, d as f64 + 1.0)?,
            note: "exponent d+1; the VC dimension of affine classifiers in R^d",
        });
    }
    let mut table = Table::new(["d", "samples", "exponent", "crossover_n", "note"]);
    for r in &rows {
        table.push(vec![
            r.dim.to_string(),
            num(samples),
            r.exponent.to_string(),
            num(r.crossover),
            r.note.to_string(),
        ]);
    }
    Ok((rows, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_table_reference_rows() {
        let (rows, table) = bounds_table(0.1, 1e4, &(2..=10).collect::<Vec<_>>()).unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(table.rows.len(), 9);
        let r2 = &rows[0];
        assert!((r2.tarp_gap_reference.unwrap() - 0.118).abs() < 5e-4);
        assert!((r2.affine_gap - 0.163).abs() < 5e-4);
        assert!((r2.n_required.unwrap() - 164.92).abs() < 0.01);
        let r6 = &rows[4];
        assert_eq!(r6.n_reference, Some(19664));
        assert!((r6.tarp_gap_reference.unwrap() - 0.139).abs() < 5e-4);
        assert!((r6.affine_gap - 0.230).abs() < 5e-4);
        let r10 = &rows[8];
        assert!((r10.tarp_gap_reference.unwrap() - 0.160).abs() < 5e-4);
        assert!((r10.affine_gap - 0.279).abs() < 5e-4);
        assert!(bounds_table(0.1, 1e4, &[0, 3]).is_err());
    }

    #[test]
    fn budget_rows() {
        let (rows, _) = budget_table(5).unwrap();
        let floors: Vec<f64> = rows.iter().map(|r| r.floor).collect();
        assert_eq!(floors[0], 3.0);
        assert_eq!(floors[1], 115.0);
        assert_eq!(floors[3], 1_487_935.0);
        assert_eq!(floors[4], 281_672_459.0);
    }

    #[test]
    fn gap_curve_shape() {
        let (rows, table) = gap_curve(1e4, 1000, &[2, 3]).unwrap();
        assert_eq!(rows.len(), 1000);
        assert_eq!(
            table.header,
            vec![
                "n",
                "samples",
                "tarp_expected_gap",
                "vc2_sauer",
                "vc2_exp",
                "vc3_sauer",
                "vc3_exp"
            ]
        );
        assert!(rows.windows(2).all(|w| w[1].tarp > w[0].tarp));
        assert!(rows.iter().all(|r| r.tarp < r.vc[0].1));
    }

    #[test]
    fn crossover_both_readings() {
        let (rows, table) = crossover_table(1000.0, &[1, 2]).unwrap();
        assert_eq!(rows.len(), 4);
        assert!((rows[0].crossover - 1.359).abs() < 1e-3);
        assert_eq!(rows[1].exponent, 2);
        assert_eq!(rows[2].exponent, 2);
        assert!((rows[1].crossover - rows[2].crossover).abs() < 1e-9);
        assert_eq!(table.header[4], "note");
    }
}

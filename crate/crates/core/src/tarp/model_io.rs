//! Plain-text model files.
//!
//! One `key value...` pair per line, keys in fixed order, numbers in shortest
//! round-trip decimal form:
//!
//! ```text
//! ntarp-model 1
//! input_dim 2
//! order 2
//! projections 500
//! seed 42
//! best_index 17
//! sample_count 4
//! error_count 0
//! orientation 1
//! threshold 0.1234
//! direction 0.5 -0.25 ...
//! per_projection_errors 2 1 0 ...
//! ```
//!
//! The monomial table is rebuilt from `input_dim` and `order` on load.

use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::feature_map::PolyFeatureMap;
use crate::tarp::{ProjectionStump, TarpModel};

const MAGIC: &str = "ntarp-model";
const VERSION: u32 = 1;

pub fn write_model<W: Write>(model: &TarpModel, mut w: W) -> Result<()> {
    let s = &model.stump;
    writeln!(w, "{MAGIC} {VERSION}")?;
    writeln!(w, "input_dim {}", model.map.input_dim())?;
    writeln!(w, "order {}", model.map.order())?;
    writeln!(w, "projections {}", model.projections)?;
    writeln!(w, "seed {}", model.seed)?;
    writeln!(w, "best_index {}", model.best_index)?;
    writeln!(w, "sample_count {}", s.sample_count)?;
    writeln!(w, "error_count {}", s.error_count)?;
    writeln!(w, "orientation {}", s.orientation)?;
    writeln!(w, "threshold {}", s.threshold)?;
    write!(w, "direction")?;
    for v in &s.direction {
        write!(w, " {v}")?;
    }
    writeln!(w)?;
    write!(w, "per_projection_errors")?;
    for e in &model.per_projection_errors {
        write!(w, " {e}")?;
    }
    writeln!(w)?;
    Ok(())
}

pub fn read_model<R: BufRead>(r: R) -> Result<TarpModel> {
    let mut lines = r.lines().enumerate();
    let mut next = |key: &str| -> Result<(usize, Vec<String>)> {
        let (i, line) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of file, expected `{key}`"),
        })?;
        let line = line?;
        let mut parts = line.split_whitespace().map(str::to_owned);
        match parts.next() {
            Some(k) if k == key => Ok((i + 1, parts.collect())),
            other => Err(Error::Parse {
                line: i + 1,
                msg: format!("expected `{key}`, found `{}`", other.unwrap_or_default()),
            }),
        }
    };

    let (line, version) = next(MAGIC)?;
    if version.len() != 1 || parse_one::<u32>(line, &version)? != VERSION {
        return Err(Error::Parse {
            line,
            msg: format!("unsupported model version {version:?}"),
        });
    }
    let input_dim: usize = scalar(&mut next, "input_dim")?;
    let order: usize = scalar(&mut next, "order")?;
    let projections: usize = scalar(&mut next, "projections")?;
    let seed: u64 = scalar(&mut next, "seed")?;
    let best_index: usize = scalar(&mut next, "best_index")?;
    let sample_count: usize = scalar(&mut next, "sample_count")?;
    let error_count: usize = scalar(&mut next, "error_count")?;
    let orientation = Label::from_sign(scalar::<i64>(&mut next, "orientation")?)?;
    let threshold: f64 = scalar(&mut next, "threshold")?;
    let (line, dir) = next("direction")?;
    let direction = dir
        .iter()
        .map(|v| parse_one::<f64>(line, std::slice::from_ref(v)))
        .collect::<Result<Vec<_>>>()?;
    let (line, errs) = next("per_projection_errors")?;
    let per_projection_errors = errs
        .iter()
        .map(|v| parse_one::<u32>(line, std::slice::from_ref(v)))
        .collect::<Result<Vec<_>>>()?;

    let map = PolyFeatureMap::new(input_dim, order)?;
    if direction.len() != map.output_dim() {
        return Err(Error::DimensionMismatch {
            expected: map.output_dim(),
            got: direction.len(),
        });
    }
    if per_projection_errors.len() != projections || best_index >= projections {
        return Err(Error::invalid(
            "projection record inconsistent with projection count",
        ));
    }
    Ok(TarpModel {
        map,
        stump: ProjectionStump {
            direction,
            threshold,
            orientation,
            error_count,
            sample_count,
        },
        projections,
        seed,
        best_index,
        per_projection_errors,
    })
}

fn scalar<T: FromStr>(
    next: &mut impl FnMut(&str) -> Result<(usize, Vec<String>)>,
    key: &str,
) -> Result<T> {
    let (line, values) = next(key)?;
    if values.len() != 1 {
        return Err(Error::Parse {
            line,
            msg: format!("`{key}` takes exactly one value"),
        });
    }
    parse_one(line, &values)
}

fn parse_one<T: FromStr>(line: usize, values: &[String]) -> Result<T> {
    values[0].parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse `{}`", values[0]),
    })
}

//! Optdigits ingestion, binary relabeling, splitting and dataset CSV files.
//!
//! Optdigits rows are 65 comma-separated integers: 64 pixel counts in `[0, 16]`
//! (an 8×8 image) followed by the digit. Dataset CSV files written by
//! [`write_dataset_csv`] carry a header `f0,...,f{d-1},label` and one row per
//! point with labels `-1`/`1`.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};
use crate::rng;

pub const PIXELS: usize = 64;
pub const MAX_PIXEL: u8 = 16;

/// Raw digit images with their digit labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDigits {
    pixels: Vec<u8>,
    digits: Vec<u8>,
}

impl LabeledDigits {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn image(&self, i: usize) -> &[u8] {
        &self.pixels[i * PIXELS..(i + 1) * PIXELS]
    }

    pub fn count_digit(&self, digit: u8) -> usize {
        self.digits.iter().filter(|&&d| d == digit).count()
    }

    /// Concatenation of two loads, e.g. the training and test files.
    pub fn concat(mut self, other: LabeledDigits) -> LabeledDigits {
        self.pixels.extend(other.pixels);
        self.digits.extend(other.digits);
        self
    }

    /// Checks the totals of the 1797-image corpus variant: 906 odd digits,
    /// 896 digits above four, 178 zeros and 182 ones.
    pub fn check_reference_corpus(&self) -> Result<()> {
        let odd = self.digits.iter().filter(|&&d| d % 2 == 1).count();
        let large = self.digits.iter().filter(|&&d| d > 4).count();
        let got = (
            self.len(),
            odd,
            large,
            self.count_digit(0),
            self.count_digit(1),
        );
        let want = (1797, 906, 896, 178, 182);
        if got == want {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "corpus totals (rows, odd, large, zeros, ones) = {got:?}, expected {want:?}"
            )))
        }
    }
}

pub fn load_optdigits(path: impl AsRef<Path>) -> Result<LabeledDigits> {
    read_optdigits(File::open(path)?)
}

/// Loads and concatenates several optdigits files.
pub fn load_optdigits_files<P: AsRef<Path>>(paths: &[P]) -> Result<LabeledDigits> {
    let mut iter = paths.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::invalid("no optdigits file given"))?;
    let mut all = load_optdigits(first)?;
    for p in iter {
        all = all.concat(load_optdigits(p)?);
    }
    Ok(all)
}

pub fn read_optdigits<R: Read>(reader: R) -> Result<LabeledDigits> {
    let mut pixels = Vec::new();
    let mut digits = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != PIXELS + 1 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {} fields, found {}", PIXELS + 1, fields.len()),
            });
        }
        for f in &fields[..PIXELS] {
            let v: u8 = parse_field(f, line_no)?;
            if v > MAX_PIXEL {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("pixel value {v} outside [0, {MAX_PIXEL}]"),
                });
            }
            pixels.push(v);
        }
        let digit: u8 = parse_field(fields[PIXELS], line_no)?;
        if digit > 9 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("digit label {digit} outside [0, 9]"),
            });
        }
        digits.push(digit);
    }
    if digits.is_empty() {
        return Err(Error::EmptyDataset("optdigits file has no rows".into()));
    }
    Ok(LabeledDigits { pixels, digits })
}

fn parse_field<T: FromStr>(field: &str, line: usize) -> Result<T> {
    field.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{field}` is not a valid value"),
    })
}

/// Binary labelings of the digit corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigitTask {
    /// odd → +1, even → −1
    EvenOdd,
    /// digits ≤ 4 → +1, digits > 4 → −1
    SmallLarge,
    /// zero → +1, one → −1; other digits dropped
    ZeroOne,
}

impl DigitTask {
    pub fn name(self) -> &'static str {
        match self {
            DigitTask::EvenOdd => "even_odd",
            DigitTask::SmallLarge => "small_large",
            DigitTask::ZeroOne => "zero_one",
        }
    }

    fn label(self, digit: u8) -> Option<Label> {
        match self {
            DigitTask::EvenOdd => Some(if digit % 2 == 1 {
                Label::Pos
            } else {
                Label::Neg
            }),
            DigitTask::SmallLarge => Some(if digit <= 4 { Label::Pos } else { Label::Neg }),
            DigitTask::ZeroOne => match digit {
                0 => Some(Label::Pos),
                1 => Some(Label::Neg),
                _ => None,
            },
        }
    }
}

impl FromStr for DigitTask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even_odd" | "even-odd" => Ok(DigitTask::EvenOdd),
            "small_large" | "small-large" | "large_small" => Ok(DigitTask::SmallLarge),
            "zero_one" | "zero-one" | "one_zero" => Ok(DigitTask::ZeroOne),
            other => Err(Error::invalid(format!(
                "unknown task `{other}` (expected even_odd, small_large or zero_one)"
            ))),
        }
    }
}

pub fn relabel(digits: &LabeledDigits, task: DigitTask) -> Result<Dataset> {
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for (i, &d) in digits.digits.iter().enumerate() {
        if let Some(label) = task.label(d) {
            features.extend(digits.image(i).iter().map(|&p| f64::from(p)));
            labels.push(label);
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyDataset(format!(
            "no rows left for task {}",
            task.name()
        )));
    }
    Dataset::from_flat(features, PIXELS, labels)
}

/// Uniformly random `(train, test)` partition with `train_size` training rows.
pub fn split(data: &Dataset, train_size: usize, seed: u64) -> Result<(Dataset, Dataset)> {
    if train_size == 0 || train_size >= data.len() {
        return Err(Error::invalid(format!(
            "training size must lie in [1, {}), got {train_size}",
            data.len()
        )));
    }
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.shuffle(&mut rng::stream(seed));
    let (train, test) = order.split_at(train_size);
    Ok((data.subset(train)?, data.subset(test)?))
}

pub fn write_dataset_csv<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = (0..data.dim()).map(|j| format!("f{j}")).collect();
    header.push("label".into());
    w.write_record(&header)?;
    for (x, y) in data.rows().zip(data.labels()) {
        let mut record: Vec<String> = x.iter().map(f64::to_string).collect();
        record.push(y.to_string());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_dataset_csv<R: Read>(reader: R) -> Result<Dataset> {
    let mut r = csv::Reader::from_reader(reader);
    let header = r.headers()?.clone();
    if header.len() < 2 || header.get(header.len() - 1) != Some("label") {
        return Err(Error::Parse {
            line: 1,
            msg: "header must be f0,...,f{d-1},label".into(),
        });
    }
    let dim = header.len() - 1;
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let line = i + 2;
        if record.len() != dim + 1 {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} fields, found {}", dim + 1, record.len()),
            });
        }
        for f in record.iter().take(dim) {
            features.push(parse_field::<f64>(f.trim(), line)?);
        }
        let y: i64 = parse_field(record[dim].trim(), line)?;
        labels.push(Label::from_sign(y).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?);
    }
    if labels.is_empty() {
        return Err(Error::EmptyDataset("dataset file has no rows".into()));
    }
    Dataset::from_flat(features, dim, labels)
}

pub fn load_dataset_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    read_dataset_csv(File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(digit: u8, fill: u8) -> String {
        let mut s: Vec<String> = vec![fill.to_string(); PIXELS];
        s.push(digit.to_string());
        s.join(",")
    }

    fn corpus() -> LabeledDigits {
        let text: String = (0..20u8).map(|i| line(i % 10, i % 17) + "\n").collect();
        read_optdigits(text.as_bytes()).unwrap()
    }

    #[test]
    fn single_line() {
        let d = read_optdigits(line(7, 3).as_bytes()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.digits(), &[7]);
        assert!(d.image(0).iter().all(|&p| p == 3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad_count = format!("{}\n1,2,3\n", line(1, 0));
        match read_optdigits(bad_count.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let out_of_range = format!("{}\n{}\n{}\n", line(1, 0), line(2, 0), line(3, 17));
        match read_optdigits(out_of_range.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            read_optdigits(line(10, 0).as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_optdigits(line(1, 0).replace(",0,", ",x,").as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_optdigits("".as_bytes()),
            Err(Error::EmptyDataset(_))
        ));
    }

    #[test]
    fn relabel_tasks() {
        let c = corpus();
        let eo = relabel(&c, DigitTask::EvenOdd).unwrap();
        assert_eq!(eo.len(), 20);
        assert_eq!(eo.count(Label::Pos), 10);
        let sl = relabel(&c, DigitTask::SmallLarge).unwrap();
        assert_eq!(sl.count(Label::Pos), 10);
        let zo = relabel(&c, DigitTask::ZeroOne).unwrap();
        assert_eq!(zo.len(), c.count_digit(0) + c.count_digit(1));
        assert_eq!(zo.count(Label::Pos), 2);
        assert_eq!(zo.dim(), PIXELS);

        let only_sevens = read_optdigits(line(7, 1).as_bytes()).unwrap();
        assert!(matches!(
            relabel(&only_sevens, DigitTask::ZeroOne),
            Err(Error::EmptyDataset(_))
        ));
    }

    #[test]
    fn split_partitions() {
        let data = relabel(&corpus(), DigitTask::EvenOdd).unwrap();
        let (tr, te) = split(&data, 19, 3).unwrap();
        assert_eq!((tr.len(), te.len()), (19, 1));
        let (a, b) = split(&data, 7, 5).unwrap();
        let (a2, b2) = split(&data, 7, 5).unwrap();
        assert_eq!((a.clone(), b.clone()), (a2, b2));
        assert_eq!(a.len() + b.len(), data.len());
        // disjoint and exhaustive: every row fill value 0..16 occurs once per digit pattern
        let mut rows: Vec<Vec<u64>> = a
            .rows()
            .chain(b.rows())
            .map(|r| r.iter().map(|v| v.to_bits()).collect())
            .collect();
        let mut all: Vec<Vec<u64>> = data
            .rows()
            .map(|r| r.iter().map(|v| v.to_bits()).collect())
            .collect();
        rows.sort();
        all.sort();
        assert_eq!(rows, all);
        assert!(split(&data, 20, 0).is_err());
        assert!(split(&data, 0, 0).is_err());
    }

    #[test]
    fn dataset_csv_round_trip() {
        let data = Dataset::new(
            vec![vec![0.1, -2.5e-7], vec![1.0 / 3.0, 4.0]],
            vec![Label::Neg, Label::Pos],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_dataset_csv(&data, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("f0,f1,label\n"));
        assert!(text.ends_with("1\n"));
        assert_eq!(read_dataset_csv(buf.as_slice()).unwrap(), data);
        assert!(read_dataset_csv("a,b\n1,2\n".as_bytes()).is_err());
        assert!(matches!(
            read_dataset_csv("f0,label\n1,0\n".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}

//! Raw sample moments and sample-file ingestion.

use std::io::{BufRead, BufReader, Read};

use crate::error::{Error, Result};
use crate::estimate::MomentPair;

/// Kahan-Babuška-Neumaier running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Sample size, extremes and raw moments of the requested orders.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSummary {
    pub count: usize,
    /// `(order, E(X^order))` in request order.
    pub moments: Vec<(f64, f64)>,
    pub min_value: f64,
    pub max_value: f64,
}

impl SampleSummary {
    pub fn moment(&self, order: f64) -> Option<f64> {
        self.moments.iter().find(|(o, _)| *o == order).map(|&(_, v)| v)
    }

    /// Pairs the moments of orders `n` and `m`, which must both have been computed.
    pub fn moment_pair(&self, n: f64, m: f64) -> Result<MomentPair> {
        let get = |o: f64| {
            self.moment(o)
                .ok_or_else(|| Error::domain(format!("moment of order {o} was not computed")))
        };
        MomentPair::new(n, m, get(n)?, get(m)?)
    }
}

fn check_orders(orders: &[f64]) -> Result<()> {
    if orders.is_empty() {
        return Err(Error::domain("at least one moment order is required"));
    }
    for (i, &o) in orders.iter().enumerate() {
        if !(o.is_finite() && o > 0.0) {
            return Err(Error::domain(format!("moment orders must be positive, got {o}")));
        }
        if orders[..i].contains(&o) {
            return Err(Error::domain(format!("duplicate moment order {o}")));
        }
    }
    Ok(())
}

/// Validates the data and returns `(min, max)`.
fn scan(data: &[f64]) -> Result<(f64, f64)> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for (index, &value) in data.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::domain(format!("non-finite value {value} at index {index}")));
        }
        if value < 0.0 {
            return Err(Error::NegativeValue { index, value });
        }
        min = min.min(value);
        max = max.max(value);
    }
    if max == 0.0 {
        return Err(Error::domain("all values are zero; raw moments vanish"));
    }
    Ok((min, max))
}

/// `(1/N) Σ x^i` for every requested order, with compensated summation.
///
/// Fails with [`Error::OverflowAtOrder`] when a power sum leaves the `f64`
/// range; [`log_raw_moments`] handles such data.
pub fn compute_raw_moments(data: &[f64], orders: &[f64]) -> Result<SampleSummary> {
    check_orders(orders)?;
    let (min_value, max_value) = scan(data)?;
    let count = data.len();
    let moments = orders
        .iter()
        .map(|&order| {
            let sum: NeumaierSum = data.iter().map(|x| x.powf(order)).collect();
            let mean = sum.value() / count as f64;
            if mean.is_finite() && mean > 0.0 {
                Ok((order, mean))
            } else {
                Err(Error::OverflowAtOrder { order })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleSummary { count, moments, min_value, max_value })
}

/// `ln((1/N) Σ x^i)` for every requested order, via log-sum-exp. Finite for
/// any non-degenerate non-negative data regardless of the order.
pub fn log_raw_moments(data: &[f64], orders: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_orders(orders)?;
    let (_, max_value) = scan(data)?;
    let ln_max = max_value.ln();
    let ln_count = (data.len() as f64).ln();
    Ok(orders
        .iter()
        .map(|&order| {
            let shift = order * ln_max;
            let sum: NeumaierSum = data
                .iter()
                .filter(|&&x| x > 0.0)
                .map(|x| (order * x.ln() - shift).exp())
                .collect();
            (order, shift + sum.value().ln() - ln_count)
        })
        .collect())
}

/// Input layout for [`load_samples`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleFormat {
    /// One number per line; blank lines and `#` comments are skipped.
    Plain,
    /// Comma-separated with a header row; values come from the named column.
    Csv { column: String },
}

fn parse_value(text: &str, line: usize) -> Result<f64> {
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(Error::Parse { line, message: format!("non-finite value {v}") }),
        Err(_) => Err(Error::Parse { line, message: format!("not a number: {text:?}") }),
    }
}

/// Reads sample values in file order.
pub fn load_samples<R: Read>(source: R, format: &SampleFormat) -> Result<Vec<f64>> {
    match format {
        SampleFormat::Plain => load_plain(source),
        SampleFormat::Csv { column } => load_csv(source, column),
    }
}

fn load_plain<R: Read>(source: R) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (idx, line) in BufReader::new(source).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        values.push(parse_value(content, line_no)?);
    }
    Ok(values)
}

fn load_csv<R: Read>(source: R, column: &str) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        Error::Parse { line, message: e.to_string() }
    };
    let headers = reader.headers().map_err(csv_err)?;
    let col = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| Error::MissingColumn(column.to_string()))?;

    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = record
            .get(col)
            .ok_or_else(|| Error::Parse { line, message: format!("missing field {column:?}") })?;
        values.push(parse_value(field, line)?);
    }
    Ok(values)
}

//! CSV tables, standardization, seasonal indicators and lagged designs.
//!
//! Missing cells are held as `NaN` inside a [`RawTable`]. Rows with a missing
//! response or predictor are dropped when a design is built.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::family::ExponentialFamily;

/// Named real columns of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl RawTable {
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::Argument("one name per column is required".into()));
        }
        if let Some(first) = columns.first() {
            if columns.iter().any(|c| c.len() != first.len()) {
                return Err(Error::Argument("columns differ in length".into()));
            }
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Argument(format!("duplicate column {n}")));
            }
        }
        Ok(Self { names, columns })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
            .ok_or_else(|| Error::Schema(name.to_string()))
    }

    /// Adds a column, replacing any column with the same name.
    pub fn set_column(&mut self, name: &str, values: Vec<f64>) -> Result<()> {
        if !self.columns.is_empty() && values.len() != self.len() {
            return Err(Error::Argument(format!("column {name} has the wrong length")));
        }
        match self.names.iter().position(|n| n == name) {
            Some(i) => self.columns[i] = values,
            None => {
                self.names.push(name.to_string());
                self.columns.push(values);
            }
        }
        Ok(())
    }

    /// Response and design columns of a dataset as a table.
    pub fn from_dataset(data: &Dataset, response_name: &str) -> Result<Self> {
        let mut names = vec![response_name.to_string()];
        names.extend(data.column_names().iter().cloned());
        let mut columns = vec![data.y().iter().copied().collect::<Vec<_>>()];
        columns.extend((0..data.p()).map(|k| data.x().column(k).iter().copied().collect()));
        Self::new(names, columns)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MissingPolicy {
    /// Every cell must parse as a number.
    #[default]
    Reject,
    /// Empty cells and cells equal to the marker become missing.
    Marker(String),
}

/// Reads a comma-separated file with a header row.
///
/// Every name in `schema` must appear in the header; other columns are kept.
pub fn load_csv(path: &Path, schema: &[String], missing: &MissingPolicy) -> Result<RawTable> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let names: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if let Some(absent) = schema.iter().find(|s| !names.contains(s)) {
        return Err(Error::Schema(absent.clone()));
    }
    let mut columns = vec![Vec::new(); names.len()];
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        for (col, cell) in record.iter().enumerate() {
            let value = match (cell.parse::<f64>(), missing) {
                (Ok(v), _) if v.is_finite() => v,
                (_, MissingPolicy::Marker(m)) if cell.is_empty() || cell == m => f64::NAN,
                _ => {
                    return Err(Error::Parse {
                        row: row + 1,
                        column: names[col].clone(),
                        value: cell.to_string(),
                    })
                }
            };
            columns[col].push(value);
        }
    }
    RawTable::new(names, columns)
}

/// Writes `table` with a header row. Values use the shortest representation
/// that parses back to the same `f64`; missing cells are left empty.
pub fn write_csv(table: &RawTable, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(table.names())?;
    for i in 0..table.len() {
        w.write_record(table.columns.iter().map(|c| {
            let v = c[i];
            if v.is_nan() {
                String::new()
            } else {
                v.to_string()
            }
        }))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes a header and string records.
pub fn write_records<I>(path: &Path, header: &[String], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let present: Vec<f64> = values.iter().copied().filter(|v| !v.is_nan()).collect();
    let k = present.len() as f64;
    let mean = present.iter().sum::<f64>() / k;
    let var = present.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, var.sqrt())
}

/// Replaces each named column by its z-score (sample s.d., denominator `n - 1`),
/// computed over all non-missing rows.
pub fn normalize(table: &RawTable, columns: &[String]) -> Result<RawTable> {
    let mut out = table.clone();
    for name in columns {
        let values = table.column(name)?;
        let (mean, sd) = mean_sd(values);
        if !(sd > 0.0) || !sd.is_finite() {
            return Err(Error::DegenerateColumn(name.clone()));
        }
        let z = values.iter().map(|v| (v - mean) / sd).collect();
        out.set_column(name, z)?;
    }
    Ok(out)
}

/// `1` where `series[t] - series[t - lag] >= 0`, else `0`, for `t = lag..len`.
pub fn seasonal_indicator(series: &[f64], lag: usize) -> Result<Vec<f64>> {
    if series.len() <= lag {
        return Err(Error::InsufficientHistory {
            needed: lag + 1,
            available: series.len(),
        });
    }
    Ok((lag..series.len())
        .map(|t| {
            let d = series[t] - series[t - lag];
            if d.is_nan() {
                f64::NAN
            } else {
                f64::from(d >= 0.0)
            }
        })
        .collect())
}

/// Pairs `response[t]` with `predictors[t - response_lag]`, dropping rows
/// without enough history or with a missing value.
pub fn build_lagged_design(
    table: &RawTable,
    response: &str,
    predictors: &[String],
    response_lag: usize,
) -> Result<Dataset> {
    if predictors.is_empty() {
        return Err(Error::Argument("at least one predictor is required".into()));
    }
    let y = table.column(response)?;
    let xs: Vec<&[f64]> = predictors.iter().map(|p| table.column(p)).collect::<Result<_>>()?;
    let mut ys = Vec::new();
    let mut rows = Vec::new();
    for t in response_lag..table.len() {
        let row: Vec<f64> = xs.iter().map(|c| c[t - response_lag]).collect();
        if y[t].is_nan() || row.iter().any(|v| v.is_nan()) {
            continue;
        }
        ys.push(y[t]);
        rows.push(row);
    }
    if ys.is_empty() {
        return Err(Error::InsufficientHistory {
            needed: response_lag + 1,
            available: table.len(),
        });
    }
    let x = nalgebra::DMatrix::from_fn(rows.len(), predictors.len(), |i, k| rows[i][k]);
    Dataset::new(nalgebra::DVector::from_vec(ys), x, predictors.to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Response,
    Predictor,
    Ignore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// z-score over all loaded rows.
    Normalize,
    /// Indicator of a nonnegative difference at `seasonal_lag`.
    Seasonal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnSpec {
    pub name: String,
    pub role: Role,
    #[serde(default)]
    pub transforms: Vec<Transform>,
}

/// Declarative description of how a CSV file becomes a [`Dataset`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignSchema {
    pub columns: Vec<ColumnSpec>,
    #[serde(default = "default_seasonal_lag")]
    pub seasonal_lag: usize,
    #[serde(default)]
    pub response_lag: usize,
    #[serde(default = "default_family")]
    pub family: ExponentialFamily,
    #[serde(default)]
    pub missing: MissingPolicy,
}

fn default_seasonal_lag() -> usize {
    12
}

fn default_family() -> ExponentialFamily {
    ExponentialFamily::BernoulliLogit
}

impl DesignSchema {
    pub fn response(&self) -> Result<&ColumnSpec> {
        let mut it = self.columns.iter().filter(|c| c.role == Role::Response);
        match (it.next(), it.next()) {
            (Some(r), None) => Ok(r),
            _ => Err(Error::Argument("exactly one response column is required".into())),
        }
    }

    pub fn predictors(&self) -> Vec<String> {
        self.columns
            .iter()
            .filter(|c| c.role == Role::Predictor)
            .map(|c| c.name.clone())
            .collect()
    }

    /// Column names that must be present in the input file.
    pub fn required_columns(&self) -> Vec<String> {
        self.columns
            .iter()
            .filter(|c| c.role != Role::Ignore)
            .map(|c| c.name.clone())
            .collect()
    }

    pub fn load(&self, path: &Path) -> Result<Dataset> {
        let table = load_csv(path, &self.required_columns(), &self.missing)?;
        self.build(&table)
    }

    /// Applies the transforms, then aligns the response against lagged predictors.
    pub fn build(&self, table: &RawTable) -> Result<Dataset> {
        let response = self.response()?;
        let predictors = self.predictors();
        let mut t = table.clone();
        for spec in self.columns.iter().filter(|c| c.role != Role::Ignore) {
            for tr in &spec.transforms {
                match tr {
                    Transform::Normalize => t = normalize(&t, std::slice::from_ref(&spec.name))?,
                    Transform::Seasonal => {
                        let ind = seasonal_indicator(t.column(&spec.name)?, self.seasonal_lag)?;
                        let mut padded = vec![f64::NAN; self.seasonal_lag];
                        padded.extend(ind);
                        t.set_column(&spec.name, padded)?;
                    }
                }
            }
        }
        build_lagged_design(&t, &response.name, &predictors, self.response_lag)
    }
}

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::family::ExponentialFamily;

/// Response vector and covariate matrix with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    y: DVector<f64>,
    x: DMatrix<f64>,
    column_names: Vec<String>,
}

impl Dataset {
    pub fn new(y: DVector<f64>, x: DMatrix<f64>, column_names: Vec<String>) -> Result<Self> {
        let n = y.len();
        if n == 0 || x.ncols() == 0 {
            return Err(Error::Argument("dataset needs at least one row and one column".into()));
        }
        if x.nrows() != n {
            return Err(Error::Argument(format!(
                "response has {n} rows but covariates have {}",
                x.nrows()
            )));
        }
        if column_names.len() != x.ncols() {
            return Err(Error::Argument(format!(
                "{} column names for {} covariates",
                column_names.len(),
                x.ncols()
            )));
        }
        let mut seen = HashSet::new();
        for name in &column_names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Argument(format!("duplicate column name `{name}`")));
            }
        }
        if y.iter().chain(x.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Argument("dataset entries must be finite".into()));
        }
        Ok(Self { y, x, column_names })
    }

    /// Builds a dataset with default column names `x1..xp`.
    pub fn from_rows(y: &[f64], rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != p) {
            return Err(Error::Argument("ragged covariate rows".into()));
        }
        let x = DMatrix::from_fn(rows.len(), p, |i, j| rows[i][j]);
        let names = (1..=p).map(|k| format!("x{k}")).collect();
        Self::new(DVector::from_column_slice(y), x, names)
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn p(&self) -> usize {
        self.x.ncols()
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.column_names.iter().position(|c| c == name)
    }

    /// Copy of the dataset with every covariate multiplied by `scale`.
    pub fn scaled(&self, scale: f64) -> Self {
        Self {
            y: self.y.clone(),
            x: &self.x * scale,
            column_names: self.column_names.clone(),
        }
    }
}

/// An ordered subset of covariate columns (zero-based) plus the working family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateModel {
    columns: Vec<usize>,
    family: ExponentialFamily,
}

impl CandidateModel {
    pub fn new(columns: Vec<usize>, family: ExponentialFamily) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Argument("candidate model needs at least one column".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = columns.iter().find(|c| !seen.insert(**c)) {
            return Err(Error::Argument(format!("duplicate column index {dup}")));
        }
        Ok(Self { columns, family })
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn family(&self) -> ExponentialFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn check_against(&self, data: &Dataset) -> Result<()> {
        match self.columns.iter().find(|&&c| c >= data.p()) {
            Some(c) => Err(Error::Argument(format!(
                "column index {c} out of range for {} covariates",
                data.p()
            ))),
            None => Ok(()),
        }
    }

    /// Human label such as `{x2,x4}`.
    pub fn label(&self, data: &Dataset) -> String {
        let names: Vec<&str> = self
            .columns
            .iter()
            .map(|&c| data.column_names().get(c).map_or("?", String::as_str))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Linear predictor `x_j'θ` for one row.
    #[inline]
    pub(crate) fn eta(&self, x: &DMatrix<f64>, row: usize, theta: &[f64]) -> f64 {
        self.columns
            .iter()
            .zip(theta)
            .map(|(&c, t)| x[(row, c)] * t)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_dataset() {
        assert!(Dataset::from_rows(&[], &[]).is_err());
        assert!(Dataset::from_rows(&[1.0], &[vec![f64::NAN]]).is_err());
        assert!(Dataset::from_rows(&[1.0, 2.0], &[vec![1.0]]).is_err());
        let d = Dataset::from_rows(&[1.0, 0.0], &[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!((d.n(), d.p()), (2, 2));
        assert_eq!(d.column_index("x2"), Some(1));
        let dup = Dataset::new(
            DVector::from_element(1, 0.0),
            DMatrix::from_element(1, 2, 0.0),
            vec!["a".into(), "a".into()],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn validates_candidate() {
        let d = Dataset::from_rows(&[1.0], &[vec![1.0, 2.0]]).unwrap();
        assert!(CandidateModel::new(vec![], ExponentialFamily::Gaussian).is_err());
        assert!(CandidateModel::new(vec![0, 0], ExponentialFamily::Gaussian).is_err());
        let m = CandidateModel::new(vec![2], ExponentialFamily::Gaussian).unwrap();
        assert!(m.check_against(&d).is_err());
        let m = CandidateModel::new(vec![1, 0], ExponentialFamily::Gaussian).unwrap();
        assert_eq!(m.label(&d), "{x2,x1}");
    }
}

//! Information criteria and minimum-criterion selection.
//!
//! Every criterion has the form `-2 H_n(θ̂) + penalty`. The penalties are
//! strategies behind [`Criterion`] and are looked up by name through a
//! [`CriterionRegistry`]:
//!
//! | name   | penalty                                   |
//! |--------|-------------------------------------------|
//! | `qbic` | `log det Σ_j b''(x_j'θ̂) x_j x_j'`          |
//! | `bic`  | `p log n`                                 |
//! | `faic` | `2 p`                                     |

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::FitResult;
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionKind {
    Qbic,
    Bic,
    Faic,
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 3] = [CriterionKind::Qbic, CriterionKind::Bic, CriterionKind::Faic];

    pub fn name(self) -> &'static str {
        match self {
            CriterionKind::Qbic => "qbic",
            CriterionKind::Bic => "bic",
            CriterionKind::Faic => "faic",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            CriterionKind::Qbic => "QBIC",
            CriterionKind::Bic => "BIC",
            CriterionKind::Faic => "fAIC",
        }
    }
}

impl fmt::Display for CriterionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

impl FromStr for CriterionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionRegistry::standard().get(s).map(|c| c.kind())
    }
}

/// A penalized quasi-likelihood criterion; smaller is better.
pub trait Criterion: Send + Sync {
    fn kind(&self) -> CriterionKind;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    /// Penalty added to `-2 H_n(θ̂)`.
    fn penalty(&self, fit: &FitResult, n: usize) -> Result<f64>;

    fn evaluate(&self, fit: &FitResult, n: usize) -> Result<f64> {
        Ok(-2.0 * fit.loglik + self.penalty(fit, n)?)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Qbic;

#[derive(Debug, Clone, Copy, Default)]
pub struct Bic;

#[derive(Debug, Clone, Copy, Default)]
pub struct Faic;

impl Criterion for Qbic {
    fn kind(&self) -> CriterionKind {
        CriterionKind::Qbic
    }

    fn penalty(&self, fit: &FitResult, _n: usize) -> Result<f64> {
        logdet_penalty(fit)
    }
}

impl Criterion for Bic {
    fn kind(&self) -> CriterionKind {
        CriterionKind::Bic
    }

    fn penalty(&self, fit: &FitResult, n: usize) -> Result<f64> {
        if n < 1 {
            return Err(Error::Argument("BIC needs n >= 1".into()));
        }
        Ok(fit.dim() as f64 * (n as f64).ln())
    }
}

impl Criterion for Faic {
    fn kind(&self) -> CriterionKind {
        CriterionKind::Faic
    }

    fn penalty(&self, fit: &FitResult, _n: usize) -> Result<f64> {
        Ok(2.0 * fit.dim() as f64)
    }
}

/// Name-indexed set of criteria.
#[derive(Clone)]
pub struct CriterionRegistry {
    entries: Vec<(String, Arc<dyn Criterion>)>,
}

impl CriterionRegistry {
    pub fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    /// QBIC, BIC and fAIC, also reachable as `aic` for fAIC.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register("qbic", Arc::new(Qbic));
        reg.register("bic", Arc::new(Bic));
        reg.register("faic", Arc::new(Faic));
        reg.register("aic", Arc::new(Faic));
        reg
    }

    /// Registers `criterion` under `name`, replacing any previous entry.
    pub fn register(&mut self, name: &str, criterion: Arc<dyn Criterion>) {
        let key = name.to_ascii_lowercase();
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = criterion,
            None => self.entries.push((key, criterion)),
        }
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Criterion>> {
        let key = name.to_ascii_lowercase();
        self.entries
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, c)| Arc::clone(c))
            .ok_or_else(|| Error::UnknownName {
                kind: "criterion",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }
}

impl fmt::Debug for CriterionRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// `log det(info_hat)`; fails when the information is not positive definite.
pub fn logdet_penalty(fit: &FitResult) -> Result<f64> {
    linalg::log_det_spd(&fit.info_hat).ok_or_else(|| Error::SingularInformation {
        candidate: format!("with {} parameters", fit.dim()),
    })
}

pub fn qbic(fit: &FitResult) -> Result<f64> {
    Qbic.evaluate(fit, 0)
}

pub fn bic(fit: &FitResult, n: usize) -> Result<f64> {
    Bic.evaluate(fit, n)
}

pub fn faic(fit: &FitResult) -> f64 {
    -2.0 * fit.loglik + 2.0 * fit.dim() as f64
}

/// Criterion values for one fitted candidate.
///
/// `qbic` and `logdet_penalty` are absent when the information matrix is not
/// positive definite; such a report is `excluded` from selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub model_id: usize,
    pub p_m: usize,
    pub loglik: f64,
    pub qbic: Option<f64>,
    pub bic: f64,
    pub faic: f64,
    pub logdet_penalty: Option<f64>,
    pub boundary_hit: bool,
    pub excluded: bool,
}

impl CriterionReport {
    pub fn from_fit(model_id: usize, fit: &FitResult, n: usize) -> Self {
        let logdet = logdet_penalty(fit).ok();
        let m2l = -2.0 * fit.loglik;
        let p = fit.dim() as f64;
        Self {
            model_id,
            p_m: fit.dim(),
            loglik: fit.loglik,
            qbic: logdet.map(|ld| m2l + ld),
            bic: m2l + p * (n as f64).ln(),
            faic: m2l + 2.0 * p,
            logdet_penalty: logdet,
            boundary_hit: fit.boundary_hit,
            excluded: logdet.is_none(),
        }
    }

    /// Criterion value, or `None` when the report is excluded.
    pub fn value(&self, kind: CriterionKind) -> Option<f64> {
        if self.excluded {
            return None;
        }
        match kind {
            CriterionKind::Qbic => self.qbic,
            CriterionKind::Bic => Some(self.bic),
            CriterionKind::Faic => Some(self.faic),
        }
    }

    pub const CSV_HEADER: [&'static str; 9] = [
        "model_id",
        "p_m",
        "loglik",
        "qbic",
        "bic",
        "faic",
        "logdet_penalty",
        "boundary_hit",
        "excluded",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            self.model_id.to_string(),
            self.p_m.to_string(),
            self.loglik.to_string(),
            opt(self.qbic),
            self.bic.to_string(),
            self.faic.to_string(),
            opt(self.logdet_penalty),
            self.boundary_hit.to_string(),
            self.excluded.to_string(),
        ]
    }
}

/// Model id with the minimum criterion value among non-excluded reports.
///
/// Ties go to the smallest model id, then the smallest dimension.
pub fn select_best(reports: &[CriterionReport], kind: CriterionKind) -> Result<usize> {
    reports
        .iter()
        .filter_map(|r| r.value(kind).filter(|v| !v.is_nan()).map(|v| (v, r.model_id, r.p_m)))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)))
        .map(|(_, id, _)| id)
        .ok_or(Error::NoValidCandidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{CandidateModel, Dataset};
    use crate::family::ExponentialFamily;
    use crate::fit::{fit_qmle, quasi_loglik, FitConfig};
    use nalgebra::DMatrix;

    fn fake_fit(loglik: f64, p: usize) -> FitResult {
        FitResult {
            theta_hat: vec![0.0; p],
            loglik,
            score_norm: 0.0,
            info_hat: DMatrix::identity(p, p),
            iterations: 1,
            converged: true,
            boundary_hit: false,
        }
    }

    fn report(id: usize, value: f64) -> CriterionReport {
        CriterionReport {
            model_id: id,
            p_m: 1,
            loglik: -value / 2.0,
            qbic: Some(value),
            bic: value,
            faic: value,
            logdet_penalty: Some(0.0),
            boundary_hit: false,
            excluded: false,
        }
    }

    #[test]
    fn trivial_gaussian_instance() {
        let d = Dataset::from_rows(&[0.0], &[vec![1.0]]).unwrap();
        let m = CandidateModel::new(vec![0], ExponentialFamily::Gaussian).unwrap();
        let fit = fit_qmle(&d, &m, &FitConfig::default()).unwrap();
        assert_eq!(fit.theta_hat, vec![0.0]);
        assert_eq!(qbic(&fit).unwrap(), 0.0);
        assert_eq!(faic(&fit), 2.0);
        assert_eq!(bic(&fit, 1).unwrap(), 0.0);
    }

    #[test]
    fn penalties() {
        let fit = fake_fit(-3.0, 4);
        assert_eq!(Bic.penalty(&fit, 1).unwrap(), 0.0);
        assert!((bic(&fit, 1).unwrap() - 6.0).abs() < 1e-12);
        assert!((Bic.penalty(&fit, 7).unwrap() - 4.0 * 7f64.ln()).abs() < 1e-12);
        assert_eq!(Faic.penalty(&fit, 10).unwrap(), 8.0);
        assert_eq!(faic(&fit), 14.0);
    }

    #[test]
    fn logit_hand_dataset() {
        let rows: Vec<Vec<f64>> = [-1.2, -0.7, -0.3, 0.0, 0.2, 0.5, 0.9, 1.1, 1.6, 2.0]
            .iter()
            .map(|&v| vec![1.0, v])
            .collect();
        let y = [0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let d = Dataset::from_rows(&y, &rows).unwrap();
        let m = CandidateModel::new(vec![0, 1], ExponentialFamily::BernoulliLogit).unwrap();
        let fit = fit_qmle(&d, &m, &FitConfig::default()).unwrap();
        assert!(fit.converged);

        // Independent accumulation of the information and its 2x2 determinant.
        let mut acc = [[0.0; 2]; 2];
        for r in &rows {
            let eta = r[0] * fit.theta_hat[0] + r[1] * fit.theta_hat[1];
            let mu = 1.0 / (1.0 + (-eta).exp());
            for a in 0..2 {
                for b in 0..2 {
                    acc[a][b] += mu * (1.0 - mu) * r[a] * r[b];
                }
            }
        }
        let logdet = (acc[0][0] * acc[1][1] - acc[0][1] * acc[1][0]).ln();
        let h = quasi_loglik(&d, &m, &fit.theta_hat).unwrap();
        let r = CriterionReport::from_fit(1, &fit, 10);
        assert!((r.qbic.unwrap() - (-2.0 * h + logdet)).abs() < 1e-10);
        assert!((r.bic - (-2.0 * h + 2.0 * 10f64.ln())).abs() < 1e-10);
        assert!((r.faic - (-2.0 * h + 4.0)).abs() < 1e-10);
        let identity = r.qbic.unwrap() - r.bic - (r.logdet_penalty.unwrap() - 2.0 * 10f64.ln());
        assert!(identity.abs() < 1e-10);
    }

    #[test]
    fn singular_information_excludes() {
        let mut fit = fake_fit(-1.0, 2);
        fit.info_hat = DMatrix::from_element(2, 2, 1.0);
        assert!(matches!(qbic(&fit), Err(Error::SingularInformation { .. })));
        let r = CriterionReport::from_fit(3, &fit, 5);
        assert!(r.excluded && r.qbic.is_none());
        assert!(r.value(CriterionKind::Bic).is_none());
        assert!(matches!(select_best(&[r], CriterionKind::Bic), Err(Error::NoValidCandidate)));
    }

    #[test]
    fn select_best_rules() {
        assert_eq!(select_best(&[report(7, 1.0)], CriterionKind::Qbic).unwrap(), 7);
        let rs = [report(1, 10.0), report(2, 9.5), report(3, 11.2)];
        assert_eq!(select_best(&rs, CriterionKind::Qbic).unwrap(), 2);
        let tie = [report(4, 1.0), report(2, 1.0), report(3, 1.0)];
        assert_eq!(select_best(&tie, CriterionKind::Faic).unwrap(), 2);
        assert!(matches!(select_best(&[], CriterionKind::Qbic), Err(Error::NoValidCandidate)));
    }

    #[test]
    fn registry_lookup() {
        let reg = CriterionRegistry::standard();
        assert_eq!(reg.get("QBIC").unwrap().kind(), CriterionKind::Qbic);
        assert_eq!(reg.get("aic").unwrap().kind(), CriterionKind::Faic);
        assert!(matches!(reg.get("gic"), Err(Error::UnknownName { .. })));
        assert_eq!("bic".parse::<CriterionKind>().unwrap(), CriterionKind::Bic);
        let fit = fake_fit(-2.0, 3);
        for kind in CriterionKind::ALL {
            let c = reg.get(kind.name()).unwrap();
            let v = c.evaluate(&fit, 20).unwrap();
            assert_eq!(Some(v), CriterionReport::from_fit(1, &fit, 20).value(kind));
        }
    }
}

//! Quasi-log-likelihood, quasi-score, observed information and the damped
//! Newton QMLE for a single candidate model.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{CandidateModel, Dataset};
use crate::error::{Error, Result};
use crate::linalg;

/// Maximum number of step halvings in the Newton line search.
pub const MAX_HALVINGS: usize = 30;

/// Relative Newton step size below which the iteration is considered settled.
pub const STEP_TOL: f64 = 1e-6;

/// Default score tolerance per observation.
pub const DEFAULT_GRAD_TOL_PER_OBS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Init {
    Zero,
    Given(Vec<f64>),
    /// Independent `U(center_i - half_width, center_i + half_width)` draws.
    UniformAround {
        center: Vec<f64>,
        half_width: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub max_iter: usize,
    /// Sup-norm tolerance on the (un-normalized) score; `None` means `1e-8 * n`.
    pub grad_tol: Option<f64>,
    /// Half-width `B` of the parameter box `[-B, B]^p`.
    pub theta_bound: f64,
    pub init: Init,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            max_iter: 100,
            grad_tol: None,
            theta_bound: 50.0,
            init: Init::Zero,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter < 1 {
            return Err(Error::Argument("max_iter must be at least 1".into()));
        }
        if let Some(tol) = self.grad_tol {
            if !(tol > 0.0) {
                return Err(Error::Argument("grad_tol must be positive".into()));
            }
        }
        if !(self.theta_bound > 0.0) {
            return Err(Error::Argument("theta_bound must be positive".into()));
        }
        Ok(())
    }

    pub fn grad_tol_for(&self, n: usize) -> f64 {
        self.grad_tol.unwrap_or(DEFAULT_GRAD_TOL_PER_OBS * n as f64)
    }

    pub fn with_init(mut self, init: Init) -> Self {
        self.init = init;
        self
    }

    fn initial_theta(&self, p: usize) -> Result<Vec<f64>> {
        let theta = match &self.init {
            Init::Zero => vec![0.0; p],
            Init::Given(v) => {
                if v.len() != p {
                    return Err(Error::Argument(format!(
                        "initial value has length {} but the model has {p} parameters",
                        v.len()
                    )));
                }
                v.clone()
            }
            Init::UniformAround {
                center,
                half_width,
                seed,
            } => {
                if center.len() != p {
                    return Err(Error::Argument(format!(
                        "initialization center has length {} but the model has {p} parameters",
                        center.len()
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                center
                    .iter()
                    .map(|c| c + half_width * (2.0 * rng.random::<f64>() - 1.0))
                    .collect()
            }
        };
        let b = self.theta_bound;
        Ok(theta.into_iter().map(|t| t.clamp(-b, b)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub theta_hat: Vec<f64>,
    /// Maximized quasi-log-likelihood.
    pub loglik: f64,
    /// Sup-norm of the score at `theta_hat`.
    pub score_norm: f64,
    /// `Σ_j b''(x_j'θ̂) x_j x_j'`, not divided by n.
    pub info_hat: DMatrix<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub boundary_hit: bool,
}

impl FitResult {
    pub fn dim(&self) -> usize {
        self.theta_hat.len()
    }
}

fn check_theta(data: &Dataset, model: &CandidateModel, theta: &[f64]) -> Result<()> {
    model.check_against(data)?;
    if theta.len() != model.dim() {
        return Err(Error::Argument(format!(
            "theta has length {} but the model has {} parameters",
            theta.len(),
            model.dim()
        )));
    }
    if theta.iter().any(|t| !t.is_finite()) {
        return Err(Error::Argument("theta must be finite".into()));
    }
    Ok(())
}

fn loglik_unchecked(data: &Dataset, model: &CandidateModel, theta: &[f64]) -> f64 {
    let family = model.family();
    let (x, y) = (data.x(), data.y());
    (0..data.n())
        .map(|j| {
            let eta = model.eta(x, j, theta);
            y[j] * eta - family.b(eta)
        })
        .sum()
}

/// Score and information in one pass over the rows.
fn score_info_unchecked(
    data: &Dataset,
    model: &CandidateModel,
    theta: &[f64],
) -> (DVector<f64>, DMatrix<f64>) {
    let family = model.family();
    let cols = model.columns();
    let p = cols.len();
    let (x, y) = (data.x(), data.y());
    let mut score = DVector::zeros(p);
    let mut info = DMatrix::zeros(p, p);
    let mut xj = vec![0.0; p];
    for j in 0..data.n() {
        for (k, &c) in cols.iter().enumerate() {
            xj[k] = x[(j, c)];
        }
        let eta: f64 = xj.iter().zip(theta).map(|(a, b)| a * b).sum();
        let resid = y[j] - family.db(eta);
        let w = family.d2b(eta);
        for a in 0..p {
            score[a] += resid * xj[a];
            let wa = w * xj[a];
            for b in 0..=a {
                info[(a, b)] += wa * xj[b];
            }
        }
    }
    for a in 0..p {
        for b in 0..a {
            info[(b, a)] = info[(a, b)];
        }
    }
    (score, info)
}

/// `Σ_j (y_j x_j'θ - b(x_j'θ))` over the model's columns.
pub fn quasi_loglik(data: &Dataset, model: &CandidateModel, theta: &[f64]) -> Result<f64> {
    check_theta(data, model, theta)?;
    Ok(loglik_unchecked(data, model, theta))
}

/// `Σ_j (y_j - b'(x_j'θ)) x_j`.
pub fn quasi_score(data: &Dataset, model: &CandidateModel, theta: &[f64]) -> Result<DVector<f64>> {
    check_theta(data, model, theta)?;
    Ok(score_info_unchecked(data, model, theta).0)
}

/// `Σ_j b''(x_j'θ) x_j x_j'` (the un-normalized quasi-observed information).
pub fn observed_information(
    data: &Dataset,
    model: &CandidateModel,
    theta: &[f64],
) -> Result<DMatrix<f64>> {
    check_theta(data, model, theta)?;
    Ok(score_info_unchecked(data, model, theta).1)
}

fn singular(data: &Dataset, model: &CandidateModel) -> Error {
    Error::SingularInformation {
        candidate: model.label(data),
    }
}

/// Damped Newton maximization of the quasi-log-likelihood over `[-B, B]^p`.
///
/// Each iteration solves `Γ d = score` on the free coordinates, where a
/// coordinate is fixed when it sits on the box boundary and the score pushes
/// outward. The step is halved until the objective does not decrease.
/// Termination is declared converged only when the score sup-norm is within
/// tolerance, the last Newton step is negligible and no coordinate is on the
/// boundary; separated logit data therefore runs out to the box and reports
/// `boundary_hit` instead of stopping on a vanishing score.
pub fn fit_qmle(data: &Dataset, model: &CandidateModel, config: &FitConfig) -> Result<FitResult> {
    config.validate()?;
    model.check_against(data)?;
    let p = model.dim();
    let bound = config.theta_bound;
    let tol = config.grad_tol_for(data.n());

    let mut theta = config.initial_theta(p)?;
    let mut loglik = loglik_unchecked(data, model, &theta);
    if !loglik.is_finite() {
        return Err(Error::Initialization(model.label(data)));
    }

    let on_bound = |t: f64| t.abs() >= bound;
    let mut iterations = 0;
    let mut settled = false;

    loop {
        let (score, info) = score_info_unchecked(data, model, &theta);
        let free: Vec<usize> = (0..p)
            .filter(|&i| !(on_bound(theta[i]) && score[i] * theta[i] > 0.0))
            .collect();
        if free.is_empty() {
            break;
        }
        let info_free = linalg::principal_submatrix(&info, &free);
        if linalg::is_numerically_singular(&info_free) {
            return Err(singular(data, model));
        }
        let score_free = DVector::from_iterator(free.len(), free.iter().map(|&i| score[i]));
        let step = linalg::solve_spd(&info_free, &score_free).ok_or_else(|| singular(data, model))?;

        let grad_norm = score_free.amax();
        let theta_scale = 1.0 + theta.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        if grad_norm <= tol && step.amax() <= STEP_TOL * theta_scale {
            settled = true;
            break;
        }
        if iterations >= config.max_iter {
            break;
        }

        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let mut cand = theta.clone();
            for (k, &i) in free.iter().enumerate() {
                cand[i] = (theta[i] + t * step[k]).clamp(-bound, bound);
            }
            let value = loglik_unchecked(data, model, &cand);
            if value.is_finite() && value >= loglik {
                accepted = Some((cand, value));
                break;
            }
            t *= 0.5;
        }
        let Some((cand, value)) = accepted else {
            break;
        };
        iterations += 1;
        debug_assert!(value >= loglik);
        if cand == theta {
            break;
        }
        theta = cand;
        loglik = value;
    }

    let (score, info_hat) = score_info_unchecked(data, model, &theta);
    let boundary_hit = theta.iter().any(|&t| on_bound(t));
    let score_norm = score.amax();
    Ok(FitResult {
        converged: settled && !boundary_hit && score_norm <= tol,
        loglik,
        score_norm,
        info_hat,
        iterations,
        boundary_hit,
        theta_hat: theta,
    })
}

/// Sandwich covariance `Γ̂⁻¹ Σ̂ Γ̂⁻¹ / n` of the QMLE.
///
/// `Σ̂` is the Bartlett-kernel long-run covariance of the score contributions
/// `ψ_j = (y_j - b'(x_j'θ̂)) x_j`; `bandwidth = 0` gives `(1/n) Σ ψ_j ψ_j'`.
pub fn robust_covariance(
    data: &Dataset,
    model: &CandidateModel,
    fit: &FitResult,
    bandwidth: usize,
) -> Result<DMatrix<f64>> {
    if !fit.converged {
        return Err(Error::InvalidFit("robust covariance needs a converged fit".into()));
    }
    check_theta(data, model, &fit.theta_hat)?;
    let n = data.n();
    let p = model.dim();
    let family = model.family();
    let (x, y) = (data.x(), data.y());

    let psi = DMatrix::from_fn(n, p, |j, k| {
        let eta = model.eta(x, j, &fit.theta_hat);
        (y[j] - family.db(eta)) * x[(j, model.columns()[k])]
    });
    let nf = n as f64;
    let mut sigma = psi.transpose() * &psi / nf;
    for lag in 1..=bandwidth.min(n.saturating_sub(1)) {
        let weight = 1.0 - lag as f64 / (bandwidth as f64 + 1.0);
        let lead = psi.rows(lag, n - lag);
        let trail = psi.rows(0, n - lag);
        let omega = lead.transpose() * trail / nf;
        sigma += (&omega + omega.transpose()) * weight;
    }

    let gamma = &fit.info_hat / nf;
    if linalg::is_numerically_singular(&gamma) {
        return Err(singular(data, model));
    }
    let gamma_inv = linalg::inverse_spd(&gamma).ok_or_else(|| singular(data, model))?;
    let mut cov = &gamma_inv * sigma * &gamma_inv / nf;
    linalg::symmetrize(&mut cov);
    Ok(cov)
}

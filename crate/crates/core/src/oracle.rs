//! Reference values for the log marginal quasi-likelihood
//! `log ∫ exp{H_n(θ)} π(θ) dθ`.
//!
//! Three routes are available and checked against each other:
//!
//! - tensor-product Gauss–Legendre quadrature centred at θ̂ (p ≤ 3),
//! - the exact Gaussian–Gaussian integral (Gaussian family, Gaussian prior),
//! - the four-term Laplace expansion
//!   `H_n(θ̂) + (p/2) log 2π - ½ log det(Σ b''(x'θ̂) x x') + log π(θ̂)`.
//!
//! Everything is computed in log space with the constant `H_n(θ̂)` factored out.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{CandidateModel, Dataset};
use crate::error::{Error, Result};
use crate::family::{sigmoid, ExponentialFamily};
use crate::fit::{fit_qmle, quasi_loglik, FitConfig, FitResult};
use crate::linalg;
use crate::simgen::SimRng;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Largest parameter dimension handled by tensor quadrature.
pub const MAX_QUADRATURE_DIM: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum Prior {
    /// Constant density `(2B)^{-p}` on `[-B, B]^p`.
    UniformBox { half_width: f64 },
    Gaussian { mean: DVector<f64>, cov: DMatrix<f64> },
}

impl Prior {
    /// Isotropic `N(0, variance · I_p)`.
    pub fn isotropic_gaussian(p: usize, variance: f64) -> Self {
        Prior::Gaussian {
            mean: DVector::zeros(p),
            cov: DMatrix::identity(p, p) * variance,
        }
    }

    fn validate(&self, p: usize) -> Result<()> {
        match self {
            Prior::UniformBox { half_width } if !(*half_width > 0.0) => {
                Err(Error::Argument("uniform prior half-width must be positive".into()))
            }
            Prior::Gaussian { mean, cov } => {
                if mean.len() != p || cov.nrows() != p || cov.ncols() != p {
                    return Err(Error::Argument(format!("Gaussian prior must be {p}-dimensional")));
                }
                if cov.clone().cholesky().is_none() {
                    return Err(Error::Argument("prior covariance must be positive definite".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `log π(θ)`, `-inf` outside the support.
    pub fn log_density(&self, theta: &[f64]) -> f64 {
        match self {
            Prior::UniformBox { half_width } => {
                if theta.iter().all(|t| t.abs() <= *half_width) {
                    -(theta.len() as f64) * (2.0 * half_width).ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            Prior::Gaussian { mean, cov } => {
                let chol = cov.clone().cholesky().expect("validated prior covariance");
                let diff = DVector::from_column_slice(theta) - mean;
                let z = chol.l().solve_lower_triangular(&diff).expect("triangular solve");
                let logdet: f64 = 2.0 * (0..diff.len()).map(|i| chol.l()[(i, i)].ln()).sum::<f64>();
                -0.5 * (z.norm_squared() + logdet + theta.len() as f64 * LN_2PI)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub points_per_dim: usize,
    /// Half-width of the integration box in estimated standard errors.
    pub radius_in_se: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            points_per_dim: 64,
            radius_in_se: 8.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points_per_dim < 15 {
            return Err(Error::Argument("points_per_dim must be at least 15".into()));
        }
        if !(self.radius_in_se >= 6.0) {
            return Err(Error::Argument("radius_in_se must be at least 6".into()));
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_m`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { x } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = mf * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    (nodes, weights)
}

fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Stable `log Σ exp(v_i)` with a fixed reduction order.
pub fn log_sum_exp(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let shifted: Vec<f64> = v.iter().map(|x| (x - max).exp()).collect();
    max + pairwise_sum(&shifted).ln()
}

fn ensure_converged(fit: &FitResult) -> Result<()> {
    if fit.converged {
        Ok(())
    } else {
        Err(Error::InvalidFit("the QMLE did not converge".into()))
    }
}

/// Quadrature estimate of the log marginal quasi-likelihood, fitting θ̂ with
/// the default configuration.
pub fn log_marginal_quadrature(
    data: &Dataset,
    model: &CandidateModel,
    prior: &Prior,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if model.dim() > MAX_QUADRATURE_DIM {
        return Err(Error::UnsupportedDimension(model.dim()));
    }
    let fit = fit_qmle(data, model, &FitConfig::default())?;
    log_marginal_quadrature_at(data, model, &fit, prior, spec)
}

/// Quadrature estimate around a given converged fit.
///
/// The box is `θ̂_i ± radius · se_i` with `se = sqrt(diag(info⁻¹))`, clipped
/// to the support of a uniform prior.
pub fn log_marginal_quadrature_at(
    data: &Dataset,
    model: &CandidateModel,
    fit: &FitResult,
    prior: &Prior,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let p = model.dim();
    if p > MAX_QUADRATURE_DIM {
        return Err(Error::UnsupportedDimension(p));
    }
    spec.validate()?;
    prior.validate(p)?;
    ensure_converged(fit)?;
    if fit.dim() != p {
        return Err(Error::InvalidFit("fit dimension does not match the model".into()));
    }
    let cov = linalg::inverse_spd(&fit.info_hat).ok_or_else(|| Error::SingularInformation {
        candidate: model.label(data),
    })?;

    let mut lo = vec![0.0; p];
    let mut hi = vec![0.0; p];
    for i in 0..p {
        let se = cov[(i, i)].sqrt();
        lo[i] = fit.theta_hat[i] - spec.radius_in_se * se;
        hi[i] = fit.theta_hat[i] + spec.radius_in_se * se;
        if let Prior::UniformBox { half_width } = prior {
            lo[i] = lo[i].max(-half_width);
            hi[i] = hi[i].min(*half_width);
        }
        if !(hi[i] > lo[i]) {
            return Err(Error::PriorSupport);
        }
    }

    let (nodes, weights) = gauss_legendre(spec.points_per_dim);
    let m = nodes.len();
    let total = m.pow(p as u32);
    let half: Vec<f64> = (0..p).map(|i| 0.5 * (hi[i] - lo[i])).collect();
    let mid: Vec<f64> = (0..p).map(|i| 0.5 * (hi[i] + lo[i])).collect();
    let log_jacobian: f64 = half.iter().map(|h| h.ln()).sum();

    let terms: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rest = flat;
            let mut theta = vec![0.0; p];
            let mut log_w = 0.0;
            for i in 0..p {
                let k = rest % m;
                rest /= m;
                theta[i] = mid[i] + half[i] * nodes[k];
                log_w += weights[k].ln();
            }
            let h = quasi_loglik(data, model, &theta).unwrap_or(f64::NEG_INFINITY);
            h - fit.loglik + prior.log_density(&theta) + log_w
        })
        .collect();

    Ok(fit.loglik + log_jacobian + log_sum_exp(&terms))
}

/// Exact `log ∫ exp{H_n(θ)} N(θ; μ₀, Λ₀) dθ` for the Gaussian family.
///
/// With `A = Σ x_j x_j'`, `v = Σ y_j x_j`, `P = Λ₀⁻¹`, `M = A + P` and
/// `c = v + P μ₀` the integral is
/// `½ c'M⁻¹c - ½ μ₀'Pμ₀ - ½ log det M - ½ log det Λ₀`.
pub fn gaussian_log_marginal_closed_form(
    data: &Dataset,
    model: &CandidateModel,
    mean: &DVector<f64>,
    cov: &DMatrix<f64>,
) -> Result<f64> {
    if model.family() != ExponentialFamily::Gaussian {
        return Err(Error::Argument("closed form needs the Gaussian family".into()));
    }
    model.check_against(data)?;
    let p = model.dim();
    Prior::Gaussian {
        mean: mean.clone(),
        cov: cov.clone(),
    }
    .validate(p)?;

    let cols = model.columns();
    let xm = DMatrix::from_fn(data.n(), p, |j, k| data.x()[(j, cols[k])]);
    let a = xm.transpose() * &xm;
    let v = xm.transpose() * data.y();
    let precision = linalg::inverse_spd(cov).ok_or_else(|| Error::Argument("singular prior covariance".into()))?;
    let m = &a + &precision;
    let c = &v + &precision * mean;
    let singular = || Error::SingularInformation {
        candidate: model.label(data),
    };
    let m_inv_c = linalg::solve_spd(&m, &c).ok_or_else(singular)?;
    let logdet_m = linalg::log_det_spd(&m).ok_or_else(singular)?;
    let logdet_cov = linalg::log_det_spd(cov).ok_or_else(singular)?;
    Ok(0.5 * c.dot(&m_inv_c) - 0.5 * mean.dot(&(&precision * mean)) - 0.5 * logdet_m - 0.5 * logdet_cov)
}

/// Four-term Laplace expansion of the log marginal quasi-likelihood.
pub fn laplace_expansion(fit: &FitResult, prior: &Prior, _n: usize) -> Result<f64> {
    ensure_converged(fit)?;
    let p = fit.dim();
    prior.validate(p)?;
    let log_prior = prior.log_density(&fit.theta_hat);
    if !log_prior.is_finite() {
        return Err(Error::PriorSupport);
    }
    let logdet = linalg::log_det_spd(&fit.info_hat).ok_or_else(|| Error::SingularInformation {
        candidate: format!("with {p} parameters"),
    })?;
    Ok(fit.loglik + 0.5 * p as f64 * LN_2PI - 0.5 * logdet + log_prior)
}

/// Fixed regression coefficients of the oracle fixtures.
pub const FIXTURE_THETA: [f64; 3] = [0.8, -0.5, 0.3];

/// Synthetic data for the oracle: `p` iid standard normal covariates and a
/// response from the chosen family with coefficients [`FIXTURE_THETA`].
pub fn oracle_dataset(family: ExponentialFamily, p: usize, n: usize, seed: u64) -> Result<Dataset> {
    if p > MAX_QUADRATURE_DIM {
        return Err(Error::UnsupportedDimension(p));
    }
    if p == 0 || n == 0 {
        return Err(Error::Argument("oracle fixture needs p >= 1 and n >= 1".into()));
    }
    let mut rng = SimRng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..p).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    let y: Vec<f64> = rows
        .iter()
        .map(|r| {
            let eta: f64 = r.iter().zip(FIXTURE_THETA).map(|(a, b)| a * b).sum();
            match family {
                ExponentialFamily::Gaussian => {
                    let e: f64 = StandardNormal.sample(&mut rng);
                    eta + e
                }
                ExponentialFamily::BernoulliLogit => f64::from(rng.random::<f64>() < sigmoid(eta)),
                ExponentialFamily::Poisson => Poisson::new(eta.exp()).expect("positive rate").sample(&mut rng),
            }
        })
        .collect();
    Dataset::from_rows(&y, &rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub family: ExponentialFamily,
    pub quadrature: f64,
    pub expansion: f64,
    pub gap: f64,
    pub closed_form: Option<f64>,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
}

/// Fits the fixture for `(family, p, n, seed)` and compares the quadrature
/// marginal with the Laplace expansion.
pub fn run_oracle(
    family: ExponentialFamily,
    p: usize,
    n: usize,
    seed: u64,
    prior: &Prior,
    spec: &QuadratureSpec,
) -> Result<OracleRecord> {
    if p > MAX_QUADRATURE_DIM {
        return Err(Error::UnsupportedDimension(p));
    }
    let data = oracle_dataset(family, p, n, seed)?;
    let model = CandidateModel::new((0..p).collect(), family)?;
    let fit = fit_qmle(&data, &model, &FitConfig::default())?;
    let quadrature = log_marginal_quadrature_at(&data, &model, &fit, prior, spec)?;
    let expansion = laplace_expansion(&fit, prior, n)?;
    let closed_form = match (family, prior) {
        (ExponentialFamily::Gaussian, Prior::Gaussian { mean, cov }) => {
            Some(gaussian_log_marginal_closed_form(&data, &model, mean, cov)?)
        }
        _ => None,
    };
    Ok(OracleRecord {
        family,
        quadrature,
        expansion,
        gap: (quadrature - expansion).abs(),
        closed_form,
        n,
        p,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExponentialFamily::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for m in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(m);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "m={m}");
            // Exact for degree 2m - 1.
            let deg = 2 * m - 2;
            let approx: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            assert!((approx - 2.0 / (deg as f64 + 1.0)).abs() < 1e-12, "m={m}");
        }
        let (x, _) = gauss_legendre(3);
        assert!((x[2] - (0.6f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn one_dimensional_analytic_integral() {
        let d = Dataset::from_rows(&[0.0], &[vec![1.0]]).unwrap();
        let m = CandidateModel::new(vec![0], Gaussian).unwrap();
        let v = gaussian_log_marginal_closed_form(&d, &m, &DVector::zeros(1), &DMatrix::identity(1, 1)).unwrap();
        // ∫ exp(-θ²/2) N(θ; 0, 1) dθ = 1/√2.
        assert!((v - (0.5f64).sqrt().ln()).abs() < 1e-14);
        assert!((v + 0.34657359027997264).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_direct_1d_integration() {
        // Independent trapezoid integration on a wide fine grid.
        let rows = vec![vec![0.3], vec![-1.2], vec![0.8], vec![2.0]];
        let y = [0.5, -0.4, 1.1, 0.9];
        let d = Dataset::from_rows(&y, &rows).unwrap();
        let m = CandidateModel::new(vec![0], Gaussian).unwrap();
        let (mu, var) = (0.4, 2.5);
        let exact =
            gaussian_log_marginal_closed_form(&d, &m, &DVector::from_element(1, mu), &DMatrix::from_element(1, 1, var))
                .unwrap();
        let (lo, hi, steps) = (-20.0, 20.0, 400_000);
        let h = (hi - lo) / steps as f64;
        let mut sum = 0.0;
        for i in 0..=steps {
            let t = lo + i as f64 * h;
            let hn: f64 = rows.iter().zip(&y).map(|(r, yj)| yj * r[0] * t - 0.5 * (r[0] * t).powi(2)).sum();
            let prior = (-(t - mu).powi(2) / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).sqrt();
            let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
            sum += w * (hn).exp() * prior;
        }
        assert!((exact - (sum * h).ln()).abs() < 1e-9);
    }

    #[test]
    fn symmetric_data_quadratic_term_vanishes() {
        let d = Dataset::from_rows(&[1.0, -1.0], &[vec![1.0], vec![1.0]]).unwrap();
        let m = CandidateModel::new(vec![0], Gaussian).unwrap();
        let v = gaussian_log_marginal_closed_form(&d, &m, &DVector::zeros(1), &DMatrix::identity(1, 1)).unwrap();
        // v = Σ y x = 0, so only -½ log det(A + 1) = -½ log 3 remains.
        assert!((v + 0.5 * 3f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let data = oracle_dataset(Gaussian, 2, 100, 1).unwrap();
        let model = CandidateModel::new(vec![0, 1], Gaussian).unwrap();
        let prior = Prior::isotropic_gaussian(2, 1.0);
        let Prior::Gaussian { mean, cov } = &prior else { unreachable!() };
        let exact = gaussian_log_marginal_closed_form(&data, &model, mean, cov).unwrap();
        let quad = log_marginal_quadrature(&data, &model, &prior, &QuadratureSpec::default()).unwrap();
        assert!((quad - exact).abs() < 1e-8, "{quad} vs {exact}");
    }

    #[test]
    fn laplace_matches_closed_form_under_flat_prior() {
        let data = oracle_dataset(Gaussian, 2, 100, 2).unwrap();
        let model = CandidateModel::new(vec![0, 1], Gaussian).unwrap();
        let fit = fit_qmle(&data, &model, &FitConfig::default()).unwrap();
        let mut gaps = Vec::new();
        for var in [1e2, 1e4, 1e6, 1e8] {
            let prior = Prior::isotropic_gaussian(2, var);
            let Prior::Gaussian { mean, cov } = &prior else { unreachable!() };
            let exact = gaussian_log_marginal_closed_form(&data, &model, mean, cov).unwrap();
            gaps.push((laplace_expansion(&fit, &prior, 100).unwrap() - exact).abs());
        }
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
        assert!(gaps[3] < 1e-6);
    }

    #[test]
    fn uniform_prior_width_shift() {
        let data = oracle_dataset(BernoulliLogit, 1, 200, 3).unwrap();
        let model = CandidateModel::new(vec![0], BernoulliLogit).unwrap();
        let spec = QuadratureSpec::default();
        let a = log_marginal_quadrature(&data, &model, &Prior::UniformBox { half_width: 10.0 }, &spec).unwrap();
        let b = log_marginal_quadrature(&data, &model, &Prior::UniformBox { half_width: 20.0 }, &spec).unwrap();
        assert!(((a - b) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn laplace_qbic_identity() {
        let data = oracle_dataset(BernoulliLogit, 2, 150, 4).unwrap();
        let model = CandidateModel::new(vec![0, 1], BernoulliLogit).unwrap();
        let fit = fit_qmle(&data, &model, &FitConfig::default()).unwrap();
        let bound = 50.0;
        let lap = laplace_expansion(&fit, &Prior::UniformBox { half_width: bound }, 150).unwrap();
        let q = crate::criteria::qbic(&fit).unwrap();
        let rhs = -q / 2.0 + LN_2PI - 2.0 * (2.0 * bound).ln();
        assert!((lap - rhs).abs() < 1e-10);
    }

    #[test]
    fn grid_refinement_is_stable() {
        let data = oracle_dataset(BernoulliLogit, 1, 100, 5).unwrap();
        let model = CandidateModel::new(vec![0], BernoulliLogit).unwrap();
        let prior = Prior::UniformBox { half_width: 50.0 };
        let coarse = QuadratureSpec { points_per_dim: 32, radius_in_se: 8.0 };
        let fine = QuadratureSpec { points_per_dim: 64, radius_in_se: 8.0 };
        let a = log_marginal_quadrature(&data, &model, &prior, &coarse).unwrap();
        let b = log_marginal_quadrature(&data, &model, &prior, &fine).unwrap();
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        let wide = QuadratureSpec { points_per_dim: 96, radius_in_se: 10.0 };
        let narrow = QuadratureSpec { points_per_dim: 96, radius_in_se: 6.0 };
        let c = log_marginal_quadrature(&data, &model, &prior, &wide).unwrap();
        let d = log_marginal_quadrature(&data, &model, &prior, &narrow).unwrap();
        assert!((c - d).abs() < 1e-5, "{c} vs {d}");
    }

    #[test]
    fn rejects_bad_requests() {
        let data = oracle_dataset(BernoulliLogit, 3, 50, 6).unwrap();
        let wide = Dataset::new(
            data.y().clone(),
            DMatrix::from_fn(50, 4, |i, j| if j < 3 { data.x()[(i, j)] } else { 1.0 }),
            (1..=4).map(|k| format!("x{k}")).collect(),
        )
        .unwrap();
        let m4 = CandidateModel::new(vec![0, 1, 2, 3], BernoulliLogit).unwrap();
        let prior = Prior::UniformBox { half_width: 50.0 };
        assert!(matches!(
            log_marginal_quadrature(&wide, &m4, &prior, &QuadratureSpec::default()),
            Err(Error::UnsupportedDimension(4))
        ));
        assert!(matches!(
            run_oracle(BernoulliLogit, 4, 50, 1, &prior, &QuadratureSpec::default()),
            Err(Error::UnsupportedDimension(4))
        ));
        let sep = Dataset::from_rows(&[0.0, 1.0], &[vec![-1.0], vec![1.0]]).unwrap();
        let m1 = CandidateModel::new(vec![0], BernoulliLogit).unwrap();
        assert!(matches!(
            log_marginal_quadrature(&sep, &m1, &prior, &QuadratureSpec::default()),
            Err(Error::InvalidFit(_))
        ));
        let bad = QuadratureSpec { points_per_dim: 10, radius_in_se: 8.0 };
        assert!(log_marginal_quadrature(&data, &CandidateModel::new(vec![0], BernoulliLogit).unwrap(), &prior, &bad).is_err());
    }

    #[test]
    fn prior_support_error() {
        let data = oracle_dataset(BernoulliLogit, 1, 100, 7).unwrap();
        let model = CandidateModel::new(vec![0], BernoulliLogit).unwrap();
        let fit = fit_qmle(&data, &model, &FitConfig::default()).unwrap();
        let tiny = Prior::UniformBox {
            half_width: fit.theta_hat[0].abs() / 2.0,
        };
        assert!(matches!(laplace_expansion(&fit, &tiny, 100), Err(Error::PriorSupport)));
    }

    #[test]
    fn log_sum_exp_is_stable() {
        let v = [1000.0, 1000.0];
        assert!((log_sum_exp(&v) - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }
}

//! Synthetic data-generating processes.
//!
//! Three scenarios are provided and registered by name in a
//! [`ScenarioRegistry`]:
//!
//! - `logit-ar`: intercept plus three AR(1) covariates with correlated
//!   Gaussian innovations, logistic response. The working logit models are
//!   correctly specified.
//! - `probit-ar`: same covariates, probit response; every logit candidate is
//!   misspecified.
//! - `lag-chain`: one AR(1) chain `Z` with lags `Z_j, Z_{j-1}, ...` as the
//!   design, logistic response on the first four lags.
//!
//! All randomness comes from [`SimRng`] (ChaCha8). Normal draws use the
//! Ziggurat sampler of `rand_distr::StandardNormal`; Bernoulli draws compare
//! a `U[0,1)` variate against the success probability.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::family::{sigmoid, ExponentialFamily};
use crate::search::{SearchMode, DEFAULT_MAX_ORDER};

pub type SimRng = ChaCha8Rng;

/// AR coefficients of covariates 2..4.
pub const AR_COEFFS: [f64; 3] = [0.5, -0.7, 0.8];
/// Values of covariates 2..4 at `j = 1`.
pub const AR_INITIAL: [f64; 3] = [1.0, 0.0, -1.0];
/// Correlation base of the innovation covariance `Σ_kl = 0.5^|k-l|`.
pub const INNOVATION_RHO: f64 = 0.5;
/// AR coefficient of the lag chain.
pub const CHAIN_COEFF: f64 = 0.6;

pub const LOGIT_AR_THETA: [f64; 4] = [0.0, -3.0, 0.0, 1.0];
pub const LAG_CHAIN_THETA: [f64; 4] = [3.0, -1.0, 2.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Link {
    Logit,
    Probit,
}

impl Link {
    pub fn probability(self, eta: f64) -> f64 {
        match self {
            Link::Logit => sigmoid(eta),
            Link::Probit => standard_normal_cdf(eta),
        }
    }
}

pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}

/// Lower Cholesky factor of the innovation covariance.
pub fn innovation_cholesky() -> Matrix3<f64> {
    let sigma = Matrix3::from_fn(|k, l| INNOVATION_RHO.powi((k as i32 - l as i32).abs()));
    sigma.cholesky().expect("innovation covariance is positive definite").l()
}

pub(crate) fn ar_covariates_with(n: usize, mut innovation: impl FnMut() -> [f64; 3]) -> DMatrix<f64> {
    let mut x = DMatrix::zeros(n, 4);
    if n == 0 {
        return x;
    }
    for j in 0..n {
        x[(j, 0)] = 1.0;
    }
    for k in 0..3 {
        x[(0, k + 1)] = AR_INITIAL[k];
    }
    for j in 1..n {
        let e = innovation();
        for k in 0..3 {
            x[(j, k + 1)] = AR_COEFFS[k] * x[(j - 1, k + 1)] + e[k];
        }
    }
    x
}

/// `n × 4` design: a column of ones and three AR(1) covariates.
pub fn gen_covariates_ar(n: usize, rng: &mut SimRng) -> DMatrix<f64> {
    let l = innovation_cholesky();
    ar_covariates_with(n, || {
        let z = Vector3::from_fn(|_, _| StandardNormal.sample(&mut *rng));
        let e = l * z;
        [e[0], e[1], e[2]]
    })
}

/// Independent Bernoulli responses with success probability `link(x_j'θ*)`.
pub fn gen_response(
    x: &DMatrix<f64>,
    theta_star: &[f64],
    link: Link,
    rng: &mut SimRng,
) -> Result<DVector<f64>> {
    if x.ncols() != theta_star.len() {
        return Err(Error::Argument(format!(
            "design has {} columns but theta* has {}",
            x.ncols(),
            theta_star.len()
        )));
    }
    Ok(DVector::from_fn(x.nrows(), |j, _| {
        let eta: f64 = (0..x.ncols()).map(|k| x[(j, k)] * theta_star[k]).sum();
        f64::from(rng.random::<f64>() < link.probability(eta))
    }))
}

pub(crate) fn lag_chain_with(n: usize, lag_p: usize, mut eps: impl FnMut() -> f64) -> DMatrix<f64> {
    let mut z = vec![0.0; n];
    if n > 0 {
        z[0] = 1.0;
    }
    for i in 1..n {
        z[i] = CHAIN_COEFF * z[i - 1] + eps();
    }
    DMatrix::from_fn(n, lag_p, |j, lag| if j >= lag { z[j - lag] } else { 0.0 })
}

/// `n × lag_p` matrix with row `j` equal to `(Z_j, ..., Z_{j-lag_p+1})`.
pub fn gen_lag_chain(n: usize, lag_p: usize, rng: &mut SimRng) -> DMatrix<f64> {
    lag_chain_with(n, lag_p, || StandardNormal.sample(&mut *rng))
}

/// A named data-generating process with its candidate-search protocol.
pub trait Scenario: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn kind(&self) -> ScenarioKind;

    fn theta_star(&self) -> &[f64];

    /// Number of design columns produced by [`Scenario::generate`].
    fn design_width(&self) -> usize;

    /// Working family of the candidates.
    fn family(&self) -> ExponentialFamily {
        ExponentialFamily::BernoulliLogit
    }

    fn search_mode(&self, n: usize) -> SearchMode;

    /// Model id of the optimal candidate.
    fn optimal_model(&self) -> usize;

    /// True when the optimal candidate's limiting parameter equals θ*.
    fn correctly_specified(&self) -> bool;

    /// θ* entry attached to a design column, if the column enters the truth.
    fn truth_for_column(&self, column: usize) -> Option<f64> {
        self.theta_star().get(column).copied()
    }

    fn generate(&self, n: usize, rng: &mut SimRng) -> Result<Dataset>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    LogitAr,
    ProbitAr,
    LagChain,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::LogitAr => "logit-ar",
            ScenarioKind::ProbitAr => "probit-ar",
            ScenarioKind::LagChain => "lag-chain",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioRegistry::standard().get(s).map(|sc| sc.kind())
    }
}

/// Covariates from [`gen_covariates_ar`] with a logit or probit response.
#[derive(Debug, Clone)]
pub struct ArScenario {
    pub link: Link,
    pub theta_star: Vec<f64>,
}

impl ArScenario {
    pub fn logit() -> Self {
        Self {
            link: Link::Logit,
            theta_star: LOGIT_AR_THETA.to_vec(),
        }
    }

    pub fn probit() -> Self {
        Self {
            link: Link::Probit,
            theta_star: LOGIT_AR_THETA.to_vec(),
        }
    }
}

impl Scenario for ArScenario {
    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn kind(&self) -> ScenarioKind {
        match self.link {
            Link::Logit => ScenarioKind::LogitAr,
            Link::Probit => ScenarioKind::ProbitAr,
        }
    }

    fn theta_star(&self) -> &[f64] {
        &self.theta_star
    }

    fn design_width(&self) -> usize {
        4
    }

    fn search_mode(&self, _n: usize) -> SearchMode {
        SearchMode::ExhaustiveSubsets
    }

    fn optimal_model(&self) -> usize {
        // {x2, x4} in the four-covariate subset numbering.
        10
    }

    fn correctly_specified(&self) -> bool {
        self.link == Link::Logit
    }

    fn generate(&self, n: usize, rng: &mut SimRng) -> Result<Dataset> {
        if self.theta_star.len() != 4 {
            return Err(Error::Argument("AR scenarios need a length-4 theta*".into()));
        }
        let x = gen_covariates_ar(n, rng);
        let y = gen_response(&x, &self.theta_star, self.link, rng)?;
        Dataset::new(y, x, (1..=4).map(|k| format!("x{k}")).collect())
    }
}

/// Lags of a single AR(1) chain, logistic response on the first `θ*.len()` lags.
#[derive(Debug, Clone)]
pub struct LagChainScenario {
    pub theta_star: Vec<f64>,
    pub max_order: usize,
}

impl Default for LagChainScenario {
    fn default() -> Self {
        Self {
            theta_star: LAG_CHAIN_THETA.to_vec(),
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl Scenario for LagChainScenario {
    fn name(&self) -> &'static str {
        ScenarioKind::LagChain.name()
    }

    fn kind(&self) -> ScenarioKind {
        ScenarioKind::LagChain
    }

    fn theta_star(&self) -> &[f64] {
        &self.theta_star
    }

    fn design_width(&self) -> usize {
        self.max_order.max(self.theta_star.len())
    }

    fn search_mode(&self, n: usize) -> SearchMode {
        SearchMode::HierarchicalForward {
            max_order: self.max_order.min(n.saturating_sub(1)).max(1),
        }
    }

    fn optimal_model(&self) -> usize {
        self.theta_star.len()
    }

    fn correctly_specified(&self) -> bool {
        true
    }

    fn truth_for_column(&self, column: usize) -> Option<f64> {
        // Lags beyond the true order enter with coefficient zero.
        Some(self.theta_star.get(column).copied().unwrap_or(0.0))
    }

    fn generate(&self, n: usize, rng: &mut SimRng) -> Result<Dataset> {
        let lag_p = self.theta_star.len();
        if lag_p == 0 {
            return Err(Error::Argument("lag chain needs a nonempty theta*".into()));
        }
        let width = self.design_width();
        let x = gen_lag_chain(n, width, rng);
        let truth = x.columns(0, lag_p).into_owned();
        let y = gen_response(&truth, &self.theta_star, Link::Logit, rng)?;
        Dataset::new(y, x, (0..width).map(|k| format!("z_lag{k}")).collect())
    }
}

/// Name-indexed scenarios.
#[derive(Clone, Default)]
pub struct ScenarioRegistry {
    entries: Vec<(String, Arc<dyn Scenario>)>,
}

impl ScenarioRegistry {
    /// The three built-in scenarios, also reachable as `paper1`..`paper3`.
    pub fn standard() -> Self {
        let mut reg = Self::default();
        let logit: Arc<dyn Scenario> = Arc::new(ArScenario::logit());
        let probit: Arc<dyn Scenario> = Arc::new(ArScenario::probit());
        let chain: Arc<dyn Scenario> = Arc::new(LagChainScenario::default());
        for (names, sc) in [
            (["logit-ar", "paper1"], logit),
            (["probit-ar", "paper2"], probit),
            (["lag-chain", "paper3"], chain),
        ] {
            for name in names {
                reg.register(name, Arc::clone(&sc));
            }
        }
        reg
    }

    pub fn register(&mut self, name: &str, scenario: Arc<dyn Scenario>) {
        let key = name.to_ascii_lowercase();
        self.entries.retain(|(k, _)| *k != key);
        self.entries.push((key, scenario));
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Scenario>> {
        let key = name.to_ascii_lowercase();
        self.entries
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, s)| Arc::clone(s))
            .ok_or_else(|| Error::UnknownName {
                kind: "scenario",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }
}

impl fmt::Debug for ScenarioRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// One dataset request: scenario, size, truth and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DgpSpec {
    pub scenario: ScenarioKind,
    pub n: usize,
    pub theta_star: Vec<f64>,
    pub seed: u64,
    /// Number of true lags (lag chain only); must equal `theta_star.len()`.
    pub lag_p: usize,
}

impl DgpSpec {
    pub fn standard(scenario: ScenarioKind, n: usize, seed: u64) -> Self {
        let theta_star = match scenario {
            ScenarioKind::LogitAr | ScenarioKind::ProbitAr => LOGIT_AR_THETA.to_vec(),
            ScenarioKind::LagChain => LAG_CHAIN_THETA.to_vec(),
        };
        Self {
            scenario,
            n,
            lag_p: theta_star.len(),
            theta_star,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Argument("n must be at least 1".into()));
        }
        match self.scenario {
            ScenarioKind::LogitAr | ScenarioKind::ProbitAr if self.theta_star.len() != 4 => {
                Err(Error::Argument("AR scenarios need a length-4 theta*".into()))
            }
            ScenarioKind::LagChain if self.theta_star.len() != self.lag_p || self.lag_p == 0 => {
                Err(Error::Argument("lag chain needs len(theta*) = lag_p >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn scenario(&self) -> Arc<dyn Scenario> {
        match self.scenario {
            ScenarioKind::LogitAr => Arc::new(ArScenario {
                link: Link::Logit,
                theta_star: self.theta_star.clone(),
            }),
            ScenarioKind::ProbitAr => Arc::new(ArScenario {
                link: Link::Probit,
                theta_star: self.theta_star.clone(),
            }),
            ScenarioKind::LagChain => Arc::new(LagChainScenario {
                theta_star: self.theta_star.clone(),
                ..LagChainScenario::default()
            }),
        }
    }
}

/// Generates the dataset for `spec` from a fresh generator seeded with `spec.seed`.
pub fn generate(spec: &DgpSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = SimRng::seed_from_u64(spec.seed);
    spec.scenario().generate(spec.n, &mut rng)
}

/// Generator for replication `index` under `master_seed` at sample size `n`.
///
/// The ChaCha stream number is the replication index, so a replication's
/// draws never depend on how replications are scheduled.
pub fn replication_rng(master_seed: u64, n: usize, index: u64) -> SimRng {
    let key = master_seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = SimRng::seed_from_u64(key);
    rng.set_stream(index);
    rng
}

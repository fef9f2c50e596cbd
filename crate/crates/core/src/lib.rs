//! Quasi-maximum-likelihood estimation of canonical-link GLMs on dependent
//! data, with QBIC, BIC and fAIC model selection.
//!
//! - [`family`]: cumulant functions of the Gaussian, logit and Poisson working models.
//! - [`fit`]: quasi-log-likelihood, score, observed information, Newton QMLE
//!   and sandwich covariance.
//! - [`criteria`]: criterion strategies, the name registry and minimum-criterion selection.
//! - [`search`]: subset and nested-lag candidate enumeration and selection.
//! - [`oracle`]: quadrature and closed-form log marginal quasi-likelihoods
//!   against which the Laplace expansion behind QBIC is checked.
//! - [`simgen`]: synthetic data-generating processes.
//! - [`harness`]: seeded, thread-count-independent Monte Carlo replication.
//! - [`io`]: CSV ingestion, normalization, seasonal indicators and lagged designs.

pub mod criteria;
pub mod data;
pub mod error;
pub mod family;
pub mod fit;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod search;
pub mod simgen;

pub use criteria::{CriterionKind, CriterionRegistry, CriterionReport};
pub use data::{CandidateModel, Dataset};
pub use error::{Error, Result};
pub use family::ExponentialFamily;
pub use fit::{fit_qmle, FitConfig, FitResult, Init};
pub use search::{SearchMode, SearchSpec, Selection};
pub use harness::{run_experiment, ExperimentResult, ExperimentSpec};
pub use io::{DesignSchema, RawTable};
pub use oracle::{Prior, QuadratureSpec};
pub use simgen::{Scenario, ScenarioRegistry};

//! Command-line front-end: `fit`, `select`, `simulate`, `oracle` and `gen`.
//!
//! Exit codes: 0 success, 1 usage or argument error, 2 I/O or input format
//! error, 3 no selectable candidate, 4 unsupported request, 5 numerical failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use qbic::criteria::CriterionReport;
use qbic::fit::{fit_qmle, robust_covariance, FitConfig};
use qbic::harness::{self, columns_label, ExperimentResult, ExperimentSpec};
use qbic::io::{self, DesignSchema, MissingPolicy, RawTable};
use qbic::oracle::{self, Prior, QuadratureSpec};
use qbic::search::{self, SearchMode, SearchSpec};
use qbic::simgen::{self, DgpSpec, ScenarioRegistry};
use qbic::{CandidateModel, CriterionKind, Dataset, Error, ExponentialFamily};

/// Environment variable holding the default output directory.
pub const OUT_DIR_ENV: &str = "QBIC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "qbic", version, about = "Quasi-likelihood GLM fitting and QBIC/BIC/fAIC model selection")]
pub struct Cli {
    /// Optional TOML file with defaults; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory (default: $QBIC_OUT_DIR).
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one candidate model to a CSV file.
    Fit(FitArgs),
    /// Score every candidate and rank them.
    Select(SelectArgs),
    /// Run a Monte Carlo selection experiment.
    Simulate(SimulateArgs),
    /// Compare the quadrature marginal quasi-likelihood with its expansion.
    Oracle(OracleArgs),
    /// Export a simulated dataset as CSV.
    Gen(GenArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct DataArgs {
    /// Input CSV file.
    #[arg(long)]
    pub data: PathBuf,
    /// TOML design schema; without it the response is `--response` and all
    /// other columns are predictors.
    #[arg(long)]
    pub schema: Option<PathBuf>,
    #[arg(long, default_value = "y")]
    pub response: String,
    /// gaussian, logit or poisson (default: logit).
    #[arg(long)]
    pub family: Option<ExponentialFamily>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct FitFlags {
    /// Newton iteration limit (default: 100).
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Box bound B on every coordinate (default: 50).
    #[arg(long)]
    pub theta_bound: Option<f64>,
    /// Score norm tolerance (default: 1e-8 times n).
    #[arg(long)]
    pub grad_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: DataArgs,
    /// Comma-separated predictor names (default: all predictors).
    #[arg(long, value_delimiter = ',')]
    pub columns: Vec<String>,
    /// Also report the sandwich covariance with this kernel bandwidth.
    #[arg(long)]
    pub bandwidth: Option<usize>,
    #[command(flatten)]
    pub fit: FitFlags,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub input: DataArgs,
    /// Criterion used for ranking and for the winner.
    #[arg(long)]
    pub criterion: Option<String>,
    /// Forward search over nested column prefixes up to this order instead
    /// of all subsets.
    #[arg(long)]
    pub forward: Option<usize>,
    #[command(flatten)]
    pub fit: FitFlags,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// logit-ar (paper1), probit-ar (paper2) or lag-chain (paper3).
    #[arg(long)]
    pub scenario: Option<String>,
    /// Comma-separated sample sizes.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Replications per sample size (default: 1000).
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub fit: FitFlags,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub family: Option<ExponentialFamily>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// `uniform` (box of half-width `--prior-scale`) or `gaussian`
    /// (variance `--prior-scale`).
    #[arg(long)]
    pub prior: Option<String>,
    #[arg(long)]
    pub prior_scale: Option<f64>,
    /// Gauss-Legendre points per dimension (default: 64).
    #[arg(long)]
    pub points: Option<usize>,
    /// Half-width of the integration box in standard errors (default: 8).
    #[arg(long)]
    pub radius: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub scenario: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Destination file (default: `<scenario>_n<N>_seed<SEED>.csv` in the
    /// output directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Optional defaults read from `--config`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub fit: FitSection,
    #[serde(default)]
    pub select: SelectSection,
    #[serde(default)]
    pub simulate: SimulateSection,
    #[serde(default)]
    pub oracle: OracleSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSection {
    pub max_iter: Option<usize>,
    pub theta_bound: Option<f64>,
    pub grad_tol: Option<f64>,
    pub family: Option<ExponentialFamily>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectSection {
    pub criterion: Option<String>,
    pub forward: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSection {
    pub scenario: Option<String>,
    pub n: Option<Vec<usize>>,
    pub reps: Option<usize>,
    pub init_half_width: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub family: Option<ExponentialFamily>,
    pub p: Option<usize>,
    pub n: Option<usize>,
    pub prior: Option<String>,
    pub prior_scale: Option<f64>,
    pub points_per_dim: Option<usize>,
    pub radius_in_se: Option<f64>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Core(Error::io(path, e)))?;
        Self::from_toml(&text)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Help or version text requested; not a failure.
    Help(String),
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Help(m) | CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) => 1,
            CliError::Core(e) => match e {
                Error::Io { .. } | Error::Csv(_) | Error::Schema(_) | Error::Parse { .. } => 2,
                Error::NoValidCandidate => 3,
                Error::UnsupportedDimension(_)
                | Error::TooManyCandidates(_)
                | Error::MissingReference(_)
                | Error::UnknownName { .. } => 4,
                Error::Domain(_)
                | Error::SingularInformation { .. }
                | Error::Initialization(_)
                | Error::InvalidFit(_)
                | Error::PriorSupport
                | Error::DegenerateColumn(_)
                | Error::InsufficientHistory { .. } => 5,
                _ => 1,
            },
        }
    }
}

/// What a command printed and wrote.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<PathBuf>,
    /// Nonzero when the command finished but the result is unusable
    /// (for example a fit that did not converge).
    pub exit_code: i32,
}

struct Context {
    config: RunConfig,
    out_dir: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
        _ => CliError::Usage(e.render().to_string()),
    })?;
    run_cli(cli)
}

pub fn run_cli(cli: Cli) -> Result<Outcome, CliError> {
    let config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| config.out_dir.clone())
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from));
    let threads = cli.threads.or(config.threads);
    if threads == Some(0) {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    let ctx = Context { config, out_dir };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Fit(a) => cmd_fit(&ctx, a),
        Command::Select(a) => cmd_select(&ctx, a),
        Command::Simulate(a) => cmd_simulate(&ctx, a),
        Command::Oracle(a) => cmd_oracle(&ctx, a),
        Command::Gen(a) => cmd_gen(&ctx, a),
    })
}

fn fit_config(ctx: &Context, flags: &FitFlags) -> Result<FitConfig, CliError> {
    let mut cfg = FitConfig::default();
    let sec = &ctx.config.fit;
    if let Some(v) = flags.max_iter.or(sec.max_iter) {
        cfg.max_iter = v;
    }
    if let Some(v) = flags.theta_bound.or(sec.theta_bound) {
        cfg.theta_bound = v;
    }
    if let Some(v) = flags.grad_tol.or(sec.grad_tol) {
        cfg.grad_tol = Some(v);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Core(Error::io(dir, e)))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Core(Error::io(path, e)))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

/// Loads the dataset and the family it should be fitted with.
fn load_input(ctx: &Context, input: &DataArgs) -> Result<(Dataset, ExponentialFamily), CliError> {
    let (data, schema_family) = match &input.schema {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Core(Error::io(path, e)))?;
            let schema: DesignSchema =
                toml::from_str(&text).map_err(|e| CliError::Usage(format!("invalid schema {}: {e}", path.display())))?;
            (schema.load(&input.data)?, Some(schema.family))
        }
        None => {
            let table = io::load_csv(&input.data, std::slice::from_ref(&input.response), &MissingPolicy::Reject)?;
            let predictors: Vec<String> = table.names().iter().filter(|n| **n != input.response).cloned().collect();
            (io::build_lagged_design(&table, &input.response, &predictors, 0)?, None)
        }
    };
    let family = input
        .family
        .or(ctx.config.fit.family)
        .or(schema_family)
        .unwrap_or(ExponentialFamily::BernoulliLogit);
    Ok((data, family))
}

#[derive(Serialize)]
struct FitReport<'a> {
    family: ExponentialFamily,
    columns: &'a [String],
    n: usize,
    theta_hat: &'a [f64],
    std_error: Vec<f64>,
    robust_std_error: Option<Vec<f64>>,
    loglik: f64,
    score_norm: f64,
    iterations: usize,
    converged: bool,
    boundary_hit: bool,
    criteria: &'a CriterionReport,
}

fn cmd_fit(ctx: &Context, a: &FitArgs) -> Result<Outcome, CliError> {
    let (data, family) = load_input(ctx, &a.input)?;
    let columns: Vec<String> = if a.columns.is_empty() {
        data.column_names().to_vec()
    } else {
        a.columns.clone()
    };
    let idx = columns
        .iter()
        .map(|c| {
            data.column_index(c).ok_or_else(|| {
                CliError::Core(Error::UnknownName {
                    kind: "column",
                    name: c.clone(),
                })
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let model = CandidateModel::new(idx, family)?;
    let fit = fit_qmle(&data, &model, &fit_config(ctx, &a.fit)?)?;
    let report = CriterionReport::from_fit(1, &fit, data.n());
    let se: Vec<f64> = match qbic::linalg::inverse_spd(&fit.info_hat) {
        Some(inv) => (0..fit.dim()).map(|i| inv[(i, i)].sqrt()).collect(),
        None => vec![f64::NAN; fit.dim()],
    };
    let robust = match a.bandwidth {
        Some(l) if fit.converged => {
            let cov = robust_covariance(&data, &model, &fit, l)?;
            Some((0..fit.dim()).map(|i| cov[(i, i)].sqrt()).collect::<Vec<_>>())
        }
        _ => None,
    };

    let mut out = String::new();
    writeln!(out, "family {}  n = {}  iterations {}", family, data.n(), fit.iterations).unwrap();
    writeln!(out, "{:<14}{:>12}{:>12}{}", "column", "estimate", "s.e.", if robust.is_some() { "    robust s.e." } else { "" }).unwrap();
    for (i, c) in columns.iter().enumerate() {
        write!(out, "{:<14}{:>12.4}{:>12.4}", c, fit.theta_hat[i], se[i]).unwrap();
        if let Some(r) = &robust {
            write!(out, "{:>16.4}", r[i]).unwrap();
        }
        out.push('\n');
    }
    let opt = |v: Option<f64>| v.map_or("--".to_string(), |x| format!("{x:.4}"));
    writeln!(
        out,
        "loglik {:.4}  QBIC {}  BIC {:.4}  fAIC {:.4}",
        fit.loglik,
        opt(report.qbic),
        report.bic,
        report.faic
    )
    .unwrap();
    let mut exit_code = 0;
    if !fit.converged {
        exit_code = 5;
        writeln!(
            out,
            "warning: not converged (score norm {:.3e}{})",
            fit.score_norm,
            if fit.boundary_hit { ", estimate on the parameter bound" } else { "" }
        )
        .unwrap();
    }

    let mut files = Vec::new();
    if let Some(dir) = &ctx.out_dir {
        ensure_dir(dir)?;
        let path = dir.join("fit.json");
        let json = FitReport {
            family,
            columns: &columns,
            n: data.n(),
            theta_hat: &fit.theta_hat,
            std_error: se,
            robust_std_error: robust,
            loglik: fit.loglik,
            score_norm: fit.score_norm,
            iterations: fit.iterations,
            converged: fit.converged,
            boundary_hit: fit.boundary_hit,
            criteria: &report,
        };
        write_text(&path, &to_json(&json))?;
        files.push(path);
    }
    Ok(Outcome {
        stdout: out,
        files,
        exit_code,
    })
}

#[derive(Serialize)]
struct SelectReport<'a> {
    criterion: CriterionKind,
    winner: usize,
    winner_columns: Vec<String>,
    candidates: Vec<RankedCandidate<'a>>,
    failures: Vec<(usize, String)>,
}

#[derive(Serialize)]
struct RankedCandidate<'a> {
    rank: Option<usize>,
    columns: Vec<String>,
    #[serde(flatten)]
    report: &'a CriterionReport,
}

fn cmd_select(ctx: &Context, a: &SelectArgs) -> Result<Outcome, CliError> {
    let (data, family) = load_input(ctx, &a.input)?;
    let criterion: CriterionKind = a
        .criterion
        .clone()
        .or_else(|| ctx.config.select.criterion.clone())
        .unwrap_or_else(|| "qbic".into())
        .parse()?;
    let mode = match a.forward.or(ctx.config.select.forward) {
        Some(k) => SearchMode::HierarchicalForward { max_order: k },
        None => SearchMode::ExhaustiveSubsets,
    };
    let spec = SearchSpec {
        mode,
        criterion,
        family,
        fit_config: fit_config(ctx, &a.fit)?,
    };
    let selection = search::select(&data, &spec)?;
    let candidates = search::enumerate_candidates(data.p(), mode, family)?;
    let names = |id: usize| -> Vec<String> {
        candidates[id - 1]
            .columns()
            .iter()
            .map(|&c| data.column_names()[c].clone())
            .collect()
    };

    let mut order: Vec<&CriterionReport> = selection.reports.iter().collect();
    order.sort_by(|x, y| {
        let key = |r: &CriterionReport| r.value(criterion).unwrap_or(f64::INFINITY);
        key(x).total_cmp(&key(y)).then(x.model_id.cmp(&y.model_id))
    });
    let ranked: Vec<RankedCandidate> = order
        .iter()
        .enumerate()
        .map(|(i, r)| RankedCandidate {
            rank: (!r.excluded).then_some(i + 1),
            columns: names(r.model_id),
            report: r,
        })
        .collect();

    let mut out = String::new();
    writeln!(out, "{} candidates, ranked by {}; n = {}", selection.reports.len(), criterion, data.n()).unwrap();
    writeln!(out, "{:>5} {:>6}  {:<28}{:>12}{:>12}{:>12}", "rank", "model", "columns", "QBIC", "BIC", "fAIC").unwrap();
    for c in &ranked {
        let q = c.report.qbic.map_or("--".into(), |v| format!("{v:.4}"));
        let rank = c.rank.map_or("-".into(), |r| r.to_string());
        let mut flag = String::new();
        if c.report.excluded {
            flag.push_str("  singular");
        } else if c.report.boundary_hit {
            flag.push_str("  bound");
        }
        writeln!(
            out,
            "{:>5} {:>6}  {:<28}{:>12}{:>12.4}{:>12.4}{}",
            rank,
            c.report.model_id,
            c.columns.join(","),
            q,
            c.report.bic,
            c.report.faic,
            flag
        )
        .unwrap();
    }
    for f in &selection.failures {
        writeln!(out, "model {} failed: {}", f.model_id, f.message).unwrap();
    }
    writeln!(out, "selected model {} ({})", selection.winner, names(selection.winner).join(",")).unwrap();

    let mut files = Vec::new();
    if let Some(dir) = &ctx.out_dir {
        ensure_dir(dir)?;
        let csv_path = dir.join("select.csv");
        let mut header = vec!["rank".to_string(), "columns".to_string()];
        header.extend(CriterionReport::CSV_HEADER.iter().map(|s| s.to_string()));
        let rows = ranked.iter().map(|c| {
            let mut rec = vec![c.rank.map_or(String::new(), |r| r.to_string()), c.columns.join(" ")];
            rec.extend(c.report.csv_record());
            rec
        });
        io::write_records(&csv_path, &header, rows)?;
        files.push(csv_path);

        let json_path = dir.join("select.json");
        let report = SelectReport {
            criterion,
            winner: selection.winner,
            winner_columns: names(selection.winner),
            failures: selection.failures.iter().map(|f| (f.model_id, f.message.clone())).collect(),
            candidates: ranked,
        };
        write_text(&json_path, &to_json(&report))?;
        files.push(json_path);
    }
    Ok(Outcome {
        stdout: out,
        files,
        exit_code: 0,
    })
}

/// Frequency tables with criteria as rows and model ids as columns.
pub fn format_frequency_tables(result: &ExperimentResult) -> String {
    let mut out = String::new();
    for &n in &result.n_list {
        let tables: Vec<_> = result.frequencies.iter().filter(|t| t.n == n).collect();
        let models = tables.first().map_or(0, |t| t.counts.len());
        writeln!(out, "{}  n = {}  ({} replications)", result.scenario, n, result.replications).unwrap();
        let mut header = format!("{:<8}", "");
        for id in 1..=models {
            write!(header, "{id:>7}").unwrap();
        }
        header.push_str("   none");
        writeln!(out, "{header}").unwrap();
        for t in tables {
            let mut line = format!("{:<8}", t.criterion.display_name());
            for c in &t.counts {
                write!(line, "{c:>7}").unwrap();
            }
            write!(line, "{:>7}", t.unselected).unwrap();
            writeln!(out, "{line}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Mean and s.d. per candidate, one block per sample size.
pub fn format_estimate_tables(result: &ExperimentResult) -> String {
    let mut out = String::new();
    for &n in &result.n_list {
        writeln!(out, "{}  n = {}  estimates", result.scenario, n).unwrap();
        for s in result.estimates.iter().filter(|s| s.n == n) {
            let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:>9.4}")).collect::<String>();
            writeln!(out, "{:>4} {:<22} mean {}", s.model_id, columns_label(&s.columns), fmt(&s.mean)).unwrap();
            writeln!(
                out,
                "{:>4} {:<22} s.d. {}   (used {}, bound {}, failed {})",
                "",
                "",
                fmt(&s.sd),
                s.count,
                s.boundary_hits,
                s.failures
            )
            .unwrap();
        }
        out.push('\n');
    }
    out
}

fn cmd_simulate(ctx: &Context, a: &SimulateArgs) -> Result<Outcome, CliError> {
    let sec = &ctx.config.simulate;
    let name = a
        .scenario
        .clone()
        .or_else(|| sec.scenario.clone())
        .ok_or_else(|| CliError::Usage("--scenario is required".into()))?;
    let scenario = ScenarioRegistry::standard().get(&name)?;
    let n_list = if a.n.is_empty() { sec.n.clone().unwrap_or_default() } else { a.n.clone() };
    if n_list.is_empty() {
        return Err(CliError::Usage("--n is required".into()));
    }
    let reps = a.reps.or(sec.reps).unwrap_or(1000);
    let seed = a.seed.or(ctx.config.seed).unwrap_or(1);
    let mut spec = ExperimentSpec::new(Arc::clone(&scenario), reps, n_list, seed);
    spec.fit_config = fit_config(ctx, &a.fit)?;
    if let Some(w) = sec.init_half_width {
        spec.init_half_width = Some(w);
    }
    let result = harness::run_experiment(&spec)?;
    let mut out = format_frequency_tables(&result);
    out.push_str(&format_estimate_tables(&result));
    let files = match &ctx.out_dir {
        Some(dir) => harness::write_outputs(&result, dir)?,
        None => Vec::new(),
    };
    Ok(Outcome {
        stdout: out,
        files,
        exit_code: 0,
    })
}

fn cmd_oracle(ctx: &Context, a: &OracleArgs) -> Result<Outcome, CliError> {
    let sec = &ctx.config.oracle;
    let family = a.family.or(sec.family).unwrap_or(ExponentialFamily::BernoulliLogit);
    let p = a.p.or(sec.p).unwrap_or(1);
    if p > oracle::MAX_QUADRATURE_DIM {
        return Err(Error::UnsupportedDimension(p).into());
    }
    let n = a.n.or(sec.n).unwrap_or(200);
    let seed = a.seed.or(ctx.config.seed).unwrap_or(1);
    let kind = a.prior.clone().or_else(|| sec.prior.clone()).unwrap_or_else(|| "uniform".into());
    let prior = match kind.as_str() {
        "uniform" => Prior::UniformBox {
            half_width: a.prior_scale.or(sec.prior_scale).unwrap_or(50.0),
        },
        "gaussian" => Prior::isotropic_gaussian(p, a.prior_scale.or(sec.prior_scale).unwrap_or(1.0)),
        other => {
            return Err(Error::UnknownName {
                kind: "prior",
                name: other.to_string(),
            }
            .into())
        }
    };
    let mut quad = QuadratureSpec::default();
    if let Some(v) = a.points.or(sec.points_per_dim) {
        quad.points_per_dim = v;
    }
    if let Some(v) = a.radius.or(sec.radius_in_se) {
        quad.radius_in_se = v;
    }
    let record = oracle::run_oracle(family, p, n, seed, &prior, &quad)?;
    let json = to_json(&record);
    let mut files = Vec::new();
    if let Some(dir) = &ctx.out_dir {
        ensure_dir(dir)?;
        let path = dir.join(format!("oracle_{}_p{p}_n{n}_seed{seed}.json", family.name()));
        write_text(&path, &json)?;
        files.push(path);
    }
    Ok(Outcome {
        stdout: json + "\n",
        files,
        exit_code: 0,
    })
}

fn cmd_gen(ctx: &Context, a: &GenArgs) -> Result<Outcome, CliError> {
    let scenario = ScenarioRegistry::standard().get(&a.scenario)?;
    let data = simgen::generate(&DgpSpec::standard(scenario.kind(), a.n, a.seed))?;
    let path = match (&a.out, &ctx.out_dir) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => {
            ensure_dir(dir)?;
            dir.join(format!("{}_n{}_seed{}.csv", scenario.name(), a.n, a.seed))
        }
        (None, None) => return Err(CliError::Usage("--out or --out-dir is required".into())),
    };
    io::write_csv(&RawTable::from_dataset(&data, "y")?, &path)?;
    Ok(Outcome {
        stdout: format!("wrote {} rows to {}\n", data.n(), path.display()),
        files: vec![path],
        exit_code: 0,
    })
}

//! Monte Carlo replication of the selection experiments.
//!
//! Replication `r` at sample size `n` draws everything from
//! [`replication_rng`]`(master_seed, n, r)`, and results are reduced in
//! replication order, so tables are identical for any thread count. All
//! criteria are scored on the same simulated datasets and the same fits.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{CriterionKind, CriterionReport};
use crate::data::{CandidateModel, Dataset};
use crate::error::{Error, Result};
use crate::fit::{fit_qmle, FitConfig, FitResult, Init};
use crate::search::{enumerate_candidates, forward_walk, SearchMode};
use crate::simgen::{replication_rng, Scenario};

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub scenario: Arc<dyn Scenario>,
    pub replications: usize,
    pub n_list: Vec<usize>,
    pub master_seed: u64,
    pub criteria: Vec<CriterionKind>,
    pub fit_config: FitConfig,
    /// Start each fit from `U(θ* - w, θ* + w)` on the candidate's columns
    /// (zero for columns outside the truth); `None` starts from zero.
    pub init_half_width: Option<f64>,
    /// Forward search only: models `1..=stats_depth` are fitted in every
    /// replication so their estimator summaries are unconditional.
    pub stats_depth: usize,
}

impl ExperimentSpec {
    pub fn new(scenario: Arc<dyn Scenario>, replications: usize, n_list: Vec<usize>, master_seed: u64) -> Self {
        let stats_depth = scenario.optimal_model() + 2;
        Self {
            scenario,
            replications,
            n_list,
            master_seed,
            criteria: CriterionKind::ALL.to_vec(),
            fit_config: FitConfig::default(),
            init_half_width: Some(1.0),
            stats_depth,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Argument("replications must be positive".into()));
        }
        if self.n_list.is_empty() || self.n_list.iter().any(|&n| n < 2) {
            return Err(Error::Argument("n_list must be nonempty with every n >= 2".into()));
        }
        if self.criteria.is_empty() {
            return Err(Error::Argument("at least one criterion is required".into()));
        }
        if let Some(w) = self.init_half_width {
            if !(w >= 0.0) {
                return Err(Error::Argument("init half-width must be nonnegative".into()));
            }
        }
        self.fit_config.validate()
    }

    fn candidates(&self, n: usize) -> Result<(SearchMode, Vec<CandidateModel>)> {
        let mode = self.scenario.search_mode(n);
        let models = enumerate_candidates(self.scenario.design_width(), mode, self.scenario.family())?;
        Ok((mode, models))
    }

    fn config_for(&self, model: &CandidateModel, seed: u64) -> FitConfig {
        let init = match self.init_half_width {
            Some(half_width) => Init::UniformAround {
                center: model
                    .columns()
                    .iter()
                    .map(|&c| self.scenario.truth_for_column(c).unwrap_or(0.0))
                    .collect(),
                half_width,
                seed,
            },
            None => Init::Zero,
        };
        self.fit_config.clone().with_init(init)
    }
}

/// Parameter estimate kept from one fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    pub theta_hat: Vec<f64>,
    pub converged: bool,
    pub boundary_hit: bool,
}

impl From<&FitResult> for FitSummary {
    fn from(f: &FitResult) -> Self {
        Self {
            theta_hat: f.theta_hat.clone(),
            converged: f.converged,
            boundary_hit: f.boundary_hit,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationOutcome {
    /// Winner per criterion, in [`ExperimentSpec::criteria`] order.
    pub winners: Vec<Option<usize>>,
    /// Per model id (index = id - 1); `None` when not fitted, `Some(Err)` on failure.
    pub fits: Vec<Option<std::result::Result<FitSummary, String>>>,
}

/// Runs replication `index` at sample size `n`.
pub fn run_replication(spec: &ExperimentSpec, n: usize, index: usize) -> ReplicationOutcome {
    let (mode, models) = match spec.candidates(n) {
        Ok(v) => v,
        Err(_) => {
            return ReplicationOutcome {
                winners: vec![None; spec.criteria.len()],
                fits: Vec::new(),
            }
        }
    };
    let failed = || ReplicationOutcome {
        winners: vec![None; spec.criteria.len()],
        fits: vec![None; models.len()],
    };
    let mut rng = replication_rng(spec.master_seed, n, index as u64);
    let Ok(data) = spec.scenario.generate(n, &mut rng) else {
        return failed();
    };
    let init_seed: u64 = rng.random();

    let mut cache: Vec<Option<std::result::Result<CriterionReport, String>>> = vec![None; models.len()];
    let mut fits: Vec<Option<std::result::Result<FitSummary, String>>> = vec![None; models.len()];
    let mut evaluate = |id: usize| -> std::result::Result<CriterionReport, String> {
        if let Some(done) = &cache[id - 1] {
            return done.clone();
        }
        let model = &models[id - 1];
        let cfg = spec.config_for(model, init_seed.wrapping_add(id as u64));
        let outcome = fit_qmle(&data, model, &cfg);
        fits[id - 1] = Some(outcome.as_ref().map(FitSummary::from).map_err(|e| e.to_string()));
        let report = outcome
            .map(|f| CriterionReport::from_fit(id, &f, data.n()))
            .map_err(|e| e.to_string());
        cache[id - 1] = Some(report.clone());
        report
    };

    let winners = match mode {
        SearchMode::ExhaustiveSubsets => {
            let reports: Vec<CriterionReport> = (1..=models.len()).filter_map(|id| evaluate(id).ok()).collect();
            spec.criteria
                .iter()
                .map(|&k| crate::criteria::select_best(&reports, k).ok())
                .collect()
        }
        SearchMode::HierarchicalForward { max_order } => {
            for id in 1..=spec.stats_depth.min(max_order) {
                let _ = evaluate(id);
            }
            spec.criteria
                .iter()
                .map(|&k| {
                    let mut any_valid = false;
                    let walk = forward_walk(max_order, |id| {
                        let r = evaluate(id).map_err(Error::Argument)?;
                        let v = r.value(k);
                        any_valid |= v.is_some();
                        Ok(v.unwrap_or(f64::INFINITY))
                    });
                    walk.ok().filter(|_| any_valid).map(|(w, _)| w)
                })
                .collect()
        }
    };
    drop(evaluate);
    ReplicationOutcome { winners, fits }
}

/// Selection counts for one criterion at one sample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub scenario: String,
    pub criterion: CriterionKind,
    pub n: usize,
    pub replications: usize,
    /// `counts[id - 1]` is the number of replications selecting model `id`.
    pub counts: Vec<u64>,
    /// Replications in which no model could be selected.
    pub unselected: u64,
}

impl FrequencyTable {
    pub fn frequency(&self, model_id: usize) -> f64 {
        self.counts.get(model_id.wrapping_sub(1)).copied().unwrap_or(0) as f64 / self.replications as f64
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.unselected
    }
}

/// Sampling distribution of one candidate's QMLE at one sample size.
///
/// Means and standard deviations use converged fits only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorStats {
    pub model_id: usize,
    /// 0-based design columns of the candidate.
    pub columns: Vec<usize>,
    pub n: usize,
    pub mean: Vec<f64>,
    /// Sample standard deviation (denominator `count - 1`).
    pub sd: Vec<f64>,
    pub count: usize,
    pub boundary_hits: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub scenario: String,
    pub replications: usize,
    pub master_seed: u64,
    pub n_list: Vec<usize>,
    pub frequencies: Vec<FrequencyTable>,
    pub estimates: Vec<EstimatorStats>,
}

impl ExperimentResult {
    pub fn table(&self, criterion: CriterionKind, n: usize) -> Option<&FrequencyTable> {
        self.frequencies.iter().find(|t| t.criterion == criterion && t.n == n)
    }

    pub fn stats(&self, model_id: usize, n: usize) -> Option<&EstimatorStats> {
        self.estimates.iter().find(|s| s.model_id == model_id && s.n == n)
    }
}

/// Summarizes one model's fits across replications, in replication order.
pub fn estimator_summary<'a, I>(model_id: usize, columns: Vec<usize>, n: usize, fits: I) -> EstimatorStats
where
    I: IntoIterator<Item = Option<&'a std::result::Result<FitSummary, String>>>,
{
    let p = columns.len();
    let mut count = 0usize;
    let mut mean = vec![0.0; p];
    let mut m2 = vec![0.0; p];
    let (mut boundary_hits, mut failures) = (0, 0);
    for f in fits.into_iter().flatten() {
        match f {
            Err(_) => failures += 1,
            Ok(s) => {
                if s.boundary_hit {
                    boundary_hits += 1;
                }
                if !s.converged {
                    continue;
                }
                count += 1;
                for i in 0..p {
                    let d = s.theta_hat[i] - mean[i];
                    mean[i] += d / count as f64;
                    m2[i] += d * (s.theta_hat[i] - mean[i]);
                }
            }
        }
    }
    let sd = m2
        .iter()
        .map(|v| if count > 1 { (v / (count - 1) as f64).sqrt() } else { f64::NAN })
        .collect();
    if count == 0 {
        mean.iter_mut().for_each(|m| *m = f64::NAN);
    }
    EstimatorStats {
        model_id,
        columns,
        n,
        mean,
        sd,
        count,
        boundary_hits,
        failures,
    }
}

/// Runs the full experiment.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let name = spec.scenario.name().to_string();
    let mut frequencies = Vec::new();
    let mut estimates = Vec::new();
    for &n in &spec.n_list {
        let (_, models) = spec.candidates(n)?;
        let outcomes: Vec<ReplicationOutcome> = (0..spec.replications)
            .into_par_iter()
            .map(|r| run_replication(spec, n, r))
            .collect();

        for (ci, &criterion) in spec.criteria.iter().enumerate() {
            let mut counts = vec![0u64; models.len()];
            let mut unselected = 0;
            for o in &outcomes {
                match o.winners[ci] {
                    Some(w) => counts[w - 1] += 1,
                    None => unselected += 1,
                }
            }
            frequencies.push(FrequencyTable {
                scenario: name.clone(),
                criterion,
                n,
                replications: spec.replications,
                counts,
                unselected,
            });
        }

        for (i, model) in models.iter().enumerate() {
            let fitted: Vec<_> = outcomes.iter().map(|o| o.fits.get(i).and_then(|f| f.as_ref())).collect();
            if fitted.iter().all(|f| f.is_none()) {
                continue;
            }
            estimates.push(estimator_summary(i + 1, model.columns().to_vec(), n, fitted));
        }
    }
    Ok(ExperimentResult {
        scenario: name,
        replications: spec.replications,
        master_seed: spec.master_seed,
        n_list: spec.n_list.clone(),
        frequencies,
        estimates,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateCheck {
    pub n_list: Vec<usize>,
    pub rmse: Vec<f64>,
    /// OLS slope of `log rmse` on `log n`; about -0.5 for root-n consistency.
    pub slope: f64,
}

/// Root-mean-square error of the optimal model's QMLE against `theta_ref`
/// across `spec.n_list`.
///
/// Without `theta_ref` the truth is used, which requires a correctly
/// specified scenario.
pub fn rate_check(spec: &ExperimentSpec, theta_ref: Option<&[f64]>) -> Result<RateCheck> {
    spec.validate()?;
    if spec.n_list.len() < 2 {
        return Err(Error::Argument("rate check needs at least two sample sizes".into()));
    }
    let opt = spec.scenario.optimal_model();
    let mut rmse = Vec::with_capacity(spec.n_list.len());
    for &n in &spec.n_list {
        let (_, models) = spec.candidates(n)?;
        let model = models
            .get(opt - 1)
            .ok_or_else(|| Error::Argument(format!("optimal model {opt} is not a candidate")))?;
        let truth: Vec<f64> = match theta_ref {
            Some(t) => t.to_vec(),
            None if spec.scenario.correctly_specified() => model
                .columns()
                .iter()
                .map(|&c| spec.scenario.truth_for_column(c).unwrap_or(0.0))
                .collect(),
            None => {
                return Err(Error::MissingReference(spec.scenario.name().to_string()))
            }
        };
        if truth.len() != model.dim() {
            return Err(Error::Argument(format!("reference must have {} entries", model.dim())));
        }
        let errors: Vec<Option<f64>> = (0..spec.replications)
            .into_par_iter()
            .map(|r| {
                let mut rng = replication_rng(spec.master_seed, n, r as u64);
                let data: Dataset = spec.scenario.generate(n, &mut rng).ok()?;
                let seed: u64 = rng.random();
                let cfg = spec.config_for(model, seed.wrapping_add(opt as u64));
                let fit = fit_qmle(&data, model, &cfg).ok().filter(|f| f.converged)?;
                Some(fit.theta_hat.iter().zip(&truth).map(|(a, b)| (a - b).powi(2)).sum())
            })
            .collect();
        let ok: Vec<f64> = errors.into_iter().flatten().collect();
        if ok.is_empty() {
            return Err(Error::InvalidFit(format!("no converged fits at n = {n}")));
        }
        rmse.push((ok.iter().sum::<f64>() / ok.len() as f64).sqrt());
    }
    let lx: Vec<f64> = spec.n_list.iter().map(|&n| (n as f64).ln()).collect();
    let ly: Vec<f64> = rmse.iter().map(|r| r.ln()).collect();
    let k = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(RateCheck {
        n_list: spec.n_list.clone(),
        rmse,
        slope: sxy / sxx,
    })
}

/// `{2,4}` style label with 1-based column numbers.
pub fn columns_label(columns: &[usize]) -> String {
    let inner: Vec<String> = columns.iter().map(|c| (c + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Writes `{scenario}_frequencies_{n}.csv`, `{scenario}_estimates_{n}.csv`
/// and `{scenario}_summary.json` into `dir`.
pub fn write_outputs(result: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for &n in &result.n_list {
        let tables: Vec<&FrequencyTable> = result.frequencies.iter().filter(|t| t.n == n).collect();
        let path = dir.join(format!("{}_frequencies_{n}.csv", result.scenario));
        let mut w = csv::Writer::from_path(&path)?;
        let mut header = vec!["model_id".to_string()];
        header.extend(tables.iter().map(|t| t.criterion.name().to_string()));
        w.write_record(&header)?;
        let rows = tables.first().map_or(0, |t| t.counts.len());
        for id in 1..=rows {
            let mut rec = vec![id.to_string()];
            rec.extend(tables.iter().map(|t| format!("{:.4}", t.frequency(id))));
            w.write_record(&rec)?;
        }
        let mut rec = vec!["none".to_string()];
        rec.extend(
            tables
                .iter()
                .map(|t| format!("{:.4}", t.unselected as f64 / t.replications as f64)),
        );
        w.write_record(&rec)?;
        w.flush().map_err(|e| Error::io(&path, e))?;
        written.push(path);

        let path = dir.join(format!("{}_estimates_{n}.csv", result.scenario));
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["model_id", "columns", "column", "mean", "sd", "count", "boundary_hits", "failures"])?;
        for s in result.estimates.iter().filter(|s| s.n == n) {
            for (i, c) in s.columns.iter().enumerate() {
                w.write_record([
                    s.model_id.to_string(),
                    columns_label(&s.columns),
                    (c + 1).to_string(),
                    format!("{:.4}", s.mean[i]),
                    format!("{:.4}", s.sd[i]),
                    s.count.to_string(),
                    s.boundary_hits.to_string(),
                    s.failures.to_string(),
                ])?;
            }
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    let path = dir.join(format!("{}_summary.json", result.scenario));
    let json = serde_json::to_string_pretty(result).map_err(|e| Error::Argument(e.to_string()))?;
    fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simgen::{ArScenario, LagChainScenario};

    fn small(scenario: Arc<dyn Scenario>, reps: usize, n: Vec<usize>) -> ExperimentSpec {
        ExperimentSpec::new(scenario, reps, n, 2024)
    }

    #[test]
    fn rows_sum_to_replications() {
        let spec = small(Arc::new(ArScenario::logit()), 40, vec![60]);
        let res = run_experiment(&spec).unwrap();
        assert_eq!(res.frequencies.len(), 3);
        for t in &res.frequencies {
            assert_eq!(t.total(), 40);
            assert_eq!(t.counts.len(), 15);
        }
        assert_eq!(res.estimates.len(), 15);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let spec = small(Arc::new(ArScenario::logit()), 24, vec![50, 80]);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_experiment(&spec).unwrap())
        };
        assert_eq!(run(1), run(3));
    }

    #[test]
    fn seeds_change_results() {
        let a = run_experiment(&small(Arc::new(ArScenario::logit()), 30, vec![50])).unwrap();
        let mut spec = small(Arc::new(ArScenario::logit()), 30, vec![50]);
        spec.master_seed = 7;
        let b = run_experiment(&spec).unwrap();
        assert_ne!(a.estimates, b.estimates);
    }

    #[test]
    fn forward_scenario_fits_stats_depth() {
        let spec = small(Arc::new(LagChainScenario::default()), 20, vec![100]);
        let res = run_experiment(&spec).unwrap();
        for id in 1..=6 {
            let s = res.stats(id, 100).unwrap();
            assert!(s.count > 0 && s.count + s.failures <= 20);
            assert_eq!(s.columns, (0..id).collect::<Vec<_>>());
        }
        for t in &res.frequencies {
            assert_eq!(t.total(), 20);
            assert_eq!(t.counts.len(), 12);
        }
    }

    #[test]
    fn summary_statistics() {
        let fits: Vec<std::result::Result<FitSummary, String>> = vec![
            Ok(FitSummary { theta_hat: vec![1.0], converged: true, boundary_hit: false }),
            Ok(FitSummary { theta_hat: vec![3.0], converged: true, boundary_hit: false }),
            Ok(FitSummary { theta_hat: vec![50.0], converged: false, boundary_hit: true }),
            Err("boom".into()),
        ];
        let s = estimator_summary(1, vec![0], 10, fits.iter().map(Some));
        assert_eq!(s.count, 2);
        assert_eq!(s.mean, vec![2.0]);
        assert!((s.sd[0] - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!((s.boundary_hits, s.failures), (1, 1));
    }

    #[test]
    fn rate_check_needs_reference_when_misspecified() {
        let spec = small(Arc::new(ArScenario::probit()), 5, vec![100, 200]);
        assert!(matches!(rate_check(&spec, None), Err(Error::MissingReference(_))));
        assert!(rate_check(&spec, Some(&[-1.7, 0.6])).is_ok());
    }

    #[test]
    fn rate_check_slope_near_half() {
        let spec = small(Arc::new(ArScenario::logit()), 300, vec![200, 400, 800]);
        let rc = rate_check(&spec, None).unwrap();
        assert!(rc.rmse.windows(2).all(|w| w[1] < w[0]), "{rc:?}");
        assert!((rc.slope + 0.5).abs() < 0.15, "{rc:?}");
    }

    #[test]
    fn validation() {
        let mut spec = small(Arc::new(ArScenario::logit()), 0, vec![50]);
        assert!(run_experiment(&spec).is_err());
        spec.replications = 3;
        spec.n_list = vec![];
        assert!(run_experiment(&spec).is_err());
        spec.n_list = vec![1];
        assert!(run_experiment(&spec).is_err());
    }

    #[test]
    fn outputs_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let res = run_experiment(&small(Arc::new(ArScenario::logit()), 10, vec![50])).unwrap();
        let files = write_outputs(&res, dir.path()).unwrap();
        assert_eq!(files.len(), 3);
        let text = std::fs::read_to_string(dir.path().join("logit-ar_frequencies_50.csv")).unwrap();
        assert!(text.starts_with("model_id,qbic,bic,faic\n"));
        assert_eq!(text.lines().count(), 17);
        let back: ExperimentResult =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("logit-ar_summary.json")).unwrap()).unwrap();
        assert_eq!(back.frequencies, res.frequencies);
        assert_eq!(columns_label(&[1, 3]), "{2,4}");
    }
}

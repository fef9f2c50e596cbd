//! Candidate enumeration and the two selection procedures: an exhaustive
//! scan over covariate subsets and a forward walk along nested lag models.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{CriterionKind, CriterionReport};
use crate::data::{CandidateModel, Dataset};
use crate::error::{Error, Result};
use crate::family::ExponentialFamily;
use crate::fit::{fit_qmle, FitConfig};

/// Exhaustive enumeration is refused above this many covariates.
pub const MAX_EXHAUSTIVE_COLUMNS: usize = 20;

/// Default horizon of the forward search.
pub const DEFAULT_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    ExhaustiveSubsets,
    HierarchicalForward { max_order: usize },
}

impl SearchMode {
    /// Forward search capped at `min(12, n - 1, p)`.
    pub fn default_forward(n: usize, p: usize) -> Self {
        SearchMode::HierarchicalForward {
            max_order: DEFAULT_MAX_ORDER.min(n.saturating_sub(1)).min(p).max(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    pub mode: SearchMode,
    pub criterion: CriterionKind,
    pub family: ExponentialFamily,
    pub fit_config: FitConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateFailure {
    pub model_id: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub winner: usize,
    pub reports: Vec<CriterionReport>,
    pub failures: Vec<CandidateFailure>,
}

/// Candidate list in model-id order (id = position + 1).
///
/// Exhaustive mode lists all nonempty subsets by decreasing size and
/// lexicographically within a size, so for four covariates model 1 is
/// `{1,2,3,4}` and model 15 is `{4}`. Forward mode lists the prefixes
/// `{1}, {1,2}, ...` up to `max_order`.
pub fn enumerate_candidates(
    p: usize,
    mode: SearchMode,
    family: ExponentialFamily,
) -> Result<Vec<CandidateModel>> {
    if p < 1 {
        return Err(Error::Argument("need at least one covariate".into()));
    }
    let column_sets: Vec<Vec<usize>> = match mode {
        SearchMode::ExhaustiveSubsets => {
            if p > MAX_EXHAUSTIVE_COLUMNS {
                return Err(Error::TooManyCandidates(p));
            }
            (1..=p).rev().flat_map(|k| combinations(p, k)).collect()
        }
        SearchMode::HierarchicalForward { max_order } => {
            if max_order < 1 || max_order > p {
                return Err(Error::Argument(format!(
                    "max_order must lie in 1..={p}, got {max_order}"
                )));
            }
            (1..=max_order).map(|k| (0..k).collect()).collect()
        }
    };
    column_sets
        .into_iter()
        .map(|cols| CandidateModel::new(cols, family))
        .collect()
}

/// All size-`k` subsets of `0..p` in lexicographic order.
fn combinations(p: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < p - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Fits one candidate and scores it under every criterion.
pub fn evaluate_candidate(
    data: &Dataset,
    model_id: usize,
    model: &CandidateModel,
    config: &FitConfig,
) -> Result<CriterionReport> {
    let fit = fit_qmle(data, model, config)?;
    Ok(CriterionReport::from_fit(model_id, &fit, data.n()))
}

/// Fits every subset candidate and returns the minimum-criterion model.
///
/// Candidates whose fit fails are recorded in `failures` and take no part in
/// selection.
pub fn select_exhaustive(data: &Dataset, spec: &SearchSpec) -> Result<Selection> {
    if spec.mode != SearchMode::ExhaustiveSubsets {
        return Err(Error::Argument("select_exhaustive needs exhaustive mode".into()));
    }
    let candidates = enumerate_candidates(data.p(), spec.mode, spec.family)?;
    let outcomes: Vec<Result<CriterionReport>> = candidates
        .par_iter()
        .enumerate()
        .map(|(i, m)| evaluate_candidate(data, i + 1, m, &spec.fit_config))
        .collect();

    let mut reports = Vec::with_capacity(outcomes.len());
    let mut failures = Vec::new();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(r) => reports.push(r),
            Err(e) => failures.push(CandidateFailure {
                model_id: i + 1,
                message: e.to_string(),
            }),
        }
    }
    let winner = crate::criteria::select_best(&reports, spec.criterion)?;
    Ok(Selection {
        winner,
        reports,
        failures,
    })
}

/// Walks `value(1), value(2), ...` and stops at the first `k` with
/// `value(k) < value(k + 1)`; returns `(winner, evaluated)`.
///
/// Equality continues the walk. If no rise occurs the winner is `max_order`.
pub fn forward_walk<F>(max_order: usize, mut value: F) -> Result<(usize, usize)>
where
    F: FnMut(usize) -> Result<f64>,
{
    if max_order < 1 {
        return Err(Error::Argument("max_order must be at least 1".into()));
    }
    let mut current = value(1)?;
    for k in 1..max_order {
        let next = value(k + 1)?;
        if current < next {
            return Ok((k, k + 1));
        }
        current = next;
    }
    Ok((max_order, max_order))
}

/// Forward search over nested prefixes of the design columns.
///
/// Excluded candidates score `+inf`, so a singular successor stops the walk.
/// Fit errors are propagated.
pub fn select_forward(data: &Dataset, spec: &SearchSpec) -> Result<Selection> {
    let SearchMode::HierarchicalForward { max_order } = spec.mode else {
        return Err(Error::Argument("select_forward needs hierarchical mode".into()));
    };
    let candidates = enumerate_candidates(data.p(), spec.mode, spec.family)?;
    let mut reports = Vec::new();
    let (winner, _) = forward_walk(max_order, |k| {
        let report = evaluate_candidate(data, k, &candidates[k - 1], &spec.fit_config)?;
        let v = report.value(spec.criterion).unwrap_or(f64::INFINITY);
        reports.push(report);
        Ok(v)
    })?;
    if reports.iter().all(|r| r.excluded) {
        return Err(Error::NoValidCandidate);
    }
    Ok(Selection {
        winner,
        reports,
        failures: Vec::new(),
    })
}

pub fn select(data: &Dataset, spec: &SearchSpec) -> Result<Selection> {
    match spec.mode {
        SearchMode::ExhaustiveSubsets => select_exhaustive(data, spec),
        SearchMode::HierarchicalForward { .. } => select_forward(data, spec),
    }
}

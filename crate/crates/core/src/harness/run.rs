use rayon::prelude::*;

use super::checks::{admissible, evaluate, trial_subspace, Row, TrialInput};
use super::config::{CheckId, ExperimentConfig};
use super::context::BodyCache;
use super::mix_seed;
use super::report::{judge, CheckReport, TrialRecord, Verdict};
use crate::error::{GeomError, Result};

/// The `(n, k)` pairs a sweep cycles through.
pub fn sweep_pairs(config: &ExperimentConfig) -> Vec<(usize, usize)> {
    (2..=config.n)
        .flat_map(|n| (1..n).map(move |k| (n, k)))
        .filter(|&(n, k)| k <= config.k && admissible(config.theorem, n, k))
        .collect()
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<CheckReport> {
    run_with_cache(config, &BodyCache::new())
}

/// Runs a configuration, reusing positioned bodies from `cache`.
pub fn run_with_cache(config: &ExperimentConfig, cache: &BodyCache) -> Result<CheckReport> {
    config.validate()?;
    let pairs = if config.sweep { sweep_pairs(config) } else { vec![(config.n, config.k)] };
    if pairs.is_empty() {
        return Err(GeomError::InvalidInput(format!("no admissible (n, k) for {}", config.theorem)));
    }
    let lambdas = config.lambdas();
    let records: Vec<TrialRecord> = (0..config.trials)
        .into_par_iter()
        .flat_map_iter(|trial| {
            let (n, k) = pairs[trial % pairs.len()];
            let seed = mix_seed(config.seed, trial as u64);
            let input = TrialInput { n, k, d: config.distance(), lambdas: &lambdas, samples: config.mc_samples, seed };
            run_trial(config, cache, trial, &input)
        })
        .collect();
    Ok(CheckReport::new(config.clone(), records))
}

fn run_trial(config: &ExperimentConfig, cache: &BodyCache, trial: usize, t: &TrialInput) -> Vec<TrialRecord> {
    let id = config.theorem;
    let base = TrialRecord {
        theorem: id,
        n: t.n,
        k: t.k,
        d: t.d,
        lambda: None,
        trial,
        lhs: f64::NAN,
        lhs_err: f64::NAN,
        rhs: f64::NAN,
        rhs_err: f64::NAN,
        margin: f64::NAN,
        verdict: Verdict::Skipped,
        seed: t.seed,
        equality: false,
        ratio: None,
        note: None,
    };
    let skipped = |reason: String| vec![TrialRecord { note: Some(reason), ..base.clone() }];
    let body = match cache.get(config.position, config.class, t.n, mix_seed(t.seed, 0)) {
        Ok(b) => b,
        Err(e) => return skipped(e),
    };
    let f = match trial_subspace(id, &body, t) {
        Ok(f) => f,
        Err(s) => return skipped(s.0),
    };
    let d = if id == CheckId::SharpSimplex { super::checks::simplex_face_distance(t.n, t.k) } else { f.distance() };
    match evaluate(id, &body, &f, t) {
        Ok(rows) => rows.into_iter().map(|r| record(&base, d, r)).collect(),
        Err(s) => skipped(s.0),
    }
}

fn record(base: &TrialRecord, d: f64, r: Row) -> TrialRecord {
    let (verdict, equality) = judge(r.claim, r.lhs, r.lhs_err, r.rhs, r.rhs_err);
    TrialRecord {
        d,
        lambda: r.lambda,
        lhs: r.lhs,
        lhs_err: r.lhs_err,
        rhs: r.rhs,
        rhs_err: r.rhs_err,
        margin: r.rhs - r.lhs,
        verdict,
        equality,
        ratio: r.ratio,
        ..base.clone()
    }
}

/// Every checker over the default sweep, sharing positioned bodies.
pub fn run_all(max_n: usize, trials: usize, mc_samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let cache = BodyCache::new();
    CheckId::ALL
        .iter()
        .map(|&id| {
            let config = ExperimentConfig { trials, mc_samples, seed, ..ExperimentConfig::sweep(id, max_n) };
            run_with_cache(&config, &cache)
        })
        .collect()
}

use rayon::prelude::*;
use serde::Serialize;

use super::events::{event_holds_with, EventSpec};
use super::sample::{sample_gnp, SamplerConfig};
use crate::error::{Error, Result};
use crate::game::SolveOptions;
use crate::rng::derive_seed;

/// Two-sided standard normal quantiles.
pub const Z_95: f64 = 1.959_963_984_540_054;
pub const Z_999: f64 = 3.290_526_731_491_925_5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub trials: u64,
    pub successes: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Estimate {
    /// Point estimate with a 95% Wilson score interval.
    pub fn from_counts(successes: u64, trials: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        if successes > trials {
            return Err(Error::InvalidParameter(format!("{successes} successes in {trials} trials")));
        }
        let point = successes as f64 / trials as f64;
        let (lo, hi) = wilson_interval(successes, trials, Z_95);
        Ok(Estimate { trials, successes, point, ci_low: lo.min(point), ci_high: hi.max(point) })
    }
}

/// Wilson score interval for `successes` out of `trials` at quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

pub fn estimate_probability(cfg: &SamplerConfig, event: &EventSpec, trials: u64) -> Result<Estimate> {
    estimate_probability_with(cfg, event, trials, &SolveOptions::default())
}

pub fn estimate_probability_with(
    cfg: &SamplerConfig,
    event: &EventSpec,
    trials: u64,
    opts: &SolveOptions,
) -> Result<Estimate> {
    Ok(estimate_events(cfg, std::slice::from_ref(event), trials, opts)?.remove(0))
}

/// One Monte Carlo run measuring several events on the same sampled graphs.
/// Trial `i` samples with seed `derive_seed(cfg.seed, i)`, so every trial is
/// reproducible on its own and the totals do not depend on scheduling.
pub fn estimate_events(
    cfg: &SamplerConfig,
    events: &[EventSpec],
    trials: u64,
    opts: &SolveOptions,
) -> Result<Vec<Estimate>> {
    cfg.validate()?;
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required".into()));
    }
    let m = events.len();
    let outcomes: Vec<Result<Vec<bool>>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let g = sample_gnp(&cfg.with_seed(derive_seed(cfg.seed, i)))?;
            events.iter().map(|e| event_holds_with(&g, e, opts)).collect()
        })
        .collect();
    let mut successes = vec![0u64; m];
    let mut failed = 0u64;
    let mut first = None;
    for o in outcomes {
        match o {
            Ok(h) => h.iter().zip(&mut successes).for_each(|(&b, s)| *s += b as u64),
            Err(e) => {
                failed += 1;
                first.get_or_insert(e);
            }
        }
    }
    if let Some(first) = first {
        return Err(Error::TrialsFailed { failed, trials, first: Box::new(first) });
    }
    successes.into_iter().map(|s| Estimate::from_counts(s, trials)).collect()
}

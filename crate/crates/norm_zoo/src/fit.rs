//! Empirical fit of the relation n_A < C n_B^C between two norms.
//!
//! In log form the fitted exponent is c_AB = max over samples of
//! log n_A / (1 + log n_B), clamped below at 1. Logs are base l, so they are
//! the integer exponents returned by the evaluators and the fit is exact.

use local_field::Q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exec::{ordered_map, Exec};
use crate::registry::NormEvaluator;
use crate::samplers::Sampler;
use crate::NormError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitConfig {
    pub trials: usize,
    pub seed: u64,
    /// Largest valuation spread handed to the sampler.
    pub spread: i64,
    /// Sample i uses spread * (1 + i mod strata) / strata.
    pub strata: usize,
    pub exec: Exec,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self { trials: 1000, seed: 0, spread: 8, strata: 8, exec: Exec::Auto }
    }
}

/// One fit at a fixed spread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitPass {
    pub spread: i64,
    pub c_ab: Q,
    pub c_ba: Q,
    /// Sample indices attaining the two maxima.
    pub witness_ab: usize,
    pub witness_ba: usize,
    /// Smallest and largest of max(log n_A, log n_B) over the sample.
    pub log_range: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub norm_a: String,
    pub norm_b: String,
    pub trials: usize,
    pub seed: u64,
    pub base: FitPass,
    /// The same draws at twice the spread.
    pub doubled: FitPass,
    /// Doubling the spread moved c_AB by less than 10%.
    pub stable_ab: bool,
    pub stable_ba: bool,
    /// Both directions are stable.
    pub stable: bool,
}

impl EquivalenceReport {
    pub fn c_ab(&self) -> Q {
        self.base.c_ab
    }

    pub fn c_ba(&self) -> Q {
        self.base.c_ba
    }
}

/// Deterministic per-sample generator: one ChaCha stream per sample index,
/// so results do not depend on how samples are spread over threads.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Fitted exponent and witness for log pairs (a_i, b_i).
pub fn fit_direction(pairs: &[(i64, i64)]) -> (Q, usize) {
    let one = Q::from_integer(1);
    let mut best: Option<Q> = None;
    let mut at = 0;
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let c = Q::new(a as i128, 1 + b as i128);
        if best.map_or(true, |m| c > m) {
            best = Some(c);
            at = i;
        }
    }
    (best.map_or(one, |m| m.max(one)), at)
}

fn run_pass(
    sampler: &dyn Sampler,
    a: &NormEvaluator,
    b: &NormEvaluator,
    cfg: &FitConfig,
    spread: i64,
) -> Result<FitPass, NormError> {
    let strata = cfg.strata.max(1);
    let idx: Vec<usize> = (0..cfg.trials).collect();
    let logs = ordered_map(&idx, cfg.exec, |&i| {
        let local = (spread * (1 + (i % strata) as i64) / strata as i64).max(1);
        let point = sampler.sample(&mut sample_rng(cfg.seed, i), local);
        Ok::<_, NormError>((a.exponent(&point)?, b.exponent(&point)?))
    });
    let logs: Vec<(i64, i64)> = logs.into_iter().collect::<Result<_, _>>()?;
    if logs.iter().all(|&(x, y)| x == 0 && y == 0) {
        return Err(NormError::DegenerateSample);
    }
    let (c_ab, witness_ab) = fit_direction(&logs);
    let swapped: Vec<(i64, i64)> = logs.iter().map(|&(x, y)| (y, x)).collect();
    let (c_ba, witness_ba) = fit_direction(&swapped);
    let spreads = logs.iter().map(|&(x, y)| x.max(y));
    let log_range = (spreads.clone().min().unwrap_or(0), spreads.max().unwrap_or(0));
    Ok(FitPass { spread, c_ab, c_ba, witness_ab, witness_ba, log_range })
}

fn close(a: Q, b: Q) -> bool {
    let d = if a > b { a - b } else { b - a };
    d * Q::from_integer(10) < a
}

/// Fit both directions of the comparison between two named norms on points
/// drawn from `sampler`, then refit at twice the spread to judge stability.
pub fn fit_equivalence(
    sampler: &dyn Sampler,
    norm_a: &str,
    norm_b: &str,
    cfg: &FitConfig,
) -> Result<EquivalenceReport, NormError> {
    let a = NormEvaluator::lookup(norm_a)?;
    let b = NormEvaluator::lookup(norm_b)?;
    let base = run_pass(sampler, a, b, cfg, cfg.spread)?;
    let doubled = run_pass(sampler, a, b, cfg, 2 * cfg.spread)?;
    let stable_ab = close(base.c_ab, doubled.c_ab);
    let stable_ba = close(base.c_ba, doubled.c_ba);
    Ok(EquivalenceReport {
        norm_a: norm_a.to_string(),
        norm_b: norm_b.to_string(),
        trials: cfg.trials,
        seed: cfg.seed,
        base,
        doubled,
        stable_ab,
        stable_ba,
        stable: stable_ab && stable_ba,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_fit() {
        assert_eq!(fit_direction(&[(0, 0), (3, 3)]), (Q::from_integer(1), 1));
        assert_eq!(fit_direction(&[(4, 1), (9, 2)]), (Q::from_integer(3), 1));
        assert_eq!(fit_direction(&[]), (Q::from_integer(1), 0));
    }

    #[test]
    fn stability_threshold() {
        assert!(close(Q::from_integer(10), Q::new(21, 2)));
        assert!(!close(Q::from_integer(10), Q::from_integer(11)));
    }
}

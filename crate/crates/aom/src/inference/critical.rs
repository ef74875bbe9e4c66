//! Simulated Gaussian critical values.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inference::correlation::CorrelationMatrix;
use crate::rng::{self, tag};

/// Minimum number of Monte Carlo draws.
pub const MIN_DRAWS: usize = 100;

/// Default number of Monte Carlo draws.
pub const DEFAULT_DRAWS: usize = 2_000;

fn validate(alpha: f64, draws: usize) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if draws < MIN_DRAWS {
        return Err(Error::TooFewDraws {
            min: MIN_DRAWS,
            got: draws,
        });
    }
    Ok(())
}

/// Empirical (1-alpha) quantile: the smallest value whose empirical CDF
/// reaches 1-alpha.
fn empirical_quantile(mut values: Vec<f64>, alpha: f64) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    let k = ((1.0 - alpha) * n as f64).ceil() as usize;
    values[k.clamp(1, n) - 1]
}

/// One batch of per-draw maxima. Coordinates with `keep == false` are dropped
/// (a -inf selection shift); `floor_at_zero` applies the outer max with 0.
fn simulate_maxima(
    omega: &CorrelationMatrix,
    keep: Option<&[bool]>,
    floor_at_zero: bool,
    draws: usize,
    seed: u64,
) -> Vec<f64> {
    let cols = omega.factor_cols();
    (0..draws)
        .into_par_iter()
        .map(|draw_idx| {
            let mut stream = rng::stream(seed, &[tag::CV_DRAW, draw_idx as u64]);
            let latent: Vec<f64> = (0..cols)
                .map(|_| StandardNormal.sample(&mut stream))
                .collect();
            let mut value = Vec::new();
            omega.apply(&latent, &mut value);
            let mut best = f64::NEG_INFINITY;
            for (i, &v) in value.iter().enumerate() {
                if keep.is_none_or(|k| k[i]) && v > best {
                    best = v;
                }
            }
            if floor_at_zero {
                best.max(0.0)
            } else {
                best
            }
        })
        .collect()
}

/// The (1-alpha) quantile of `max{ max(Ω̂^{1/2} z [+ ψ]), 0 }`, simulated with
/// per-draw streams keyed by (seed, draw index). `psi` entries of `false`
/// drop the corresponding coordinate (the -inf moment-selection shift); when
/// every coordinate is dropped the statistic collapses to the zero floor.
pub fn critical_value(
    omega: &CorrelationMatrix,
    alpha: f64,
    psi: Option<&[bool]>,
    draws: usize,
    seed: u64,
) -> Result<f64> {
    validate(alpha, draws)?;
    if let Some(psi) = psi {
        if psi.len() != omega.dim() {
            return Err(Error::DimensionMismatch {
                expected: omega.dim(),
                got: psi.len(),
            });
        }
    }
    if omega.dim() == 0 || psi.is_some_and(|p| p.iter().all(|&k| !k)) {
        return Ok(0.0);
    }
    let maxima = simulate_maxima(omega, psi, true, draws, seed);
    Ok(empirical_quantile(maxima, alpha))
}

/// The (1-alpha) quantile of the plain max (no zero floor), used by the
/// attention-frequency bound adjustments where the coverage event is
/// one-sided but unfloored.
pub fn critical_value_unfloored(
    omega: &CorrelationMatrix,
    alpha: f64,
    draws: usize,
    seed: u64,
) -> Result<f64> {
    validate(alpha, draws)?;
    if omega.dim() == 0 {
        return Ok(0.0);
    }
    let maxima = simulate_maxima(omega, None, false, draws, seed);
    Ok(empirical_quantile(maxima, alpha))
}

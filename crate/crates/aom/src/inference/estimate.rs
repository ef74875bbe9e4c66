//! Plug-in estimators: choice probabilities and per-constraint statistics.

use crate::characterize::constraints::{evaluate_constraint, ConstraintKind, ConstraintSystem};
use crate::core::choice::ChoiceRule;
use crate::error::{Error, Result};
use crate::models::Dataset;

/// Estimate the choice rule by per-menu count ratios; effective sample sizes
/// ride along for Studentization.
pub fn estimate_choice_rule(data: &Dataset) -> Result<ChoiceRule> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut pi = ChoiceRule::new();
    for (menu, counts) in data.counts() {
        let n: u64 = counts.iter().sum();
        let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        pi.insert_estimated(menu, probs, n)?;
    }
    Ok(pi)
}

/// Estimated inequality values and their standard errors, aligned with a
/// constraint system. A constraint is degenerate when its standard error is
/// exactly zero.
#[derive(Clone, Debug)]
pub struct ConstraintStats {
    pub d_hat: Vec<f64>,
    pub sigma_hat: Vec<f64>,
    pub degenerate: Vec<bool>,
}

impl ConstraintStats {
    pub fn len(&self) -> usize {
        self.d_hat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d_hat.is_empty()
    }

    /// Largest estimated inequality, if any constraint exists.
    pub fn max_inequality(&self) -> Option<f64> {
        self.d_hat.iter().copied().reduce(f64::max)
    }
}

fn bernoulli_var(p: f64, n: u64) -> f64 {
    p * (1.0 - p) / n as f64
}

fn sample_size(pi: &ChoiceRule, menu: crate::core::alphabet::Menu) -> Result<u64> {
    pi.sample_size(menu)
        .ok_or(Error::MenuMissing(menu.mask().0))
}

/// D-hat and sigma-hat for every constraint.
///
/// AC: σ̂² = π̂(a|S)(1-π̂(a|S))/N_S + π̂(U|T)(1-π̂(U|T))/N_T. RAM replaces the
/// T-term event with {a}. The binary cap has a single stochastic term scaled
/// by its 1/η normalization.
pub fn constraint_stats(pi_hat: &ChoiceRule, system: &ConstraintSystem) -> Result<ConstraintStats> {
    let pref = system.preference();
    let mut d_hat = Vec::with_capacity(system.len());
    let mut sigma_hat = Vec::with_capacity(system.len());
    let mut degenerate = Vec::with_capacity(system.len());
    for c in system.constraints() {
        let d = evaluate_constraint(pi_hat, pref, c)?;
        let var = match c.kind {
            ConstraintKind::Ac => {
                let upper = pref.upper_contour_mask(c.alt, false).intersect(c.sub.mask());
                bernoulli_var(pi_hat.prob(c.alt, c.sup)?, sample_size(pi_hat, c.sup)?)
                    + bernoulli_var(
                        pi_hat.event_prob(upper, c.sub)?,
                        sample_size(pi_hat, c.sub)?,
                    )
            }
            ConstraintKind::Ram => {
                bernoulli_var(pi_hat.prob(c.alt, c.sup)?, sample_size(pi_hat, c.sup)?)
                    + bernoulli_var(pi_hat.prob(c.alt, c.sub)?, sample_size(pi_hat, c.sub)?)
            }
            ConstraintKind::BinaryEta => {
                let eta = c.eta.expect("binary constraint carries eta");
                bernoulli_var(pi_hat.prob(c.alt, c.sup)?, sample_size(pi_hat, c.sup)?)
                    / (eta * eta)
            }
        };
        let sigma = var.sqrt();
        d_hat.push(d);
        sigma_hat.push(sigma);
        degenerate.push(sigma == 0.0);
    }
    Ok(ConstraintStats {
        d_hat,
        sigma_hat,
        degenerate,
    })
}

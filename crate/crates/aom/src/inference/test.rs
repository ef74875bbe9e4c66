//! The Studentized max test and its test-inversion confidence set.

use rayon::prelude::*;

use crate::characterize::constraints::{
    enumerate_constraints, ConstraintKind, ConstraintSystem, VIOLATION_TOL,
};
use crate::core::preference::{all_preferences, Preference};
use crate::error::{Error, Result};
use crate::inference::correlation::{estimate_correlation, CorrelationMatrix};
use crate::inference::critical::{critical_value, DEFAULT_DRAWS};
use crate::inference::estimate::{constraint_stats, estimate_choice_rule, ConstraintStats};
use crate::models::Dataset;

/// Critical-value method.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Least-favorable critical value.
    OneStep,
    /// Two-step moment selection with first-step level `c3`.
    TwoStep { c3: f64 },
}

/// Options for `test_preference`.
#[derive(Clone, Debug)]
pub struct TestOptions {
    pub kinds: Vec<ConstraintKind>,
    pub eta: Option<f64>,
    pub alpha: f64,
    pub method: Method,
    pub draws: usize,
    pub seed: u64,
}

impl Default for TestOptions {
    fn default() -> Self {
        TestOptions {
            kinds: vec![ConstraintKind::Ac],
            eta: None,
            alpha: 0.05,
            method: Method::TwoStep { c3: 0.005 },
            draws: DEFAULT_DRAWS,
            seed: 0,
        }
    }
}

/// Outcome of testing one hypothesized preference.
///
/// Under the two-step method the operative critical value compensates for the
/// selection error: `cv` is simulated at level alpha - 2*c3 on the surviving
/// constraints, which is the size-controlled comparison. The uncompensated
/// value at the nominal level rides along as `cv_nominal`.
#[derive(Clone, Debug)]
pub struct TestResult {
    /// max{ max D̂/σ̂, 0 } over non-degenerate constraints; infinite when a
    /// zero-variance constraint is violated outright.
    pub statistic: f64,
    pub cv: f64,
    pub reject: bool,
    pub alpha: f64,
    pub method: Method,
    pub n_constraints: usize,
    pub n_violated: usize,
    /// Largest raw inequality value, when any constraint exists.
    pub max_inequality: Option<f64>,
    /// A violated constraint had zero variance: rejection is deterministic.
    pub deterministic_violation: bool,
    /// Number of constraints the two-step selection dropped.
    pub n_dropped: usize,
    /// First-step least-favorable critical value (two-step only).
    pub cv_first_step: Option<f64>,
    /// Two-step critical value at the nominal level alpha, without the
    /// selection-error compensation (anti-conservative).
    pub cv_nominal: Option<f64>,
    pub reject_nominal: Option<bool>,
    pub mc_draws: usize,
    pub seed: u64,
}

/// Two-step moment selection: drop constraints whose Studentized value sits
/// below -2 cv(c3), then recompute the critical value on the survivors.
/// Returns the keep flags and the adjusted critical value at level `alpha`.
pub fn two_step_selection(
    stats: &ConstraintStats,
    omega: &CorrelationMatrix,
    c3: f64,
    alpha: f64,
    draws: usize,
    seed: u64,
) -> Result<(Vec<bool>, f64)> {
    if omega.dim() != stats.len() {
        return Err(Error::DimensionMismatch {
            expected: stats.len(),
            got: omega.dim(),
        });
    }
    let cv_first = critical_value(omega, c3, None, draws, seed)?;
    let keep: Vec<bool> = stats
        .d_hat
        .iter()
        .zip(&stats.sigma_hat)
        .map(|(&d, &s)| d / s >= -2.0 * cv_first)
        .collect();
    let cv_adj = critical_value(omega, alpha, Some(&keep), draws, seed)?;
    Ok((keep, cv_adj))
}

/// Test whether `pref` is compatible with the attention-overload model (plus
/// any requested auxiliary restrictions) on the observed data.
pub fn test_preference(data: &Dataset, pref: &Preference, opts: &TestOptions) -> Result<TestResult> {
    let pi_hat = estimate_choice_rule(data)?;
    let domain = pi_hat.domain();
    let system = enumerate_constraints(&domain, pref, &opts.kinds, opts.eta)?;
    test_preference_on_system(&pi_hat, &system, opts)
}

/// The same test against a pre-built constraint system (the system is fixed
/// across Monte Carlo replications of one design).
pub fn test_preference_on_system(
    pi_hat: &crate::core::choice::ChoiceRule,
    system: &ConstraintSystem,
    opts: &TestOptions,
) -> Result<TestResult> {
    if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(opts.alpha));
    }
    let stats = constraint_stats(pi_hat, system)?;
    let n_constraints = stats.len();
    let max_inequality = stats.max_inequality();
    let n_violated = stats.d_hat.iter().filter(|&&d| d > VIOLATION_TOL).count();

    // Zero-variance constraints cannot be Studentized. A violated one is a
    // deterministic rejection; satisfied ones drop out of the max and the
    // correlation matrix.
    let deterministic_violation = stats
        .degenerate
        .iter()
        .zip(&stats.d_hat)
        .any(|(&deg, &d)| deg && d > VIOLATION_TOL);
    let active: Vec<usize> = (0..n_constraints).filter(|&i| !stats.degenerate[i]).collect();

    let statistic = if deterministic_violation {
        f64::INFINITY
    } else {
        active
            .iter()
            .map(|&i| stats.d_hat[i] / stats.sigma_hat[i])
            .fold(0.0f64, f64::max)
    };

    if let Method::TwoStep { c3 } = opts.method {
        if !(c3 > 0.0 && opts.alpha - 2.0 * c3 > 0.0) {
            return Err(Error::AlphaOutOfRange(opts.alpha - 2.0 * c3));
        }
    }
    let (cv, n_dropped, cv_first_step, cv_nominal) = if active.is_empty() {
        (0.0, 0, None, None)
    } else {
        let subsystem = system.subset(&active);
        let substats = ConstraintStats {
            d_hat: active.iter().map(|&i| stats.d_hat[i]).collect(),
            sigma_hat: active.iter().map(|&i| stats.sigma_hat[i]).collect(),
            degenerate: vec![false; active.len()],
        };
        let omega = estimate_correlation(pi_hat, &subsystem)?;
        match opts.method {
            Method::OneStep => {
                let cv = critical_value(&omega, opts.alpha, None, opts.draws, opts.seed)?;
                (cv, 0, None, None)
            }
            Method::TwoStep { c3 } => {
                let (keep, cv_adj) =
                    two_step_selection(&substats, &omega, c3, opts.alpha, opts.draws, opts.seed)?;
                let cv_first = critical_value(&omega, c3, None, opts.draws, opts.seed)?;
                let dropped = keep.iter().filter(|&&k| !k).count();
                // Selection can err with probability up to 2*c3; the operative
                // critical value compensates by targeting alpha - 2*c3.
                let cv_comp = critical_value(
                    &omega,
                    opts.alpha - 2.0 * c3,
                    Some(&keep),
                    opts.draws,
                    opts.seed,
                )?;
                (cv_comp, dropped, Some(cv_first), Some(cv_adj))
            }
        }
    };

    let reject = statistic > cv;
    let reject_nominal = cv_nominal.map(|c| statistic > c);
    Ok(TestResult {
        statistic,
        cv,
        reject,
        alpha: opts.alpha,
        method: opts.method,
        n_constraints,
        n_violated,
        max_inequality,
        deterministic_violation,
        n_dropped,
        cv_first_step,
        cv_nominal,
        reject_nominal,
        mc_draws: opts.draws,
        seed: opts.seed,
    })
}

/// Test-inversion confidence set over all preference orderings.
#[derive(Clone, Debug)]
pub struct ConfidenceSet {
    pub alpha: f64,
    /// Preferences not rejected, in enumeration order.
    pub survivors: Vec<Preference>,
    /// Per-preference results, in enumeration order.
    pub results: Vec<(Preference, TestResult)>,
    /// Every ordering was rejected: evidence against the model itself.
    pub specification_rejected: bool,
}

/// Invert the preference test over every strict order. Enumeration is guarded
/// at 8 alternatives (40,320 orders).
pub fn confidence_set(data: &Dataset, n_alternatives: usize, opts: &TestOptions) -> Result<ConfidenceSet> {
    if n_alternatives > 8 {
        return Err(Error::AlphabetTooLarge(n_alternatives, 8));
    }
    let pi_hat = estimate_choice_rule(data)?;
    let domain = pi_hat.domain();
    let prefs: Vec<Preference> = all_preferences(n_alternatives)?.collect();
    let results: Vec<Result<TestResult>> = prefs
        .par_iter()
        .map(|pref| {
            let system = enumerate_constraints(&domain, pref, &opts.kinds, opts.eta)?;
            test_preference_on_system(&pi_hat, &system, opts)
        })
        .collect();
    let mut paired = Vec::with_capacity(prefs.len());
    for (pref, res) in prefs.into_iter().zip(results) {
        paired.push((pref, res?));
    }
    let survivors: Vec<Preference> = paired
        .iter()
        .filter(|(_, r)| !r.reject)
        .map(|(p, _)| p.clone())
        .collect();
    let specification_rejected = survivors.is_empty();
    Ok(ConfidenceSet {
        alpha: opts.alpha,
        survivors,
        results: paired,
        specification_rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::alphabet::Menu;
    use crate::core::domain::Domain;
    use crate::core::mask::Mask;
    use crate::models::{induced_choice_rule, logit_attention, sample_dataset};
    use std::collections::BTreeMap;

    fn menu(bits: u64) -> Menu {
        Menu::new(Mask(bits)).unwrap()
    }

    fn logit_dataset(n: usize, per_menu: u64, seed: u64) -> Dataset {
        let domain = Domain::full(n, 2);
        let mu = logit_attention(&domain, 2.0);
        let pi = induced_choice_rule(&Preference::natural(n), &mu).unwrap();
        let sizes: BTreeMap<Menu, u64> =
            domain.menus().iter().map(|&m| (m, per_menu)).collect();
        sample_dataset(&pi, &sizes, seed).unwrap()
    }

    #[test]
    fn no_positive_differences_never_rejects() {
        // With the true preference and large samples the statistic is usually
        // zero; force the degenerate-data case instead: one menu only, so no
        // constraints at all.
        let data = Dataset::new(vec![(menu(0b11), 0), (menu(0b11), 1)]).unwrap();
        let r = test_preference(&data, &Preference::natural(2), &TestOptions::default()).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.cv, 0.0);
        assert!(!r.reject);
        assert_eq!(r.n_constraints, 0);
    }

    #[test]
    fn true_preference_typically_accepted() {
        let data = logit_dataset(4, 200, 13);
        let opts = TestOptions {
            draws: 500,
            ..TestOptions::default()
        };
        let r = test_preference(&data, &Preference::natural(4), &opts).unwrap();
        assert!(!r.reject, "statistic {} vs cv {}", r.statistic, r.cv);
    }

    #[test]
    fn reversed_preference_rejected_with_power() {
        // Putting the truly-best alternative last is the easiest mistake to
        // detect; at N=200 on four alternatives rejection is near-certain.
        let data = logit_dataset(4, 200, 17);
        let wrong = Preference::from_order(&[1, 2, 3, 0]).unwrap();
        let opts = TestOptions {
            draws: 500,
            ..TestOptions::default()
        };
        let r = test_preference(&data, &wrong, &opts).unwrap();
        assert!(r.statistic > 0.0);
        assert!(r.n_violated > 0);
    }

    #[test]
    fn two_step_extremes() {
        let omega = CorrelationMatrix::identity(3);
        // Everything comfortably satisfied and far from binding: all kept,
        // cv_adj equals the one-step cv.
        let slack = ConstraintStats {
            d_hat: vec![-0.001, -0.002, -0.0005],
            sigma_hat: vec![0.05, 0.05, 0.05],
            degenerate: vec![false; 3],
        };
        let (keep, cv_adj) = two_step_selection(&slack, &omega, 0.005, 0.05, 2_000, 3).unwrap();
        assert!(keep.iter().all(|&k| k));
        let one_step = critical_value(&omega, 0.05, None, 2_000, 3).unwrap();
        assert_eq!(cv_adj, one_step);

        // Everything deeply satisfied: all dropped, cv_adj collapses to zero.
        let deep = ConstraintStats {
            d_hat: vec![-10.0, -9.0, -8.0],
            sigma_hat: vec![0.1, 0.1, 0.1],
            degenerate: vec![false; 3],
        };
        let (keep, cv_adj) = two_step_selection(&deep, &omega, 0.005, 0.05, 2_000, 3).unwrap();
        assert!(keep.iter().all(|&k| !k));
        assert_eq!(cv_adj, 0.0);
    }

    #[test]
    fn deterministic_violation_forces_rejection() {
        // Menu {a,b}: a always chosen; menu {a,b,c}: b sometimes beats its
        // binary share... construct directly: π̂(b|{a,b}) = 0 with N = 50 and
        // π̂(b|{a,b,c}) = 0.4. Under a>b>c the AC constraint for b at
        // T = {a,b} has D̂ = 0.4 - (1.0) < 0; instead test RAM for b... use a
        // simpler deterministic case: π̂(a|S) = 1 and π̂(U|T) = 1 gives σ̂ = 0
        // and D̂ = 0; so build π̂(a|S)=1, π̂(a|T)=1 via RAM: D̂ = 0, fine. The
        // genuinely violated zero-variance case needs π̂(a|S) = 1 and
        // π̂(U_⪰(a)|T) = 0, impossible for AC since a ∈ U. Use the binary cap:
        // π̂(worse|pair) = 1 > η with zero variance.
        let mut obs = Vec::new();
        for _ in 0..30 {
            obs.push((menu(0b11), 1));
        }
        for _ in 0..30 {
            obs.push((menu(0b111), 0));
        }
        let data = Dataset::new(obs).unwrap();
        let opts = TestOptions {
            kinds: vec![ConstraintKind::BinaryEta],
            eta: Some(0.6),
            ..TestOptions::default()
        };
        let r = test_preference(&data, &Preference::natural(3), &opts).unwrap();
        assert!(r.deterministic_violation);
        assert!(r.reject);
        assert!(r.statistic.is_infinite());
    }

    #[test]
    fn confidence_set_contains_truth_and_reports_all_orders() {
        let data = logit_dataset(3, 200, 23);
        let opts = TestOptions {
            draws: 500,
            ..TestOptions::default()
        };
        let cs = confidence_set(&data, 3, &opts).unwrap();
        assert_eq!(cs.results.len(), 6);
        assert!(!cs.specification_rejected);
        assert!(cs
            .survivors
            .iter()
            .any(|p| *p == Preference::natural(3)));
    }

    #[test]
    fn all_statistics_zero_keeps_every_order() {
        // A single binary menu generates no AC constraints for any order, so
        // every statistic is zero and all 2 orders survive.
        let data = Dataset::new(vec![(menu(0b11), 0), (menu(0b11), 1)]).unwrap();
        let cs = confidence_set(&data, 2, &TestOptions::default()).unwrap();
        assert_eq!(cs.survivors.len(), 2);
    }
}

//! The reference simulation design and its replication drivers.
//!
//! Design: alternatives a1..an (default six), every menu of size two or more,
//! logit attention with exponent two, true preference a1 > a2 > ... > an, and
//! two hundred observations per menu. The drivers reproduce the restriction
//! counts, violation counts, largest inequality values, Monte Carlo rejection
//! rates, and attention-frequency bound percentiles of that design.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::characterize::bounds::attention_bounds_population;
use crate::characterize::constraints::{enumerate_constraints, ConstraintKind, VIOLATION_TOL};
use crate::core::alphabet::{Alphabet, Menu};
use crate::core::choice::ChoiceRule;
use crate::core::domain::Domain;
use crate::core::mask::Mask;
use crate::core::preference::Preference;
use crate::error::Result;
use crate::inference::bounds::{joint_attention_bounds_on_rule, BoundTarget};
use crate::inference::estimate::estimate_choice_rule;
use crate::inference::test::{test_preference_on_system, Method, TestOptions};
use crate::models::{
    attention_frequency, induced_choice_rule, logit_attention, sample_dataset, AttentionRule,
    Dataset,
};
use crate::rng::{self, tag};

/// The synthetic logit-attention design.
#[derive(Clone, Debug)]
pub struct LogitDesign {
    pub alphabet: Alphabet,
    pub domain: Domain,
    pub attention: AttentionRule,
    pub truth: Preference,
    pub choice_rule: ChoiceRule,
    pub n_per_menu: u64,
}

impl LogitDesign {
    pub fn new(n_alternatives: usize, varsigma: f64, n_per_menu: u64) -> Result<LogitDesign> {
        let alphabet = Alphabet::numbered(n_alternatives)?;
        let domain = Domain::full(n_alternatives, 2);
        let attention = logit_attention(&domain, varsigma);
        let truth = Preference::natural(n_alternatives);
        let choice_rule = induced_choice_rule(&truth, &attention)?;
        Ok(LogitDesign {
            alphabet,
            domain,
            attention,
            truth,
            choice_rule,
            n_per_menu,
        })
    }

    pub fn sizes(&self) -> BTreeMap<Menu, u64> {
        self.domain
            .menus()
            .iter()
            .map(|&m| (m, self.n_per_menu))
            .collect()
    }

    /// One seeded replication's dataset.
    pub fn sample(&self, seed: u64) -> Result<Dataset> {
        sample_dataset(&self.choice_rule, &self.sizes(), seed)
    }

    /// True attention frequency (depends only on menu size under logit
    /// attention).
    pub fn true_phi(&self, alt: usize, menu: Menu) -> Result<f64> {
        attention_frequency(&self.attention, alt, menu)
    }
}

/// One column of the rejection-rate table: a set of constraint families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Column {
    Aom,
    Ram,
    AomRam,
    /// AOM + RAM + the binary attention cap at the given threshold.
    AomRamBinary(f64),
}

impl Column {
    pub fn kinds(&self) -> (Vec<ConstraintKind>, Option<f64>) {
        match *self {
            Column::Aom => (vec![ConstraintKind::Ac], None),
            Column::Ram => (vec![ConstraintKind::Ram], None),
            Column::AomRam => (vec![ConstraintKind::Ac, ConstraintKind::Ram], None),
            Column::AomRamBinary(eta) => (
                vec![
                    ConstraintKind::Ac,
                    ConstraintKind::Ram,
                    ConstraintKind::BinaryEta,
                ],
                Some(eta),
            ),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Column::Aom => "aom".to_string(),
            Column::Ram => "ram".to_string(),
            Column::AomRam => "aom+ram".to_string(),
            Column::AomRamBinary(eta) => format!("aom+ram+binary(eta={eta})"),
        }
    }
}

/// The four standard columns plus the binary-cap thresholds.
pub fn standard_columns() -> Vec<Column> {
    vec![
        Column::Aom,
        Column::Ram,
        Column::AomRam,
        Column::AomRamBinary(0.9),
        Column::AomRamBinary(0.8),
        Column::AomRamBinary(0.7),
        Column::AomRamBinary(0.6),
    ]
}

/// The four hypothesized preferences of the reference table, for six
/// alternatives: the truth, the truth with a1 demoted to last place, and two
/// partial reversals of the tail.
pub fn standard_preferences(n: usize) -> Vec<Preference> {
    let mut prefs = Vec::new();
    prefs.push(Preference::natural(n));
    let mut demoted: Vec<usize> = (1..n).collect();
    demoted.push(0);
    prefs.push(Preference::from_order(&demoted).expect("valid permutation"));
    if n >= 4 {
        // Keep the top two, reverse the rest.
        let mut order: Vec<usize> = vec![0, 1];
        order.extend((2..n).rev());
        prefs.push(Preference::from_order(&order).expect("valid permutation"));
        // Keep the top one, reverse the rest.
        let mut order: Vec<usize> = vec![0];
        order.extend((1..n).rev());
        prefs.push(Preference::from_order(&order).expect("valid permutation"));
    }
    prefs
}

/// Deterministic population summary of one (preference, column) cell.
#[derive(Clone, Debug)]
pub struct PopulationCell {
    pub n_restrictions: usize,
    pub n_violations: usize,
    pub max_inequality: Option<f64>,
}

pub fn population_cell(
    design: &LogitDesign,
    pref: &Preference,
    column: Column,
) -> Result<PopulationCell> {
    let (kinds, eta) = column.kinds();
    let system = enumerate_constraints(&design.domain, pref, &kinds, eta)?;
    let mut max_inequality: Option<f64> = None;
    let mut n_violations = 0;
    for c in system.constraints() {
        let d = crate::characterize::constraints::evaluate_constraint(
            &design.choice_rule,
            pref,
            c,
        )?;
        if d > VIOLATION_TOL {
            n_violations += 1;
        }
        max_inequality = Some(max_inequality.map_or(d, |m: f64| m.max(d)));
    }
    Ok(PopulationCell {
        n_restrictions: system.len(),
        n_violations,
        max_inequality,
    })
}

/// Monte Carlo rejection rate of one cell. Replication r runs on the stream
/// (seed, r): sampling, estimation, and critical-value simulation all derive
/// from it, so replications can run in parallel bit-identically.
pub fn rejection_rate(
    design: &LogitDesign,
    pref: &Preference,
    column: Column,
    reps: usize,
    alpha: f64,
    c3: f64,
    draws: usize,
    seed: u64,
) -> Result<f64> {
    let (kinds, eta) = column.kinds();
    // Every menu is observed in every replication, so the constraint system
    // is fixed across replications.
    let system = enumerate_constraints(&design.domain, pref, &kinds, eta)?;
    let rejections: Vec<Result<bool>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let rep_seed = rng::mix(seed, &[tag::REPLICATION, rep as u64]);
            let data = design.sample(rep_seed)?;
            let pi_hat = estimate_choice_rule(&data)?;
            let opts = TestOptions {
                kinds: kinds.clone(),
                eta,
                alpha,
                method: Method::TwoStep { c3 },
                draws,
                seed: rep_seed,
            };
            let result = test_preference_on_system(&pi_hat, &system, &opts)?;
            Ok(result.reject)
        })
        .collect();
    let mut count = 0usize;
    for r in rejections {
        if r? {
            count += 1;
        }
    }
    Ok(count as f64 / reps as f64)
}

/// The bound targets plotted for the reference figure: alternatives a1, a2,
/// a3 across the nested prefix menus {a1..ak} containing them.
pub fn figure_targets(n: usize) -> Vec<(usize, Menu)> {
    let mut targets = Vec::new();
    for alt in 0..3.min(n) {
        for k in (alt + 1).max(2)..=n {
            let menu = Menu::new(Mask::full(k)).expect("nonempty");
            targets.push((alt, menu));
        }
    }
    targets
}

/// Population bounds and the true frequency for one figure target.
#[derive(Clone, Debug)]
pub struct FigureCell {
    pub alt: usize,
    pub menu: Menu,
    pub true_phi: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn figure_population(design: &LogitDesign) -> Result<Vec<FigureCell>> {
    let mut out = Vec::new();
    for (alt, menu) in figure_targets(design.alphabet.len()) {
        let b = attention_bounds_population(
            &design.choice_rule,
            &design.truth,
            alt,
            menu,
            &design.domain,
            None,
        )?;
        out.push(FigureCell {
            alt,
            menu,
            true_phi: design.true_phi(alt, menu)?,
            lower: b.lower,
            upper: b.upper,
        });
    }
    Ok(out)
}

/// Monte Carlo percentiles of the estimated bounds: the 95th percentile of
/// the lower estimates and the 5th percentile of the upper estimates.
#[derive(Clone, Debug)]
pub struct FigurePercentiles {
    pub alt: usize,
    pub menu: Menu,
    pub lower_p95: f64,
    pub upper_p05: f64,
}

fn percentile(mut values: Vec<f64>, q: f64) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    let k = (q * n as f64).ceil() as usize;
    values[k.clamp(1, n) - 1]
}

/// Per-target replication draws of both bound estimates.
#[derive(Clone, Debug)]
pub struct FigureSamples {
    pub alt: usize,
    pub menu: Menu,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

pub fn figure_bound_samples(
    design: &LogitDesign,
    reps: usize,
    alpha: f64,
    draws: usize,
    seed: u64,
) -> Result<Vec<FigureSamples>> {
    let targets = figure_targets(design.alphabet.len());
    let per_rep: Vec<Result<Vec<(f64, f64)>>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let rep_seed = rng::mix(seed, &[tag::REPLICATION, rep as u64]);
            let data = design.sample(rep_seed)?;
            let pi_hat = estimate_choice_rule(&data)?;
            let mut cells = Vec::with_capacity(targets.len());
            for &(alt, menu) in &targets {
                let lo = joint_attention_bounds_on_rule(
                    &pi_hat,
                    &[BoundTarget::lower(alt, menu)],
                    alpha,
                    draws,
                    rng::mix(rep_seed, &[tag::BOUND, 0]),
                )?;
                let up = joint_attention_bounds_on_rule(
                    &pi_hat,
                    &[BoundTarget::upper(alt, menu, design.truth.clone())],
                    alpha,
                    draws,
                    rng::mix(rep_seed, &[tag::BOUND, 1]),
                )?;
                cells.push((lo[0].value, up[0].value));
            }
            Ok(cells)
        })
        .collect();
    let mut samples: Vec<FigureSamples> = targets
        .iter()
        .map(|&(alt, menu)| FigureSamples {
            alt,
            menu,
            lower: Vec::with_capacity(reps),
            upper: Vec::with_capacity(reps),
        })
        .collect();
    for rep in per_rep {
        for (i, (lo, up)) in rep?.into_iter().enumerate() {
            samples[i].lower.push(lo);
            samples[i].upper.push(up);
        }
    }
    Ok(samples)
}

pub fn figure_percentiles(
    design: &LogitDesign,
    reps: usize,
    alpha: f64,
    draws: usize,
    seed: u64,
) -> Result<Vec<FigurePercentiles>> {
    Ok(figure_bound_samples(design, reps, alpha, draws, seed)?
        .into_iter()
        .map(|s| FigurePercentiles {
            alt: s.alt,
            menu: s.menu,
            lower_p95: percentile(s.lower, 0.95),
            upper_p05: percentile(s.upper, 0.05),
        })
        .collect())
}

/// Convergence of estimated to true choice probabilities, used by the
/// statistical sanity checks: the largest absolute estimation error across
/// menus and alternatives.
pub fn max_estimation_error(design: &LogitDesign, data: &Dataset) -> Result<f64> {
    let pi_hat = estimate_choice_rule(data)?;
    let mut worst = 0.0f64;
    for &menu in design.domain.menus() {
        for alt in menu.iter() {
            let err =
                (pi_hat.prob(alt, menu)? - design.choice_rule.prob(alt, menu)?).abs();
            worst = worst.max(err);
        }
    }
    Ok(worst)
}

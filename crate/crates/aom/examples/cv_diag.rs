use aom::characterize::constraints::enumerate_constraints;
use aom::inference::correlation::estimate_correlation;
use aom::inference::critical::critical_value;
use aom::inference::estimate::{constraint_stats, estimate_choice_rule};
use aom::inference::{two_step_selection, CorrelationMatrix};
use aom::rng::{self, tag};
use aom::sim::{standard_preferences, Column, LogitDesign};

fn main() {
    let design = LogitDesign::new(6, 2.0, 200).unwrap();
    let prefs = standard_preferences(6);
    for (p, col) in [(1usize, Column::Aom), (3, Column::AomRam)] {
        let (kinds, eta) = col.kinds();
        let system = enumerate_constraints(&design.domain, &prefs[p], &kinds, eta).unwrap();
        let rep_seed = rng::mix(42, &[tag::REPLICATION, 0]);
        let data = design.sample(rep_seed).unwrap();
        let pi_hat = estimate_choice_rule(&data).unwrap();
        let stats = constraint_stats(&pi_hat, &system).unwrap();
        let active: Vec<usize> = (0..stats.len()).filter(|&i| !stats.degenerate[i]).collect();
        let sub = system.subset(&active);
        let omega = estimate_correlation(&pi_hat, &sub).unwrap();
        let substats = aom::inference::ConstraintStats {
            d_hat: active.iter().map(|&i| stats.d_hat[i]).collect(),
            sigma_hat: active.iter().map(|&i| stats.sigma_hat[i]).collect(),
            degenerate: vec![false; active.len()],
        };
        let stat = substats.d_hat.iter().zip(&substats.sigma_hat).map(|(d, s)| d / s).fold(0.0f64, f64::max);
        let cv_one = critical_value(&omega, 0.05, None, 4000, rep_seed).unwrap();
        let cv1 = critical_value(&omega, 0.005, None, 4000, rep_seed).unwrap();
        let (keep, cv_adj) = two_step_selection(&substats, &omega, 0.005, 0.05, 4000, rep_seed).unwrap();
        let kept = keep.iter().filter(|&&k| k).count();
        let ident = CorrelationMatrix::identity(active.len());
        let cv_ident = critical_value(&ident, 0.05, None, 4000, rep_seed).unwrap();
        println!(
            "pref{} {:8} dim={} stat={:.3} cv_one={:.3} cv_ident={:.3} cv1(c3)={:.3} kept={}/{} cv_adj={:.3}",
            p + 1, col.label(), active.len(), stat, cv_one, cv_ident, cv1, kept, active.len(), cv_adj
        );
    }
}

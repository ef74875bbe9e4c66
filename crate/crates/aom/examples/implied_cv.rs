use aom::characterize::constraints::enumerate_constraints;
use aom::inference::correlation::estimate_correlation;
use aom::inference::critical::critical_value;
use aom::inference::estimate::{constraint_stats, estimate_choice_rule};
use aom::inference::two_step_selection;
use aom::rng::{self, tag};
use aom::sim::{standard_preferences, Column, LogitDesign};
use rayon::prelude::*;

fn main() {
    let design = LogitDesign::new(6, 2.0, 200).unwrap();
    let prefs = standard_preferences(6);
    for (p, col, want) in [(1usize, Column::Aom, 0.250), (2, Column::Ram, 0.315)] {
        let (kinds, eta) = col.kinds();
        let system = enumerate_constraints(&design.domain, &prefs[p], &kinds, eta).unwrap();
        let rows: Vec<(f64, f64, f64, f64)> = (0..1200)
            .into_par_iter()
            .map(|rep| {
                let rep_seed = rng::mix(42, &[tag::REPLICATION, rep as u64]);
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
                let cv_one = critical_value(&omega, 0.05, None, 2000, rep_seed).unwrap();
                let (keep, cv_adj05) = two_step_selection(&substats, &omega, 0.005, 0.05, 2000, rep_seed).unwrap();
                let cv_adj04 = critical_value(&omega, 0.04, Some(&keep), 2000, rep_seed).unwrap();
                (stat, cv_one, cv_adj05, cv_adj04)
            })
            .collect();
        let n = rows.len() as f64;
        let rej = |f: &dyn Fn(&(f64, f64, f64, f64)) -> bool| rows.iter().filter(|r| f(r)).count() as f64 / n;
        let r_one = rej(&|r| r.0 > r.1);
        let r_two05 = rej(&|r| r.0 > r.2);
        let r_two04 = rej(&|r| r.0 > r.3);
        // Implied fixed cv to hit the target rate.
        let mut stats_sorted: Vec<f64> = rows.iter().map(|r| r.0).collect();
        stats_sorted.sort_by(f64::total_cmp);
        let idx = ((1.0 - want) * n).round() as usize;
        let implied = stats_sorted[idx.min(rows.len() - 1)];
        let mean = |f: &dyn Fn(&(f64, f64, f64, f64)) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / n;
        println!(
            "pref{} {:8} want={want:.3} | one={r_one:.3} two05={r_two05:.3} two04={r_two04:.3} | mean cv: one={:.3} adj05={:.3} adj04={:.3} | implied cv*={implied:.3}",
            p + 1, col.label(), mean(&|r| r.1), mean(&|r| r.2), mean(&|r| r.3)
        );
    }
}

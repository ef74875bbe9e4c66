use aom::characterize::constraints::enumerate_constraints;
use aom::inference::{estimate_choice_rule, test_preference_on_system, Method, TestOptions};
use aom::rng::{self, tag};
use aom::sim::{standard_preferences, Column, LogitDesign};
use rayon::prelude::*;

fn main() {
    let design = LogitDesign::new(6, 2.0, 200).unwrap();
    let prefs = standard_preferences(6);
    let reps = 1500usize;
    let cells: Vec<(usize, Column, f64)> = vec![
        (0, Column::Aom, 0.001),
        (0, Column::Ram, 0.000),
        (0, Column::AomRam, 0.000),
        (0, Column::AomRamBinary(0.6), 0.000),
        (1, Column::Aom, 0.250),
        (1, Column::Ram, 0.000),
        (1, Column::AomRam, 0.173),
        (1, Column::AomRamBinary(0.9), 0.172),
        (1, Column::AomRamBinary(0.8), 0.216),
        (1, Column::AomRamBinary(0.7), 1.000),
        (2, Column::Aom, 0.045),
        (2, Column::Ram, 0.315),
        (2, Column::AomRam, 0.210),
        (2, Column::AomRamBinary(0.8), 0.306),
        (3, Column::Aom, 0.130),
        (3, Column::Ram, 0.408),
        (3, Column::AomRam, 0.278),
        (3, Column::AomRamBinary(0.8), 0.384),
    ];
    for (p, col, want) in cells {
        let (kinds, eta) = col.kinds();
        let system = enumerate_constraints(&design.domain, &prefs[p], &kinds, eta).unwrap();
        let count = (0..reps)
            .into_par_iter()
            .filter(|&rep| {
                let rep_seed = rng::mix(42, &[tag::REPLICATION, rep as u64]);
                let data = design.sample(rep_seed).unwrap();
                let pi_hat = estimate_choice_rule(&data).unwrap();
                let opts = TestOptions { kinds: kinds.clone(), eta, alpha: 0.05, method: Method::TwoStep { c3: 0.005 }, draws: 2000, seed: rep_seed };
                test_preference_on_system(&pi_hat, &system, &opts).unwrap().reject
            })
            .count();
        let rate = count as f64 / reps as f64;
        println!(
            "pref{} {:24} want={want:.3}  got={rate:.3}  diff={:+.3}",
            p + 1, col.label(), rate - want
        );
    }
}

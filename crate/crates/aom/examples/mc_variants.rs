use aom::characterize::constraints::enumerate_constraints;
use aom::inference::{estimate_choice_rule, test_preference_on_system, Method, TestOptions};
use aom::rng::{self, tag};
use aom::sim::{standard_preferences, Column, LogitDesign};
use rayon::prelude::*;

fn rate(design: &LogitDesign, p: usize, col: Column, reps: usize, variant: &str) -> (f64, f64) {
    let prefs = standard_preferences(6);
    let (kinds, eta) = col.kinds();
    let system = enumerate_constraints(&design.domain, &prefs[p], &kinds, eta).unwrap();
    let outcomes: Vec<(bool, bool)> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let rep_seed = rng::mix(42, &[tag::REPLICATION, rep as u64]);
            let data = design.sample(rep_seed).unwrap();
            let pi_hat = estimate_choice_rule(&data).unwrap();
            let method = if variant == "onestep" { Method::OneStep } else { Method::TwoStep { c3: 0.005 } };
            let opts = TestOptions { kinds: kinds.clone(), eta, alpha: 0.05, method, draws: 2000, seed: rep_seed };
            let r = test_preference_on_system(&pi_hat, &system, &opts).unwrap();
            (r.reject, r.reject_nominal.unwrap_or(r.reject))
        })
        .collect();
    let n = reps as f64;
    (
        outcomes.iter().filter(|(a, _)| *a).count() as f64 / n,
        outcomes.iter().filter(|(_, b)| *b).count() as f64 / n,
    )
}

fn main() {
    let design = LogitDesign::new(6, 2.0, 200).unwrap();
    for (p, col, want) in [
        (1usize, Column::Aom, 0.250),
        (3, Column::AomRam, 0.278),
    ] {
        let (two_alpha, two_cons) = rate(&design, p, col, 400, "twostep");
        let (one, _) = rate(&design, p, col, 400, "onestep");
        println!(
            "pref{} {:10} want={want:.3}  two@a={two_alpha:.3}  two@a-2c3={two_cons:.3}  one@a={one:.3}",
            p + 1, col.label()
        );
    }
}

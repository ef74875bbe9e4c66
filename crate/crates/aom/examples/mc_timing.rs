use aom::sim::{rejection_rate, standard_preferences, Column, LogitDesign};
use std::time::Instant;

fn main() {
    let design = LogitDesign::new(6, 2.0, 200).unwrap();
    let prefs = standard_preferences(6);
    let reps = 500;
    let cells: Vec<(usize, Column, f64)> = vec![
        (0, Column::Aom, 0.001),
        (1, Column::Aom, 0.250),
        (1, Column::Ram, 0.000),
        (1, Column::AomRam, 0.173),
        (2, Column::AomRam, 0.210),
        (3, Column::AomRam, 0.278),
        (3, Column::AomRamBinary(0.8), 0.384),
        (1, Column::AomRamBinary(0.7), 1.000),
    ];
    for (p, col, want) in cells {
        let t = Instant::now();
        let r = rejection_rate(&design, &prefs[p], col, reps, 0.05, 0.005, 2000, 42).unwrap();
        println!(
            "pref{} {:24} rate={:.3} want={:.3} diff={:+.3}  ({:?})",
            p + 1, col.label(), r, want, r - want, t.elapsed()
        );
    }
}

use aom::sim::{standard_columns, standard_preferences, population_cell, LogitDesign};

fn main() {
    let design = LogitDesign::new(6, 2.0, 200).unwrap();
    let prefs = standard_preferences(6);
    let cols = standard_columns();
    for (pi, pref) in prefs.iter().enumerate() {
        for col in &cols {
            let cell = population_cell(&design, pref, *col).unwrap();
            println!(
                "pref{} {:24} restr={:5} viol={:4} max={:+.4}",
                pi + 1,
                col.label(),
                cell.n_restrictions,
                cell.n_violations,
                cell.max_inequality.unwrap()
            );
        }
    }
}

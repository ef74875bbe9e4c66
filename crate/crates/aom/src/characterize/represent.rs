//! Constructing attention rules that rationalize a choice rule.
//!
//! For each menu independently, an attention rule is a nonnegative solution
//! of a small linear system: the mass on sets where `a` is best must equal
//! π(a|S) (choice consistency) and the mass on sets containing `a` must hit a
//! target attention frequency. With pessimistic targets — the best choice
//! probability over observed supersets — feasibility holds exactly when the
//! pair (π, ≻) satisfies attention compensation.

use crate::characterize::lp::feasible_point;
use crate::core::alphabet::Menu;
use crate::core::choice::ChoiceRule;
use crate::core::domain::Domain;
use crate::core::mask::Mask;
use crate::core::preference::Preference;
use crate::error::{Error, Result};
use crate::models::AttentionRule;

/// Solve one menu's attention system: nonnegative masses over nonempty
/// subsets, choice-consistent with `probs`, with per-member frequency
/// `targets`. Both vectors are indexed by member rank within the menu.
pub fn solve_menu_attention(
    menu: Menu,
    pref: &Preference,
    probs: &[f64],
    targets: &[f64],
) -> Option<Vec<(Mask, f64)>> {
    let k = menu.len();
    debug_assert!(probs.len() == k && targets.len() == k);
    let subsets: Vec<Mask> = menu.mask().nonempty_subsets().collect();
    let nvars = subsets.len();
    let members: Vec<usize> = menu.iter().collect();

    // 2k equality rows: best-mass and containment-mass per member.
    let mut a = vec![vec![0.0; nvars]; 2 * k];
    let mut b = vec![0.0; 2 * k];
    for (row, &alt) in members.iter().enumerate() {
        b[row] = probs[row];
        b[k + row] = targets[row];
        for (col, &t) in subsets.iter().enumerate() {
            if t.contains(alt) {
                a[k + row][col] = 1.0;
                if pref.best_in(t) == alt {
                    a[row][col] = 1.0;
                }
            }
        }
    }

    let x = feasible_point(&a, &b)?;
    Some(subsets.into_iter().zip(x).collect())
}

/// Pessimistic attention-frequency target for each member of a menu:
/// max over supersets in the domain of the alternative's choice probability.
pub fn pessimistic_targets(
    pi: &ChoiceRule,
    menu: Menu,
    domain: &Domain,
) -> Result<Vec<f64>> {
    let supersets = domain.supersets_of(menu);
    if supersets.is_empty() {
        return Err(Error::NoSupersetInDomain(menu.mask().0));
    }
    let mut targets = Vec::with_capacity(menu.len());
    for alt in menu.iter() {
        let mut best = f64::NEG_INFINITY;
        for &r in &supersets {
            best = best.max(pi.prob(alt, r)?);
        }
        targets.push(best);
    }
    Ok(targets)
}

/// Build the pessimistic representation: an attention rule that reproduces π
/// with `pref` and whose attention frequency attains the sharp lower bound at
/// every menu. Fails with `InfeasibleSystem` exactly when (π, pref) violates
/// attention compensation (or on numerical breakdown, which the caller may
/// treat as a bug given the precondition).
pub fn construct_pessimistic_representation(
    pi: &ChoiceRule,
    pref: &Preference,
    domain: &Domain,
) -> Result<AttentionRule> {
    let mut mu = AttentionRule::new();
    for &menu in domain.menus() {
        let probs = pi.probs_for(menu)?.to_vec();
        let targets = pessimistic_targets(pi, menu, domain)?;
        let masses = solve_menu_attention(menu, pref, &probs, &targets)
            .ok_or(Error::InfeasibleSystem(menu.mask().0))?;
        // The LP returns masses within tolerance of a distribution; clean
        // residual negatives and renormalize before validation.
        let mut cleaned: Vec<(Mask, f64)> =
            masses.into_iter().map(|(t, p)| (t, p.max(0.0))).collect();
        let total: f64 = cleaned.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::InfeasibleSystem(menu.mask().0));
        }
        for m in &mut cleaned {
            m.1 /= total;
        }
        mu.insert(menu, &cleaned)?;
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::constraints::ac_satisfied;
    use crate::models::{
        attention_frequency, check_attention_overload, induced_choice_rule, logit_attention,
    };

    fn menu(bits: u64) -> Menu {
        Menu::new(Mask(bits)).unwrap()
    }

    #[test]
    fn logit_design_reconstructs_exactly() {
        let domain = Domain::full(4, 2);
        let mu = logit_attention(&domain, 2.0);
        let pref = Preference::natural(4);
        let pi = induced_choice_rule(&pref, &mu).unwrap();
        let rebuilt = construct_pessimistic_representation(&pi, &pref, &domain).unwrap();
        let pi2 = induced_choice_rule(&pref, &rebuilt).unwrap();
        for &m in domain.menus() {
            for alt in m.iter() {
                let got = pi2.prob(alt, m).unwrap();
                let want = pi.prob(alt, m).unwrap();
                assert!((got - want).abs() < 1e-8, "{m:?}/{alt}: {got} vs {want}");
            }
        }
        assert!(check_attention_overload(&rebuilt, &domain).unwrap().satisfied);
        // Attention frequencies hit the pessimistic targets.
        for &m in domain.menus() {
            let targets = pessimistic_targets(&pi, m, &domain).unwrap();
            for (rank, alt) in m.iter().enumerate() {
                let phi = attention_frequency(&rebuilt, alt, m).unwrap();
                assert!((phi - targets[rank]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn worked_example_feasible_under_compatible_order() {
        let big = menu(0b1111);
        let small = menu(0b1110);
        let mut pi = ChoiceRule::new();
        pi.insert(big, vec![0.0, 0.2, 0.3, 0.5]).unwrap();
        pi.insert(small, vec![0.25, 0.0, 0.75]).unwrap();
        let domain = Domain::new([big, small]);

        let good = Preference::from_order(&[3, 2, 1, 0]).unwrap();
        assert!(ac_satisfied(&pi, &good, &domain).unwrap().0);
        let mu = construct_pessimistic_representation(&pi, &good, &domain).unwrap();
        let pi2 = induced_choice_rule(&good, &mu).unwrap();
        for &m in domain.menus() {
            for alt in m.iter() {
                assert!((pi2.prob(alt, m).unwrap() - pi.prob(alt, m).unwrap()).abs() < 1e-8);
            }
        }

        let bad = Preference::from_order(&[1, 2, 3, 0]).unwrap();
        assert!(matches!(
            construct_pessimistic_representation(&pi, &bad, &domain),
            Err(Error::InfeasibleSystem(_))
        ));
    }
}

//! A default option that always receives attention, and the choice-overload
//! normalization.

use crate::core::alphabet::Menu;
use crate::core::choice::{ChoiceRule, PROB_TOL};
use crate::core::domain::enumerate_nested_pairs;
use crate::core::mask::Mask;
use crate::error::{Error, Result};

/// A choice rule over menus that all include a distinguished default
/// alternative, interpreted as "choosing nothing".
#[derive(Clone, Debug)]
pub struct DefaultChoiceRule {
    base: ChoiceRule,
    default_alt: usize,
}

impl DefaultChoiceRule {
    pub fn new(base: ChoiceRule, default_alt: usize) -> Result<DefaultChoiceRule> {
        for menu in base.menus() {
            if !menu.contains(default_alt) {
                return Err(Error::DefaultMissing(menu.mask().0));
            }
        }
        Ok(DefaultChoiceRule { base, default_alt })
    }

    pub fn base(&self) -> &ChoiceRule {
        &self.base
    }

    pub fn default_alt(&self) -> usize {
        self.default_alt
    }

    /// Probability of deferring to the default in a menu.
    pub fn default_prob(&self, menu: Menu) -> Result<f64> {
        self.base.prob(self.default_alt, menu)
    }
}

/// Violation pair for choice overload: the default is chosen less often in
/// the bigger menu.
#[derive(Clone, Debug)]
pub struct ChoiceOverloadReport {
    pub satisfied: bool,
    /// (smaller starred menu, bigger starred menu, default prob small, big).
    pub violations: Vec<(Menu, Menu, f64, f64)>,
}

/// Choice overload: the default's probability weakly rises across nested
/// menus.
pub fn check_choice_overload(pi: &DefaultChoiceRule) -> Result<ChoiceOverloadReport> {
    let domain = pi.base().domain();
    let mut violations = Vec::new();
    for (sub, sup) in enumerate_nested_pairs(&domain) {
        let p_sub = pi.default_prob(sub)?;
        let p_sup = pi.default_prob(sup)?;
        if p_sup < p_sub - PROB_TOL {
            violations.push((sub, sup, p_sub, p_sup));
        }
    }
    Ok(ChoiceOverloadReport {
        satisfied: violations.is_empty(),
        violations,
    })
}

/// Strip the default option and renormalize each menu's remaining
/// probabilities. Fails when a menu puts all its mass on the default.
pub fn normalize_default(pi: &DefaultChoiceRule) -> Result<ChoiceRule> {
    let mut out = ChoiceRule::new();
    for starred in pi.base().menus().collect::<Vec<_>>() {
        let stripped_mask = starred.mask().minus(Mask::singleton(pi.default_alt()));
        let stripped = Menu::new(stripped_mask).map_err(|_| {
            // A menu holding only the default has nothing left to normalize.
            Error::AllMassOnDefault(starred.mask().0)
        })?;
        let mut total = 0.0;
        for alt in stripped.iter() {
            total += pi.base().prob(alt, starred)?;
        }
        if total <= 0.0 {
            return Err(Error::AllMassOnDefault(starred.mask().0));
        }
        let probs: Vec<f64> = stripped
            .iter()
            .map(|alt| pi.base().prob(alt, starred).map(|p| p / total))
            .collect::<Result<_>>()?;
        out.insert(stripped, probs)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn menu(bits: u64) -> Menu {
        Menu::new(Mask(bits)).unwrap()
    }

    /// The worked default-option tables: o* is alternative 4.
    fn worked_rule() -> DefaultChoiceRule {
        let mut base = ChoiceRule::new();
        base.insert(menu(0b11111), vec![0.1, 0.1, 0.1, 0.1, 0.6])
            .unwrap();
        base.insert(menu(0b11110), vec![0.2, 0.2, 0.6, 0.0]).unwrap();
        DefaultChoiceRule::new(base, 4).unwrap()
    }

    #[test]
    fn worked_example_satisfies_choice_overload() {
        let pi = worked_rule();
        let report = check_choice_overload(&pi).unwrap();
        assert!(report.satisfied);
    }

    #[test]
    fn normalization_matches_worked_tables() {
        let pi = worked_rule();
        let starless = normalize_default(&pi).unwrap();
        for alt in 0..4 {
            assert!((starless.prob(alt, menu(0b1111)).unwrap() - 0.25).abs() < 1e-12);
        }
        assert!((starless.prob(3, menu(0b1110)).unwrap() - 0.6).abs() < 1e-12);
        // π(o*|S*) = 0 on the smaller menu, so that row is untouched.
        assert!((starless.prob(1, menu(0b1110)).unwrap() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn constant_default_probability_is_weakly_overloaded() {
        let mut base = ChoiceRule::new();
        base.insert(menu(0b111), vec![0.3, 0.3, 0.4]).unwrap();
        base.insert(menu(0b101), vec![0.6, 0.4]).unwrap();
        let pi = DefaultChoiceRule::new(base, 2).unwrap();
        assert!(check_choice_overload(&pi).unwrap().satisfied);
    }

    #[test]
    fn decreasing_default_probability_violates() {
        let mut base = ChoiceRule::new();
        base.insert(menu(0b111), vec![0.4, 0.4, 0.2]).unwrap();
        base.insert(menu(0b101), vec![0.6, 0.4]).unwrap();
        let pi = DefaultChoiceRule::new(base, 2).unwrap();
        let report = check_choice_overload(&pi).unwrap();
        assert!(!report.satisfied);
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn all_mass_on_default_is_an_error() {
        let mut base = ChoiceRule::new();
        base.insert(menu(0b11), vec![0.0, 1.0]).unwrap();
        let pi = DefaultChoiceRule::new(base, 1).unwrap();
        assert!(matches!(
            normalize_default(&pi),
            Err(Error::AllMassOnDefault(_))
        ));
    }

    #[test]
    fn default_must_be_in_every_menu() {
        let mut base = ChoiceRule::new();
        base.insert(menu(0b011), vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            DefaultChoiceRule::new(base, 2),
            Err(Error::DefaultMissing(_))
        ));
    }

    #[test]
    fn normalizing_a_default_free_rule_is_identity() {
        // Append a zero-probability default to an arbitrary rule; stripping
        // it recovers the original exactly.
        let mut plain = ChoiceRule::new();
        plain.insert(menu(0b011), vec![0.7, 0.3]).unwrap();
        plain.insert(menu(0b111), vec![0.2, 0.5, 0.3]).unwrap();
        let mut base = ChoiceRule::new();
        for m in plain.menus().collect::<Vec<_>>() {
            let starred = Menu::new(m.mask().union(Mask::singleton(3))).unwrap();
            let mut probs: Vec<f64> = m
                .iter()
                .map(|alt| plain.prob(alt, m).unwrap())
                .collect();
            probs.push(0.0);
            base.insert(starred, probs).unwrap();
        }
        let with_default = DefaultChoiceRule::new(base, 3).unwrap();
        let back = normalize_default(&with_default).unwrap();
        assert_eq!(back, plain);
    }
}

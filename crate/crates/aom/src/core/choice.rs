//! Choice rules: per-menu probability vectors, exact or estimated.

use std::collections::BTreeMap;

use crate::core::alphabet::Menu;
use crate::core::domain::Domain;
use crate::core::mask::Mask;
use crate::error::{Error, Result};

/// Tolerance for probability-vector validation of exact rules.
pub const PROB_TOL: f64 = 1e-12;

/// A choice rule: for each menu, a probability vector over its members
/// (indexed by member rank within the menu). Estimated rules additionally
/// carry per-menu effective sample sizes.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiceRule {
    probs: BTreeMap<Menu, Vec<f64>>,
    sizes: BTreeMap<Menu, u64>,
}

impl ChoiceRule {
    pub fn new() -> ChoiceRule {
        ChoiceRule {
            probs: BTreeMap::new(),
            sizes: BTreeMap::new(),
        }
    }

    /// Insert an exact per-menu probability vector; must sum to one.
    pub fn insert(&mut self, menu: Menu, probs: Vec<f64>) -> Result<()> {
        if probs.len() != menu.len() {
            return Err(Error::DimensionMismatch {
                expected: menu.len(),
                got: probs.len(),
            });
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_TOL || probs.iter().any(|p| !(0.0..=1.0 + PROB_TOL).contains(p))
        {
            return Err(Error::NotAProbability {
                menu: menu.mask().0,
                sum,
            });
        }
        self.probs.insert(menu, probs);
        Ok(())
    }

    /// Insert an estimated vector formed as count ratios with sample size `n`.
    pub fn insert_estimated(&mut self, menu: Menu, probs: Vec<f64>, n: u64) -> Result<()> {
        self.insert(menu, probs)?;
        self.sizes.insert(menu, n);
        Ok(())
    }

    pub fn domain(&self) -> Domain {
        Domain::new(self.probs.keys().copied())
    }

    pub fn menus(&self) -> impl Iterator<Item = Menu> + '_ {
        self.probs.keys().copied()
    }

    pub fn has_menu(&self, menu: Menu) -> bool {
        self.probs.contains_key(&menu)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Effective sample size for a menu, present only on estimated rules.
    pub fn sample_size(&self, menu: Menu) -> Option<u64> {
        self.sizes.get(&menu).copied()
    }

    pub fn probs_for(&self, menu: Menu) -> Result<&[f64]> {
        self.probs
            .get(&menu)
            .map(Vec::as_slice)
            .ok_or(Error::MenuMissing(menu.mask().0))
    }

    /// π(a|S); zero is implied for non-members of stored menus, but asking
    /// for a menu that was never observed is an error.
    pub fn prob(&self, alt: usize, menu: Menu) -> Result<f64> {
        let v = self.probs_for(menu)?;
        if !menu.contains(alt) {
            return Ok(0.0);
        }
        Ok(v[menu.mask().rank_of(alt)])
    }

    /// π(A|S) for an event A ⊆ S: the summed probability of its members.
    pub fn event_prob(&self, event: Mask, menu: Menu) -> Result<f64> {
        let v = self.probs_for(menu)?;
        let mut sum = 0.0;
        for alt in event.intersect(menu.mask()).iter() {
            sum += v[menu.mask().rank_of(alt)];
        }
        Ok(sum)
    }
}

impl Default for ChoiceRule {
    fn default() -> Self {
        ChoiceRule::new()
    }
}

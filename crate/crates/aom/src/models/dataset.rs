//! Choice datasets and the seeded synthetic sampler.

use std::collections::BTreeMap;

use rand::Rng;

use crate::core::alphabet::Menu;
use crate::core::choice::ChoiceRule;
use crate::error::{Error, Result};
use crate::rng::{self, tag};

/// A random sample of (choice problem, choice) observations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    observations: Vec<(Menu, usize)>,
}

impl Dataset {
    pub fn new(observations: Vec<(Menu, usize)>) -> Result<Dataset> {
        for &(menu, alt) in &observations {
            if !menu.contains(alt) {
                return Err(Error::AlternativeNotInMenu {
                    alt,
                    menu: menu.mask().0,
                });
            }
        }
        Ok(Dataset { observations })
    }

    pub fn observations(&self) -> &[(Menu, usize)] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Per-menu, per-member choice counts, keyed in canonical menu order.
    /// Count vectors are indexed by member rank within each menu.
    pub fn counts(&self) -> BTreeMap<Menu, Vec<u64>> {
        let mut counts: BTreeMap<Menu, Vec<u64>> = BTreeMap::new();
        for &(menu, alt) in &self.observations {
            let v = counts.entry(menu).or_insert_with(|| vec![0; menu.len()]);
            v[menu.mask().rank_of(alt)] += 1;
        }
        counts
    }

    /// Effective sample size per menu.
    pub fn menu_sizes(&self) -> BTreeMap<Menu, u64> {
        self.counts()
            .into_iter()
            .map(|(m, v)| (m, v.iter().sum()))
            .collect()
    }
}

/// Draw `sizes[S]` i.i.d. choices from π(·|S) for every menu. Each draw runs
/// on its own stream keyed by (seed, menu index, draw index), so menus can be
/// sampled in parallel with output identical to sequential sampling.
pub fn sample_dataset(
    pi: &ChoiceRule,
    sizes: &BTreeMap<Menu, u64>,
    seed: u64,
) -> Result<Dataset> {
    let mut observations = Vec::new();
    for (menu_idx, (&menu, &n)) in sizes.iter().enumerate() {
        if n == 0 {
            return Err(Error::SizeZero);
        }
        let probs = pi.probs_for(menu)?;
        let members: Vec<usize> = menu.iter().collect();
        // Cumulative distribution for inverse-CDF draws.
        let mut cdf = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in probs {
            acc += p;
            cdf.push(acc);
        }
        for draw_idx in 0..n {
            let mut stream = rng::stream(seed, &[tag::SAMPLE, menu_idx as u64, draw_idx]);
            let u: f64 = stream.random();
            let k = cdf.partition_point(|&c| c < u).min(members.len() - 1);
            observations.push((menu, members[k]));
        }
    }
    Dataset::new(observations)
}

//! Observed collections of choice problems.

use crate::core::alphabet::Menu;
use crate::core::mask::Mask;

/// The collection of menus available to the analyst. Duplicates collapse and
/// iteration order is ascending in the underlying bit pattern, which keeps
/// constraint indices reproducible across runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    menus: Vec<Menu>,
}

impl Domain {
    pub fn new<I: IntoIterator<Item = Menu>>(menus: I) -> Domain {
        let mut menus: Vec<Menu> = menus.into_iter().collect();
        menus.sort_unstable();
        menus.dedup();
        Domain { menus }
    }

    /// Every subset of `0..n` with at least `min_size` members.
    pub fn full(n: usize, min_size: usize) -> Domain {
        let universe = Mask::full(n);
        let menus = universe
            .nonempty_subsets()
            .filter(|s| s.len() >= min_size)
            .map(|s| Menu::new(s).expect("nonempty"))
            .collect();
        Domain { menus }
    }

    pub fn menus(&self) -> &[Menu] {
        &self.menus
    }

    pub fn len(&self) -> usize {
        self.menus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.menus.is_empty()
    }

    pub fn contains(&self, menu: Menu) -> bool {
        self.menus.binary_search(&menu).is_ok()
    }

    /// Position of a menu in the canonical ordering.
    pub fn index_of(&self, menu: Menu) -> Option<usize> {
        self.menus.binary_search(&menu).ok()
    }

    /// Menus in the domain that contain `menu` (including `menu` itself when
    /// present), ascending.
    pub fn supersets_of(&self, menu: Menu) -> Vec<Menu> {
        self.menus
            .iter()
            .copied()
            .filter(|m| menu.is_subset_of(*m))
            .collect()
    }

    /// Menus in the domain contained in `menu` that include `alt`, ascending.
    pub fn subsets_with(&self, menu: Menu, alt: usize) -> Vec<Menu> {
        self.menus
            .iter()
            .copied()
            .filter(|m| m.is_subset_of(menu) && m.contains(alt))
            .collect()
    }
}

/// All ordered pairs `(T, S)` with `T` a strict subset of `S`, both in the
/// domain. Deterministic order: by `S`, then by `T`, ascending bit patterns.
pub fn enumerate_nested_pairs(domain: &Domain) -> Vec<(Menu, Menu)> {
    let mut pairs = Vec::new();
    for &sup in domain.menus() {
        for &sub in domain.menus() {
            if sub.is_proper_subset_of(sup) {
                pairs.push((sub, sup));
            }
        }
    }
    pairs
}

//! Strict total orders over the alphabet and their upper contour sets.

use crate::core::alphabet::Menu;
use crate::core::mask::Mask;
use crate::error::{Error, Result};

/// Guard for exhaustive preference enumeration; 9! = 362,880 orders.
pub const MAX_ENUMERATION_ALTERNATIVES: usize = 9;

/// A strict total order over the alphabet, stored as a rank permutation.
/// Rank 0 is the most preferred alternative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Preference {
    rank: Vec<u8>,
}

impl Preference {
    /// Build from the sequence of alternatives in decreasing preference, e.g.
    /// `[2, 0, 1]` means alternative 2 is best.
    pub fn from_order(order: &[usize]) -> Result<Preference> {
        let n = order.len();
        let mut rank = vec![u8::MAX; n];
        for (r, &alt) in order.iter().enumerate() {
            if alt >= n || rank[alt] != u8::MAX {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: alt,
                });
            }
            rank[alt] = r as u8;
        }
        Ok(Preference { rank })
    }

    /// The identity order: alternative 0 best, then 1, 2, ...
    pub fn natural(n: usize) -> Preference {
        Preference {
            rank: (0..n as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    #[inline]
    pub fn rank_of(&self, alt: usize) -> usize {
        self.rank[alt] as usize
    }

    /// Does `a` beat `b`?
    #[inline]
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    /// Alternatives in decreasing preference.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0usize; self.rank.len()];
        for (alt, &r) in self.rank.iter().enumerate() {
            order[r as usize] = alt;
        }
        order
    }

    /// Best member of a nonempty set.
    pub fn best_in(&self, set: Mask) -> usize {
        debug_assert!(!set.is_empty());
        set.iter().min_by_key(|&a| self.rank[a]).unwrap()
    }

    /// Worst member of a nonempty set.
    pub fn worst_in(&self, set: Mask) -> usize {
        debug_assert!(!set.is_empty());
        set.iter().max_by_key(|&a| self.rank[a]).unwrap()
    }

    /// Upper contour of `alt` over the whole alphabet; weak includes `alt`.
    pub fn upper_contour_mask(&self, alt: usize, strict: bool) -> Mask {
        let mut m = Mask::EMPTY;
        let r = self.rank[alt];
        for (b, &rb) in self.rank.iter().enumerate() {
            if rb < r || (!strict && b == alt) {
                m.insert(b);
            }
        }
        m
    }
}

impl std::fmt::Debug for Preference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let order = self.order();
        for (i, alt) in order.iter().enumerate() {
            if i > 0 {
                write!(f, ">")?;
            }
            write!(f, "{alt}")?;
        }
        Ok(())
    }
}

/// Upper contour set of `alt` restricted to a menu. The strict version may be
/// empty (the menu's best element has no strict upper contour); the weak
/// version always contains `alt`.
pub fn upper_contour(pref: &Preference, alt: usize, menu: Menu, strict: bool) -> Result<Mask> {
    if !menu.contains(alt) {
        return Err(Error::AlternativeNotInMenu {
            alt,
            menu: menu.mask().0,
        });
    }
    Ok(pref.upper_contour_mask(alt, strict).intersect(menu.mask()))
}

/// Iterator over all strict total orders on `n` alternatives, in
/// lexicographic order of the preference sequence.
pub struct PreferenceIter {
    current: Option<Vec<usize>>,
}

impl Iterator for PreferenceIter {
    type Item = Preference;

    fn next(&mut self) -> Option<Preference> {
        let cur = self.current.as_mut()?;
        let pref = Preference::from_order(cur).expect("permutation is valid");
        if !next_permutation(cur) {
            self.current = None;
        }
        Some(pref)
    }
}

/// Every strict total order on an alphabet of size `n`, each exactly once.
pub fn all_preferences(n: usize) -> Result<PreferenceIter> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if n > MAX_ENUMERATION_ALTERNATIVES {
        return Err(Error::AlphabetTooLarge(n, MAX_ENUMERATION_ALTERNATIVES));
    }
    Ok(PreferenceIter {
        current: Some((0..n).collect()),
    })
}

/// In-place lexicographic successor; false once the sequence is the last one.
fn next_permutation(seq: &mut [usize]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumeration_counts_and_uniqueness() {
        for n in 1..=6usize {
            let seen: HashSet<Vec<u8>> = all_preferences(n)
                .unwrap()
                .map(|p| p.rank.clone())
                .collect();
            let factorial: usize = (1..=n).product();
            assert_eq!(seen.len(), factorial);
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let orders: Vec<Vec<usize>> = all_preferences(3).unwrap().map(|p| p.order()).collect();
        assert_eq!(
            orders,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
    }

    #[test]
    fn enumeration_guard() {
        assert!(all_preferences(10).is_err());
        assert!(all_preferences(9).is_ok());
    }

    #[test]
    fn upper_contour_weak_adds_self() {
        // b > c > d over alphabet {a=0, b=1, c=2, d=3}; pref ranks a last.
        let pref = Preference::from_order(&[1, 2, 3, 0]).unwrap();
        let menu = Menu::from_alts([1, 2, 3]).unwrap();
        let weak = upper_contour(&pref, 2, menu, false).unwrap();
        let strict = upper_contour(&pref, 2, menu, true).unwrap();
        assert_eq!(weak, Mask(0b0110)); // {b, c}
        assert_eq!(strict, Mask(0b0010)); // {b}
        assert_eq!(strict.union(Mask::singleton(2)), weak);
    }

    #[test]
    fn upper_contour_extremes() {
        let pref = Preference::natural(3);
        let menu = Menu::from_alts([0, 1, 2]).unwrap();
        assert_eq!(upper_contour(&pref, 0, menu, true).unwrap(), Mask::EMPTY);
        assert_eq!(upper_contour(&pref, 2, menu, false).unwrap(), menu.mask());
    }

    #[test]
    fn upper_contour_requires_membership() {
        let pref = Preference::natural(3);
        let menu = Menu::from_alts([0, 1]).unwrap();
        assert!(upper_contour(&pref, 2, menu, false).is_err());
    }
}

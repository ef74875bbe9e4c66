//! Alphabet of alternative labels and validated menus.

use std::collections::HashMap;

use crate::core::mask::{Mask, MAX_ALTERNATIVES};
use crate::error::{Error, Result};

/// The grand set of alternatives. Maps stable indices to text labels.
#[derive(Clone, Debug)]
pub struct Alphabet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if labels.len() > MAX_ALTERNATIVES {
            return Err(Error::AlphabetTooLarge(labels.len(), MAX_ALTERNATIVES));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Alphabet { labels, index })
    }

    /// Alphabet `a1, a2, ..., an`, the naming used by the simulation drivers.
    pub fn numbered(n: usize) -> Result<Alphabet> {
        Alphabet::new((1..=n).map(|i| format!("a{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, alt: usize) -> &str {
        &self.labels[alt]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Full mask over this alphabet.
    pub fn universe(&self) -> Mask {
        Mask::full(self.len())
    }

    /// Render a mask as labels joined by `;`, members in index order.
    pub fn render(&self, mask: Mask) -> String {
        let mut out = String::new();
        for (i, alt) in mask.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            out.push_str(self.label(alt));
        }
        out
    }
}

/// A nonempty choice problem: a validated set of alphabet indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Menu(Mask);

impl Menu {
    /// Wrap a mask, rejecting the empty set.
    pub fn new(mask: Mask) -> Result<Menu> {
        if mask.is_empty() {
            return Err(Error::EmptyMenu);
        }
        Ok(Menu(mask))
    }

    pub fn from_alts<I: IntoIterator<Item = usize>>(alts: I) -> Result<Menu> {
        let mut m = Mask::EMPTY;
        for a in alts {
            m.insert(a);
        }
        Menu::new(m)
    }

    #[inline]
    pub fn mask(self) -> Mask {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        false
    }

    #[inline]
    pub fn contains(self, alt: usize) -> bool {
        self.0.contains(alt)
    }

    #[inline]
    pub fn is_subset_of(self, other: Menu) -> bool {
        self.0.is_subset_of(other.0)
    }

    /// Strict inclusion.
    #[inline]
    pub fn is_proper_subset_of(self, other: Menu) -> bool {
        self != other && self.0.is_subset_of(other.0)
    }

    #[inline]
    pub fn iter(self) -> crate::core::mask::MaskIter {
        self.0.iter()
    }
}

impl std::fmt::Debug for Menu {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Canonicalize a label sequence into a menu: duplicates collapse, order is
/// irrelevant.
pub fn canonical_menu(labels: &[impl AsRef<str>], alphabet: &Alphabet) -> Result<Menu> {
    if labels.is_empty() {
        return Err(Error::EmptyMenu);
    }
    let mut mask = Mask::EMPTY;
    for l in labels {
        mask.insert(alphabet.index_of(l.as_ref())?);
    }
    Menu::new(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn canonical_menu_dedups_and_ignores_order() {
        let al = abc();
        let m = canonical_menu(&["b", "a", "a"], &al).unwrap();
        assert_eq!(m.mask(), Mask(0b011));
        assert_eq!(m, canonical_menu(&["a", "b"], &al).unwrap());
    }

    #[test]
    fn canonical_menu_singleton() {
        let al = abc();
        let m = canonical_menu(&["a"], &al).unwrap();
        assert_eq!(m.mask(), Mask(0b001));
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn canonical_menu_rejects_unknown_label() {
        let al = abc();
        assert!(matches!(
            canonical_menu(&["z"], &al),
            Err(Error::UnknownLabel(l)) if l == "z"
        ));
    }

    #[test]
    fn canonical_menu_rejects_empty() {
        let al = abc();
        let none: [&str; 0] = [];
        assert!(matches!(canonical_menu(&none, &al), Err(Error::EmptyMenu)));
    }

    #[test]
    fn alphabet_rejects_duplicates_and_oversize() {
        assert!(matches!(
            Alphabet::new(["a", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            Alphabet::numbered(64),
            Err(Error::AlphabetTooLarge(64, 63))
        ));
        assert!(Alphabet::numbered(63).is_ok());
    }

    #[test]
    fn render_roundtrip() {
        let al = abc();
        let m = canonical_menu(&["c", "a"], &al).unwrap();
        assert_eq!(al.render(m.mask()), "a;c");
    }
}

//! Bitset over alternative indices.
//!
//! The alphabet is capped at 63 alternatives so every subset of the grand set
//! fits in one machine word; subset enumeration is the hot path everywhere.

/// Maximum number of alternatives in an alphabet.
pub const MAX_ALTERNATIVES: usize = 63;

/// A possibly-empty set of alternative indices, one bit per alternative.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mask(pub u64);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    #[inline]
    pub fn singleton(alt: usize) -> Mask {
        Mask(1u64 << alt)
    }

    /// All indices `0..n`.
    #[inline]
    pub fn full(n: usize) -> Mask {
        debug_assert!(n <= MAX_ALTERNATIVES);
        if n == 0 {
            Mask(0)
        } else {
            Mask(u64::MAX >> (64 - n))
        }
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, alt: usize) -> bool {
        self.0 >> alt & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    #[inline]
    pub fn intersect(self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    #[inline]
    pub fn insert(&mut self, alt: usize) {
        self.0 |= 1u64 << alt;
    }

    /// Iterate member indices in ascending order.
    #[inline]
    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }

    /// Iterate every nonempty subset of `self` in ascending bit-pattern order.
    pub fn nonempty_subsets(self) -> SubsetIter {
        SubsetIter {
            universe: self.0,
            next: 0,
            done: self.0 == 0,
        }
    }

    /// Position of `alt` among the members of `self` (0-based), assuming
    /// membership. Used to index per-menu dense vectors.
    #[inline]
    pub fn rank_of(self, alt: usize) -> usize {
        debug_assert!(self.contains(alt));
        (self.0 & ((1u64 << alt) - 1)).count_ones() as usize
    }
}

impl std::fmt::Debug for Mask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, alt) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{alt}")?;
        }
        write!(f, "}}")
    }
}

pub struct MaskIter(u64);

impl Iterator for MaskIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let alt = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(alt)
        }
    }
}

/// Enumerates nonempty submasks of a universe via the standard
/// `(next - universe) & universe` carry trick.
pub struct SubsetIter {
    universe: u64,
    next: u64,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        loop {
            self.next = self.next.wrapping_sub(self.universe) & self.universe;
            if self.next == 0 {
                self.done = true;
                return None;
            }
            return Some(Mask(self.next));
        }
    }
}

//! Bitmask subsets of a ground set `{0, 1, ..., n-1}` with `n <= 32`.

use alloc::vec::Vec;
use core::fmt;

/// A subset of at most 32 dense integer indices, stored as a bitmask.
///
/// Iteration is always in ascending index order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

pub const MAX_GROUND: usize = 32;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Builds directly from a bitmask.
    pub const fn from_bits(bits: u32) -> Subset {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(e: usize) -> Subset {
        debug_assert!(e < MAX_GROUND);
        Subset(1 << e)
    }

    /// The full ground set `{0, ..., n-1}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, e: usize) -> bool {
        e < MAX_GROUND && self.0 & (1 << e) != 0
    }

    #[must_use]
    pub fn with(self, e: usize) -> Subset {
        debug_assert!(e < MAX_GROUND);
        Subset(self.0 | (1 << e))
    }

    #[must_use]
    pub fn without(self, e: usize) -> Subset {
        debug_assert!(e < MAX_GROUND);
        Subset(self.0 & !(1 << e))
    }

    pub const fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub const fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    /// Set difference `self \ other`.
    pub const fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `{0, ..., n-1}` in ascending bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        debug_assert!(n <= MAX_GROUND);
        let count: u64 = 1u64 << n;
        (0..count).map(|bits| Subset(bits as u32))
    }

    /// All `k`-element subsets of `self`, ordered lexicographically by their
    /// ascending element lists.
    pub fn k_subsets(self, k: usize) -> Vec<Subset> {
        let elems = self.indices();
        let mut out = Vec::new();
        if k > elems.len() {
            return out;
        }
        fn rec(elems: &[usize], k: usize, start: usize, cur: Subset, out: &mut Vec<Subset>) {
            if cur.len() == k {
                out.push(cur);
                return;
            }
            let need = k - cur.len();
            for i in start..=elems.len().saturating_sub(need) {
                rec(elems, k, i + 1, cur.with(elems[i]), out);
            }
        }
        rec(&elems, k, 0, Subset::EMPTY, &mut out);
        out
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Subset {
        let mut s = Subset::EMPTY;
        for e in iter {
            s = s.with(e);
        }
        s
    }
}

pub struct Iter(u32);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let e = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(e)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_ascends() {
        let s: Subset = [4, 1, 7].into_iter().collect();
        assert_eq!(s.indices(), vec![1, 4, 7]);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn set_algebra() {
        let a = Subset::from_bits(0b1011);
        let b = Subset::from_bits(0b0110);
        assert_eq!(a.union(b).bits(), 0b1111);
        assert_eq!(a.intersect(b).bits(), 0b0010);
        assert_eq!(a.minus(b).bits(), 0b1001);
        assert!(a.intersect(b).is_subset_of(a));
        assert!(!a.is_disjoint(b));
        assert!(a.minus(b).is_disjoint(b));
    }

    #[test]
    fn full_and_all() {
        assert_eq!(Subset::full(0), Subset::EMPTY);
        assert_eq!(Subset::full(3).bits(), 0b111);
        assert_eq!(Subset::full(32).bits(), u32::MAX);
        assert_eq!(Subset::all(3).count(), 8);
        let subs: Vec<u32> = Subset::all(2).map(Subset::bits).collect();
        assert_eq!(subs, vec![0b00, 0b01, 0b10, 0b11]);
    }

    #[test]
    fn k_subsets_enumerates_combinations() {
        let s = Subset::from_bits(0b10111);
        let pairs = s.k_subsets(2);
        assert_eq!(pairs.len(), 6);
        for p in &pairs {
            assert_eq!(p.len(), 2);
            assert!(p.is_subset_of(s));
        }
        assert_eq!(s.k_subsets(0), vec![Subset::EMPTY]);
        assert!(s.k_subsets(5).is_empty());
        assert_eq!(s.k_subsets(4).len(), 1);
    }

    #[test]
    fn debug_formatting() {
        let s: Subset = [0, 2, 5].into_iter().collect();
        assert_eq!(alloc::format!("{s:?}"), "{0, 2, 5}");
        assert_eq!(alloc::format!("{}", Subset::EMPTY), "{}");
    }
}

use std::fmt;

/// A subset of the face label set `[0..m)`, stored as a bitmask.
///
/// Face subsets index the multigraded pieces of the cohomology of the
/// moment-angle manifold, so they are created and consumed in bulk; the
/// representation is a bare `u32` (all supported polytopes have m ≤ 32).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OmegaSubset(pub u32);

impl OmegaSubset {
    pub const EMPTY: OmegaSubset = OmegaSubset(0);

    pub fn full(m: usize) -> Self {
        debug_assert!(m <= 32);
        if m == 32 {
            OmegaSubset(u32::MAX)
        } else {
            OmegaSubset((1u32 << m) - 1)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut mask = 0u32;
        for i in iter {
            debug_assert!(i < 32);
            mask |= 1 << i;
        }
        OmegaSubset(mask)
    }

    pub fn pair(i: usize, j: usize) -> Self {
        OmegaSubset((1 << i) | (1 << j))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        OmegaSubset(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        OmegaSubset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        OmegaSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        OmegaSubset(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, m: usize) -> Self {
        OmegaSubset(Self::full(m).0 & !self.0)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let i = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `[0..m)`, in increasing bitmask order.
    pub fn all(m: usize) -> impl Iterator<Item = OmegaSubset> {
        (0..=Self::full(m).0).map(OmegaSubset)
    }

    /// All subsets of this set, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = OmegaSubset> {
        let full = self.0;
        let mut cur = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = OmegaSubset(cur);
            if cur == full {
                done = true;
            } else {
                cur = (cur.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }
}

impl fmt::Debug for OmegaSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_basics() {
        let s = OmegaSubset::from_iter([1, 4, 7]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(4));
        assert!(!s.contains(0));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 4, 7]);
        assert_eq!(s.complement(8).iter().collect::<Vec<_>>(), vec![0, 2, 3, 5, 6]);
    }

    #[test]
    fn subsets_enumeration_covers_power_set() {
        let s = OmegaSubset::from_iter([0, 2, 5]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(subs.iter().collect::<std::collections::BTreeSet<_>>().len(), 8);
    }

    #[test]
    fn all_subsets_count() {
        assert_eq!(OmegaSubset::all(5).count(), 32);
    }
}

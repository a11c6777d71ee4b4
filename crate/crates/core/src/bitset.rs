//! Fixed-width vertex sets.
//!
//! A [`VertexSet`] is a 256-bit set stored as two `u128` words. Graphs in
//! this crate keep one `VertexSet` per vertex (its open neighbourhood), so
//! every adjacency query, degree count, and induced-subgraph restriction is
//! a handful of word operations. The width is fixed rather than generic:
//! every exact search in the crate runs on at most 16 vertices, and the
//! largest explicit construction we ever build (the odd-star family at
//! s = 7) has 157 vertices, so 256 bits covers everything with headroom.

/// Maximum number of vertices supported by [`VertexSet`] and by `Graph`.
pub const MAX_ORDER: usize = 256;

/// A set of vertex indices in `0..MAX_ORDER`, stored as two 128-bit words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet {
    w: [u128; 2],
}

impl VertexSet {
    /// The empty set.
    #[inline]
    pub const fn empty() -> Self {
        VertexSet { w: [0, 0] }
    }

    /// The set `{0, 1, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        let lo = if n >= 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        let hi = if n <= 128 {
            0
        } else if n == 256 {
            u128::MAX
        } else {
            (1u128 << (n - 128)) - 1
        };
        VertexSet { w: [lo, hi] }
    }

    /// The singleton `{v}`.
    #[inline]
    pub fn singleton(v: usize) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    /// The set whose members are the set bits of `bits` (vertices < 128).
    #[inline]
    pub(crate) const fn from_low_bits(bits: u128) -> Self {
        VertexSet { w: [bits, 0] }
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_ORDER);
        self.w[v >> 7] |= 1u128 << (v & 127);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_ORDER);
        self.w[v >> 7] &= !(1u128 << (v & 127));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < MAX_ORDER);
        (self.w[v >> 7] >> (v & 127)) & 1 == 1
    }

    /// Number of elements.
    #[inline]
    pub fn count(&self) -> usize {
        (self.w[0].count_ones() + self.w[1].count_ones()) as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.w[0] == 0 && self.w[1] == 0
    }

    #[inline]
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            w: [self.w[0] | other.w[0], self.w[1] | other.w[1]],
        }
    }

    #[inline]
    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            w: [self.w[0] & other.w[0], self.w[1] & other.w[1]],
        }
    }

    /// Set difference `self \ other`.
    #[inline]
    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            w: [self.w[0] & !other.w[0], self.w[1] & !other.w[1]],
        }
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        if self.w[0] != 0 {
            Some(self.w[0].trailing_zeros() as usize)
        } else if self.w[1] != 0 {
            Some(128 + self.w[1].trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// Iterate elements in increasing order.
    #[inline]
    pub fn iter(&self) -> VertexSetIter {
        VertexSetIter { w: self.w }
    }

    /// Intersection size with `other`, without materialising the set.
    #[inline]
    pub fn count_intersect(&self, other: &VertexSet) -> usize {
        ((self.w[0] & other.w[0]).count_ones() + (self.w[1] & other.w[1]).count_ones()) as usize
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub struct VertexSetIter {
    w: [u128; 2],
}

impl Iterator for VertexSetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.w[0] != 0 {
            let v = self.w[0].trailing_zeros() as usize;
            self.w[0] &= self.w[0] - 1;
            Some(v)
        } else if self.w[1] != 0 {
            let v = self.w[1].trailing_zeros() as usize;
            self.w[1] &= self.w[1] - 1;
            Some(128 + v)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = VertexSet::empty();
        assert!(s.is_empty());
        for v in [0, 1, 63, 64, 127, 128, 200, 255] {
            s.insert(v);
            assert!(s.contains(v));
        }
        assert_eq!(s.count(), 8);
        s.remove(128);
        assert!(!s.contains(128));
        assert_eq!(s.count(), 7);
        // Double-remove is a no-op.
        s.remove(128);
        assert_eq!(s.count(), 7);
    }

    #[test]
    fn full_boundaries() {
        assert_eq!(VertexSet::full(0).count(), 0);
        assert_eq!(VertexSet::full(1).count(), 1);
        assert_eq!(VertexSet::full(127).count(), 127);
        assert_eq!(VertexSet::full(128).count(), 128);
        assert_eq!(VertexSet::full(129).count(), 129);
        assert_eq!(VertexSet::full(256).count(), 256);
        assert!(VertexSet::full(157).contains(156));
        assert!(!VertexSet::full(157).contains(157));
    }

    #[test]
    fn iteration_is_sorted_across_word_boundary() {
        let s: VertexSet = [200usize, 3, 127, 128, 64].into_iter().collect();
        let got: Vec<usize> = s.iter().collect();
        assert_eq!(got, vec![3, 64, 127, 128, 200]);
        assert_eq!(s.first(), Some(3));
    }

    #[test]
    fn set_algebra() {
        let a: VertexSet = [1usize, 2, 3, 130].into_iter().collect();
        let b: VertexSet = [2usize, 130, 140].into_iter().collect();
        assert_eq!(a.intersect(&b).iter().collect::<Vec<_>>(), vec![2, 130]);
        assert_eq!(a.minus(&b).iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(a.union(&b).count(), 5);
        assert_eq!(a.count_intersect(&b), 2);
    }
}

use std::fmt;

/// A subset of the simple reflections, stored as a bitmask over 0-based
/// simple-root indices.
///
/// Displayed (and parsed from user input) with 1-based indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSet(u64);

impl SimpleSet {
    pub const MAX_RANK: usize = 64;

    pub const fn empty() -> Self {
        SimpleSet(0)
    }

    /// All simple reflections of a rank-`rank` system.
    pub fn full(rank: usize) -> Self {
        assert!(rank <= Self::MAX_RANK);
        if rank == 64 {
            SimpleSet(u64::MAX)
        } else {
            SimpleSet((1u64 << rank) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        SimpleSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            assert!(i < Self::MAX_RANK, "simple index {i} out of range");
            bits |= 1 << i;
        }
        SimpleSet(bits)
    }

    pub fn contains(self, i: usize) -> bool {
        i < Self::MAX_RANK && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        SimpleSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SimpleSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SimpleSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// 0-based indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..Self::MAX_RANK).filter(move |&i| bits & (1 << i) != 0)
    }

    /// Image under a map of simple indices.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_indices(self.iter().map(f))
    }

    /// 1-based indices, the form used in configs and output.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for SimpleSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

use std::fmt;

/// A subset of a fixed atom universe `{0, .., n-1}`, stored as a bit vector.
///
/// Sets built for the same universe always carry the same number of words,
/// so derived equality and hashing are set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AtomSet {
    words: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl AtomSet {
    pub fn empty(n: usize) -> Self {
        AtomSet {
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let remaining = n - i * 64;
            *w = if remaining >= 64 {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in indices {
            assert!(i < n, "atom index {i} outside universe of size {n}");
            s.insert(i);
        }
        s
    }

    /// Set whose members are the positions of the one-bits of `bits`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(
            n >= 64 || bits >> n == 0,
            "bits outside universe of size {n}"
        );
        let mut s = Self::empty(n);
        if !s.words.is_empty() {
            s.words[0] = bits;
        }
        s
    }

    /// True when this set is a well-formed subset of `{0, .., n-1}`.
    pub fn fits(&self, n: usize) -> bool {
        if self.words.len() != words_for(n) {
            return false;
        }
        match self.words.last() {
            Some(&last) if !n.is_multiple_of(64) => last >> (n % 64) == 0,
            _ => true,
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        self.zip_with(other, |a, b| a & !b)
    }

    fn zip_with(&self, other: &AtomSet, f: impl Fn(u64, u64) -> u64) -> AtomSet {
        debug_assert_eq!(self.words.len(), other.words.len());
        AtomSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// Advances to the next subset of `free` in binary-counting order,
    /// toggling only positions from `free` (listed in increasing order).
    /// Returns false after the last subset, leaving `self` with every free
    /// position cleared.
    pub(crate) fn advance(&mut self, free: &[usize]) -> bool {
        for &i in free {
            if self.contains(i) {
                self.remove(i);
            } else {
                self.insert(i);
                return true;
            }
        }
        false
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

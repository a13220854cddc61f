use super::{AtomSet, Lattice};
use crate::error::{Error, Result};

/// Subsets of an ordered atom universe, ordered by inclusion.
///
/// Elements are enumerated by binary counting over the atom order, so the
/// element with index `i` contains atom `j` iff bit `j` of `i` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowersetLattice {
    atoms: Vec<String>,
}

impl PowersetLattice {
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Self {
        PowersetLattice {
            atoms: atoms.into_iter().map(Into::into).collect(),
        }
    }

    /// Powerset over anonymous atoms `0..n`.
    pub fn with_size(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("a{i}")))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// The subset consisting of the named atoms.
    pub fn set_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<AtomSet> {
        let mut s = AtomSet::empty(self.len());
        for name in names {
            let i = self
                .atoms
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| Error::Domain(format!("unknown atom `{name}`")))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn names_of(&self, set: &AtomSet) -> Vec<String> {
        set.iter().map(|i| self.atoms[i].clone()).collect()
    }
}

impl Lattice for PowersetLattice {
    type Elem = AtomSet;

    fn contains(&self, x: &AtomSet) -> bool {
        x.fits(self.len())
    }

    fn le(&self, x: &AtomSet, y: &AtomSet) -> bool {
        x.is_subset(y)
    }

    fn meet(&self, x: &AtomSet, y: &AtomSet) -> AtomSet {
        x.intersection(y)
    }

    fn join(&self, x: &AtomSet, y: &AtomSet) -> AtomSet {
        x.union(y)
    }

    fn bottom(&self) -> AtomSet {
        AtomSet::empty(self.len())
    }

    fn top(&self) -> AtomSet {
        AtomSet::full(self.len())
    }

    fn cardinality(&self) -> u128 {
        1u128.checked_shl(self.len() as u32).unwrap_or(u128::MAX)
    }

    fn consistent_pair_count(&self) -> u128 {
        (0..self.len()).fold(1u128, |acc, _| acc.saturating_mul(3))
    }

    fn elements(&self) -> Box<dyn Iterator<Item = AtomSet> + '_> {
        self.interval_iter(&self.bottom(), &self.top())
    }

    fn interval_iter<'a>(
        &'a self,
        x: &AtomSet,
        y: &AtomSet,
    ) -> Box<dyn Iterator<Item = AtomSet> + 'a> {
        let free: Vec<usize> = y.difference(x).iter().collect();
        let mut current = Some(x.clone());
        Box::new(std::iter::from_fn(move || {
            let out = current.take()?;
            let mut next = out.clone();
            if next.advance(&free) {
                current = Some(next);
            }
            Some(out)
        }))
    }
}

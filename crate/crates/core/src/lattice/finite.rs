use std::fmt;

use super::Lattice;
use crate::error::{Error, Result};

/// Largest carrier for which meet/join tables are precomputed.
pub const MAX_TABLE_SIZE: usize = 1 << 10;

/// Handle of an element of a [`FiniteLattice`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl fmt::Debug for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite lattice given by an explicit order relation on `0..n`.
#[derive(Clone)]
pub struct FiniteLattice {
    n: usize,
    order: Vec<bool>,
    meets: Vec<u32>,
    joins: Vec<u32>,
    bottom: u32,
    top: u32,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("size", &self.n)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .finish()
    }
}

impl FiniteLattice {
    /// Builds a lattice from an order relation, verifying that it is a
    /// partial order in which every pair has a meet and a join.
    pub fn from_order(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a lattice needs at least one element".into()));
        }
        if n > MAX_TABLE_SIZE {
            return Err(Error::resource(
                "explicit lattice elements",
                MAX_TABLE_SIZE as u128,
                n as u128,
            ));
        }
        let mut order = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                order[i * n + j] = le(i, j);
            }
        }
        let rel = |i: usize, j: usize| order[i * n + j];
        for i in 0..n {
            if !rel(i, i) {
                return Err(Error::Domain(format!("order is not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && rel(i, j) && rel(j, i) {
                    return Err(Error::Domain(format!(
                        "order is not antisymmetric at ({i}, {j})"
                    )));
                }
                for k in 0..n {
                    if rel(i, j) && rel(j, k) && !rel(i, k) {
                        return Err(Error::Domain(format!(
                            "order is not transitive at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }

        let mut meets = vec![0u32; n * n];
        let mut joins = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let m = extremal(n, |z| rel(z, i) && rel(z, j), rel).ok_or_else(|| {
                    Error::Domain(format!("elements {i} and {j} have no greatest lower bound"))
                })?;
                let u =
                    extremal(n, |z| rel(i, z) && rel(j, z), |a, b| rel(b, a)).ok_or_else(|| {
                        Error::Domain(format!("elements {i} and {j} have no least upper bound"))
                    })?;
                meets[i * n + j] = m as u32;
                meets[j * n + i] = m as u32;
                joins[i * n + j] = u as u32;
                joins[j * n + i] = u as u32;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| rel(b, x)))
            .ok_or_else(|| Error::Domain("order has no bottom element".into()))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| rel(x, t)))
            .ok_or_else(|| Error::Domain("order has no top element".into()))?;
        Ok(FiniteLattice {
            n,
            order,
            meets,
            joins,
            bottom: bottom as u32,
            top: top as u32,
        })
    }

    /// The chain `0 < 1 < .. < len-1`.
    pub fn chain(len: usize) -> Result<Self> {
        Self::from_order(len, |i, j| i <= j)
    }

    /// `{bottom, a, b, top}` with `a` and `b` incomparable; indices 0..4 in that order.
    pub fn diamond() -> Self {
        Self::from_order(4, |i, j| i == j || i == 0 || j == 3).expect("diamond is a lattice")
    }

    /// The lattice of a family of subsets (as bitmasks) ordered by inclusion.
    /// The family must be closed under intersection and contain a largest set.
    pub fn from_set_family(sets: &[u64]) -> Result<Self> {
        Self::from_order(sets.len(), |i, j| sets[i] & !sets[j] == 0)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, i: usize) -> Result<ElemId> {
        if i < self.n {
            Ok(ElemId(i as u32))
        } else {
            Err(Error::Domain(format!("no element with index {i}")))
        }
    }

    fn idx(&self, x: &ElemId, y: &ElemId) -> usize {
        x.0 as usize * self.n + y.0 as usize
    }
}

/// The element satisfying `member` that dominates every other member under `below`.
fn extremal(
    n: usize,
    member: impl Fn(usize) -> bool,
    below: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let members: Vec<usize> = (0..n).filter(|&z| member(z)).collect();
    members
        .iter()
        .copied()
        .find(|&g| members.iter().all(|&z| below(z, g)))
}

impl Lattice for FiniteLattice {
    type Elem = ElemId;

    fn contains(&self, x: &ElemId) -> bool {
        (x.0 as usize) < self.n
    }

    fn le(&self, x: &ElemId, y: &ElemId) -> bool {
        self.order[self.idx(x, y)]
    }

    fn meet(&self, x: &ElemId, y: &ElemId) -> ElemId {
        ElemId(self.meets[self.idx(x, y)])
    }

    fn join(&self, x: &ElemId, y: &ElemId) -> ElemId {
        ElemId(self.joins[self.idx(x, y)])
    }

    fn bottom(&self) -> ElemId {
        ElemId(self.bottom)
    }

    fn top(&self) -> ElemId {
        ElemId(self.top)
    }

    fn cardinality(&self) -> u128 {
        self.n as u128
    }

    fn consistent_pair_count(&self) -> u128 {
        self.order.iter().filter(|&&b| b).count() as u128
    }

    fn elements(&self) -> Box<dyn Iterator<Item = ElemId> + '_> {
        Box::new((0..self.n as u32).map(ElemId))
    }

    fn interval_iter<'a>(
        &'a self,
        x: &ElemId,
        y: &ElemId,
    ) -> Box<dyn Iterator<Item = ElemId> + 'a> {
        let (x, y) = (*x, *y);
        Box::new(
            self.elements()
                .filter(move |z| self.le(&x, z) && self.le(z, &y)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_lattices() {
        // Two incomparable maximal elements and no top.
        assert!(FiniteLattice::from_order(3, |i, j| i == j || i == 0).is_err());
        // Not antisymmetric.
        assert!(FiniteLattice::from_order(2, |_, _| true).is_err());
        // "Bowtie": a, b both below c and d; no join of a and b.
        let bowtie = |i: usize, j: usize| {
            i == j || i == 0 || j == 5 || (matches!(i, 1 | 2) && matches!(j, 3 | 4))
        };
        assert!(FiniteLattice::from_order(6, bowtie).is_err());
        assert!(FiniteLattice::from_order(0, |_, _| true).is_err());
    }

    #[test]
    fn diamond_tables() {
        let d = FiniteLattice::diamond();
        assert_eq!(d.meet(&ElemId(1), &ElemId(2)), ElemId(0));
        assert_eq!(d.join(&ElemId(1), &ElemId(2)), ElemId(3));
        assert_eq!(d.meet(&ElemId(1), &ElemId(3)), ElemId(1));
        assert_eq!(d.consistent_pair_count(), 9);
    }

    #[test]
    fn pentagon_is_a_lattice() {
        // N5: 0 < a(1) < b(2) < 1(4), 0 < c(3) < 1.
        let up = |i: usize, j: usize| i == j || i == 0 || j == 4 || (i == 1 && j == 2);
        let n5 = FiniteLattice::from_order(5, up).unwrap();
        assert_eq!(n5.join(&ElemId(1), &ElemId(3)), ElemId(4));
        assert_eq!(n5.meet(&ElemId(2), &ElemId(3)), ElemId(0));
    }

    #[test]
    fn set_family_lattice() {
        // Closure system on {0,1,2}: {}, {0}, {1}, {0,1,2}.
        let lat = FiniteLattice::from_set_family(&[0b000, 0b001, 0b010, 0b111]).unwrap();
        assert_eq!(lat.join(&ElemId(1), &ElemId(2)), ElemId(3));
        assert_eq!(lat.bottom(), ElemId(0));
    }
}

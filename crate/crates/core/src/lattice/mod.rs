//! Finite complete lattices and least fixpoints of monotone operators.
//!
//! Two carriers are provided: [`FiniteLattice`], an explicit order relation
//! with precomputed meet/join tables, and [`PowersetLattice`], the lattice of
//! subsets of a fixed atom universe. Both enumerate their elements in a
//! deterministic index order.

mod atomset;
mod finite;
mod powerset;

pub use atomset::AtomSet;
pub use finite::{ElemId, FiniteLattice, MAX_TABLE_SIZE};
pub use powerset::PowersetLattice;

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite complete lattice.
///
/// The `*_unchecked` style methods (`le`, `meet`, `join`, `interval_iter`)
/// assume their arguments belong to the carrier. The provided methods
/// (`leq`, `glb`, `lub`, `interval`) validate membership first.
pub trait Lattice {
    type Elem: Clone + Eq + Hash + Debug;

    fn contains(&self, x: &Self::Elem) -> bool;
    fn le(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;

    /// Number of carrier elements, saturating at `u128::MAX`.
    fn cardinality(&self) -> u128;

    /// Number of pairs `(x, y)` with `x <= y`, saturating.
    fn consistent_pair_count(&self) -> u128;

    /// All carrier elements in index order.
    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_>;

    /// Elements `z` with `x <= z <= y`, in index order. Assumes `x <= y`.
    fn interval_iter<'a>(
        &'a self,
        x: &Self::Elem,
        y: &Self::Elem,
    ) -> Box<dyn Iterator<Item = Self::Elem> + 'a>;

    fn check(&self, x: &Self::Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{x:?} is not an element of this lattice"
            )))
        }
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.le(x, y))
    }

    /// Greatest lower bound of a finite set; the empty set yields top.
    fn glb<'e, I>(&self, set: I) -> Result<Self::Elem>
    where
        I: IntoIterator<Item = &'e Self::Elem>,
        Self::Elem: 'e,
    {
        let mut acc = self.top();
        for x in set {
            self.check(x)?;
            acc = self.meet(&acc, x);
        }
        Ok(acc)
    }

    /// Least upper bound of a finite set; the empty set yields bottom.
    fn lub<'e, I>(&self, set: I) -> Result<Self::Elem>
    where
        I: IntoIterator<Item = &'e Self::Elem>,
        Self::Elem: 'e,
    {
        let mut acc = self.bottom();
        for x in set {
            self.check(x)?;
            acc = self.join(&acc, x);
        }
        Ok(acc)
    }

    fn interval<'a>(
        &'a self,
        x: &Self::Elem,
        y: &Self::Elem,
    ) -> Result<Box<dyn Iterator<Item = Self::Elem> + 'a>> {
        if !self.leq(x, y)? {
            return Err(Error::EmptyInterval);
        }
        Ok(self.interval_iter(x, y))
    }
}

/// A total unary operator on a lattice carrier.
pub trait LatticeOperator<E> {
    fn apply(&self, x: &E) -> E;
}

impl<E, F: Fn(&E) -> E> LatticeOperator<E> for F {
    fn apply(&self, x: &E) -> E {
        self(x)
    }
}

/// Least fixpoint of a monotone operator on `[floor, top]`, by Kleene
/// iteration from `floor`.
pub fn lfp_monotone<L, O>(lat: &L, op: &O, floor: &L::Elem) -> Result<L::Elem>
where
    L: Lattice,
    O: LatticeOperator<L::Elem> + ?Sized,
{
    lat.check(floor)?;
    let top = lat.top();
    lfp_within(lat, floor, &top, |x| Ok(op.apply(x)))
}

/// Kleene iteration of a fallible step function inside `[floor, ceiling]`.
///
/// Every iterate must stay inside the interval and be at least its
/// predecessor; otherwise the step function is not a monotone operator on
/// the interval and a [`Error::MonotonicityViolation`] is returned.
pub(crate) fn lfp_within<L, F>(
    lat: &L,
    floor: &L::Elem,
    ceiling: &L::Elem,
    mut step: F,
) -> Result<L::Elem>
where
    L: Lattice,
    F: FnMut(&L::Elem) -> Result<L::Elem>,
{
    let bound = lat.cardinality();
    let mut current = floor.clone();
    let mut steps: u128 = 0;
    loop {
        let next = step(&current)?;
        if !lat.contains(&next) {
            return Err(Error::MonotonicityViolation(format!(
                "iterate {next:?} is not a lattice element"
            )));
        }
        if !lat.le(floor, &next) || !lat.le(&next, ceiling) {
            return Err(Error::MonotonicityViolation(format!(
                "iterate {next:?} left the interval [{floor:?}, {ceiling:?}]"
            )));
        }
        if !lat.le(&current, &next) {
            return Err(Error::MonotonicityViolation(format!(
                "iteration decreased from {current:?} to {next:?}"
            )));
        }
        if next == current {
            return Ok(current);
        }
        current = next;
        steps += 1;
        if steps > bound {
            return Err(Error::Internal(
                "Kleene iteration exceeded the carrier size".into(),
            ));
        }
    }
}

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// A pair `(lower, upper)` with `lower <= upper`, read as bounds on an
/// unknown lattice element. Exact pairs have `lower == upper`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConsistentPair<E> {
    lower: E,
    upper: E,
}

impl<E: Clone> ConsistentPair<E> {
    pub fn new<L: Lattice<Elem = E>>(lat: &L, lower: E, upper: E) -> Result<Self> {
        if !lat.leq(&lower, &upper)? {
            return Err(Error::Inconsistent);
        }
        Ok(ConsistentPair { lower, upper })
    }

    pub(crate) fn new_unchecked(lower: E, upper: E) -> Self {
        ConsistentPair { lower, upper }
    }

    pub fn exact(x: E) -> Self {
        ConsistentPair {
            lower: x.clone(),
            upper: x,
        }
    }

    /// `(bottom, top)`, the least precise pair.
    pub fn least_precise<L: Lattice<Elem = E>>(lat: &L) -> Self {
        ConsistentPair {
            lower: lat.bottom(),
            upper: lat.top(),
        }
    }

    pub fn lower(&self) -> &E {
        &self.lower
    }

    pub fn upper(&self) -> &E {
        &self.upper
    }

    pub fn into_parts(self) -> (E, E) {
        (self.lower, self.upper)
    }
}

impl<E: PartialEq> ConsistentPair<E> {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Outcome of comparing two approximators pointwise in the precision order.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PrecisionVerdict {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl PrecisionVerdict {
    pub fn swapped(self) -> Self {
        match self {
            PrecisionVerdict::Less => PrecisionVerdict::Greater,
            PrecisionVerdict::Greater => PrecisionVerdict::Less,
            v => v,
        }
    }

    /// True for `Less` and `Equal`.
    pub fn is_at_most(self) -> bool {
        matches!(self, PrecisionVerdict::Less | PrecisionVerdict::Equal)
    }
}

fn check_pair<L: Lattice>(lat: &L, p: &ConsistentPair<L::Elem>) -> Result<()> {
    lat.check(&p.lower)?;
    lat.check(&p.upper)
}

/// Precision order: `p <=_p q` iff `q` has a higher lower bound and a lower upper bound.
pub fn prec_leq<L: Lattice>(
    lat: &L,
    p: &ConsistentPair<L::Elem>,
    q: &ConsistentPair<L::Elem>,
) -> Result<bool> {
    check_pair(lat, p)?;
    check_pair(lat, q)?;
    Ok(prec_le(lat, p, q))
}

pub(crate) fn prec_le<L: Lattice>(
    lat: &L,
    p: &ConsistentPair<L::Elem>,
    q: &ConsistentPair<L::Elem>,
) -> bool {
    lat.le(&p.lower, &q.lower) && lat.le(&q.upper, &p.upper)
}

/// Least upper bound of a `<=_p`-increasing chain: join of the lower bounds,
/// meet of the upper bounds. The empty chain yields `(bottom, top)`.
pub fn chain_lub<L: Lattice>(
    lat: &L,
    chain: &[ConsistentPair<L::Elem>],
) -> Result<ConsistentPair<L::Elem>> {
    for p in chain {
        check_pair(lat, p)?;
        if !lat.le(&p.lower, &p.upper) {
            return Err(Error::Inconsistent);
        }
    }
    for (i, w) in chain.windows(2).enumerate() {
        if !prec_le(lat, &w[0], &w[1]) {
            return Err(Error::Precondition(format!(
                "chain is not increasing at position {}",
                i + 1
            )));
        }
    }
    let lower = lat.lub(chain.iter().map(|p| &p.lower))?;
    let upper = lat.glb(chain.iter().map(|p| &p.upper))?;
    ConsistentPair::new(lat, lower, upper)
}

/// Every consistent pair of the lattice, ordered by lower bound then upper bound.
pub fn consistent_pairs<L: Lattice>(lat: &L) -> impl Iterator<Item = ConsistentPair<L::Elem>> + '_ {
    let top = lat.top();
    lat.elements().flat_map(move |x| {
        lat.interval_iter(&x, &top)
            .map(move |y| ConsistentPair::new_unchecked(x.clone(), y))
            .collect::<Vec<_>>()
    })
}

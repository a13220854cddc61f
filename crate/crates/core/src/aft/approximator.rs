use std::sync::atomic::{AtomicU64, Ordering};

use super::pair::{consistent_pairs, prec_le, ConsistentPair, PrecisionVerdict};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeOperator};

pub type Elem<A> = <<A as Approximator>::Lattice as Lattice>::Elem;
pub type Pair<A> = ConsistentPair<Elem<A>>;

/// A partial approximation operator on the consistent pairs of a lattice.
///
/// Implementations are trusted to be `<=_p`-monotone and to agree on exact
/// pairs; [`validate_approximator`] checks both exhaustively on small carriers.
pub trait Approximator {
    type Lattice: Lattice;

    fn lattice(&self) -> &Self::Lattice;

    /// First component `A¹`.
    fn lower(&self, pair: &Pair<Self>) -> Result<Elem<Self>>;

    /// Second component `A²`.
    fn upper(&self, pair: &Pair<Self>) -> Result<Elem<Self>>;

    fn apply(&self, pair: &Pair<Self>) -> Result<Pair<Self>> {
        let lo = self.lower(pair)?;
        let hi = self.upper(pair)?;
        consistent_result(self.lattice(), pair, lo, hi)
    }
}

pub(crate) fn consistent_result<L: Lattice>(
    lat: &L,
    input: &ConsistentPair<L::Elem>,
    lo: L::Elem,
    hi: L::Elem,
) -> Result<ConsistentPair<L::Elem>> {
    if !lat.contains(&lo) || !lat.contains(&hi) {
        return Err(Error::InvalidApproximator(format!(
            "value at {input:?} is outside the lattice"
        )));
    }
    if !lat.le(&lo, &hi) {
        return Err(Error::InvalidApproximator(format!(
            "maps {input:?} to the inconsistent pair ({lo:?}, {hi:?})"
        )));
    }
    Ok(ConsistentPair::new_unchecked(lo, hi))
}

impl<A: Approximator + ?Sized> Approximator for &A {
    type Lattice = A::Lattice;

    fn lattice(&self) -> &Self::Lattice {
        (**self).lattice()
    }
    fn lower(&self, pair: &Pair<Self>) -> Result<Elem<Self>> {
        (**self).lower(pair)
    }
    fn upper(&self, pair: &Pair<Self>) -> Result<Elem<Self>> {
        (**self).upper(pair)
    }
    fn apply(&self, pair: &Pair<Self>) -> Result<Pair<Self>> {
        (**self).apply(pair)
    }
}

/// Approximator given by two closures.
pub struct FnApproximator<L, F, G> {
    lattice: L,
    lower: F,
    upper: G,
}

impl<L, F, G> FnApproximator<L, F, G>
where
    L: Lattice,
    F: Fn(&ConsistentPair<L::Elem>) -> L::Elem,
    G: Fn(&ConsistentPair<L::Elem>) -> L::Elem,
{
    pub fn new(lattice: L, lower: F, upper: G) -> Self {
        FnApproximator {
            lattice,
            lower,
            upper,
        }
    }
}

impl<L, F, G> Approximator for FnApproximator<L, F, G>
where
    L: Lattice,
    F: Fn(&ConsistentPair<L::Elem>) -> L::Elem,
    G: Fn(&ConsistentPair<L::Elem>) -> L::Elem,
{
    type Lattice = L;

    fn lattice(&self) -> &L {
        &self.lattice
    }
    fn lower(&self, pair: &ConsistentPair<L::Elem>) -> Result<L::Elem> {
        Ok((self.lower)(pair))
    }
    fn upper(&self, pair: &ConsistentPair<L::Elem>) -> Result<L::Elem> {
        Ok((self.upper)(pair))
    }
}

/// The ultimate approximation `(x, y) -> (glb O([x,y]), lub O([x,y]))`,
/// evaluated by enumerating the interval.
pub struct Ultimate<'a, L, O: ?Sized> {
    lattice: &'a L,
    op: &'a O,
}

pub fn ultimate_of<'a, L, O>(lattice: &'a L, op: &'a O) -> Ultimate<'a, L, O>
where
    L: Lattice,
    O: LatticeOperator<L::Elem> + ?Sized,
{
    Ultimate { lattice, op }
}

impl<L, O> Approximator for Ultimate<'_, L, O>
where
    L: Lattice,
    O: LatticeOperator<L::Elem> + ?Sized,
{
    type Lattice = L;

    fn lattice(&self) -> &L {
        self.lattice
    }

    fn lower(&self, pair: &ConsistentPair<L::Elem>) -> Result<L::Elem> {
        let lat = self.lattice;
        Ok(lat
            .interval_iter(pair.lower(), pair.upper())
            .fold(lat.top(), |acc, z| lat.meet(&acc, &self.op.apply(&z))))
    }

    fn upper(&self, pair: &ConsistentPair<L::Elem>) -> Result<L::Elem> {
        let lat = self.lattice;
        Ok(lat
            .interval_iter(pair.lower(), pair.upper())
            .fold(lat.bottom(), |acc, z| lat.join(&acc, &self.op.apply(&z))))
    }

    fn apply(&self, pair: &ConsistentPair<L::Elem>) -> Result<ConsistentPair<L::Elem>> {
        let lat = self.lattice;
        let (mut lo, mut hi) = (lat.top(), lat.bottom());
        for z in lat.interval_iter(pair.lower(), pair.upper()) {
            let v = self.op.apply(&z);
            lo = lat.meet(&lo, &v);
            hi = lat.join(&hi, &v);
        }
        consistent_result(lat, pair, lo, hi)
    }
}

/// The least precise approximator of `O`: exact pairs map to `(O(x), O(x))`,
/// every other pair to `(bottom, top)`.
pub struct LeastPrecise<'a, L, O: ?Sized> {
    lattice: &'a L,
    op: &'a O,
}

pub fn least_precise_of<'a, L, O>(lattice: &'a L, op: &'a O) -> LeastPrecise<'a, L, O>
where
    L: Lattice,
    O: LatticeOperator<L::Elem> + ?Sized,
{
    LeastPrecise { lattice, op }
}

impl<L, O> Approximator for LeastPrecise<'_, L, O>
where
    L: Lattice,
    O: LatticeOperator<L::Elem> + ?Sized,
{
    type Lattice = L;

    fn lattice(&self) -> &L {
        self.lattice
    }
    fn lower(&self, pair: &ConsistentPair<L::Elem>) -> Result<L::Elem> {
        Ok(if pair.is_exact() {
            self.op.apply(pair.lower())
        } else {
            self.lattice.bottom()
        })
    }
    fn upper(&self, pair: &ConsistentPair<L::Elem>) -> Result<L::Elem> {
        Ok(if pair.is_exact() {
            self.op.apply(pair.upper())
        } else {
            self.lattice.top()
        })
    }
}

/// Wraps an approximator and counts evaluations of `apply`, `lower` and `upper`.
pub struct Counted<A> {
    inner: A,
    evaluations: AtomicU64,
}

impl<A> Counted<A> {
    pub fn new(inner: A) -> Self {
        Counted {
            inner,
            evaluations: AtomicU64::new(0),
        }
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &A {
        &self.inner
    }

    fn tick(&self) {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
    }
}

impl<A: Approximator> Approximator for Counted<A> {
    type Lattice = A::Lattice;

    fn lattice(&self) -> &Self::Lattice {
        self.inner.lattice()
    }
    fn lower(&self, pair: &Pair<Self>) -> Result<Elem<Self>> {
        self.tick();
        self.inner.lower(pair)
    }
    fn upper(&self, pair: &Pair<Self>) -> Result<Elem<Self>> {
        self.tick();
        self.inner.upper(pair)
    }
    fn apply(&self, pair: &Pair<Self>) -> Result<Pair<Self>> {
        self.tick();
        self.inner.apply(pair)
    }
}

fn sweep_guard<L: Lattice>(lat: &L, cap: u128) -> Result<()> {
    let needed = lat.consistent_pair_count();
    if needed > cap {
        return Err(Error::resource("consistent pairs", cap, needed));
    }
    Ok(())
}

/// Checks, over every consistent pair, that `a` maps consistent pairs to
/// consistent pairs, is `<=_p`-monotone and agrees on exact pairs.
///
/// The monotonicity check is quadratic in the number of consistent pairs.
pub fn validate_approximator<A: Approximator>(a: &A, cap: u128) -> Result<()> {
    let lat = a.lattice();
    sweep_guard(lat, cap)?;
    let pairs: Vec<_> = consistent_pairs(lat).collect();
    let mut images = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let lo = a.lower(p)?;
        let hi = a.upper(p)?;
        if !lat.contains(&lo) || !lat.contains(&hi) || !lat.le(&lo, &hi) {
            return Err(Error::InvalidApproximator(format!(
                "{p:?} is mapped to the inconsistent pair ({lo:?}, {hi:?})"
            )));
        }
        if p.is_exact() && lo != hi {
            return Err(Error::InvalidApproximator(format!(
                "exact pair {p:?} is mapped to the non-exact pair ({lo:?}, {hi:?})"
            )));
        }
        images.push(ConsistentPair::new_unchecked(lo, hi));
    }
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate() {
            if prec_le(lat, p, q) && !prec_le(lat, &images[i], &images[j]) {
                return Err(Error::InvalidApproximator(format!(
                    "not monotone: {p:?} <=_p {q:?} but their images are not ordered"
                )));
            }
        }
    }
    Ok(())
}

/// Pointwise comparison of two approximators over every consistent pair.
pub fn compare_precision<A, B>(a: &A, b: &B, cap: u128) -> Result<PrecisionVerdict>
where
    A: Approximator,
    B: Approximator<Lattice = A::Lattice>,
{
    let lat = a.lattice();
    sweep_guard(lat, cap)?;
    let (mut a_below, mut b_below) = (true, true);
    for p in consistent_pairs(lat) {
        let x = a.apply(&p)?;
        let y = b.apply(&p)?;
        a_below &= prec_le(lat, &x, &y);
        b_below &= prec_le(lat, &y, &x);
        if !a_below && !b_below {
            return Ok(PrecisionVerdict::Incomparable);
        }
    }
    Ok(match (a_below, b_below) {
        (true, true) => PrecisionVerdict::Equal,
        (true, false) => PrecisionVerdict::Less,
        (false, true) => PrecisionVerdict::Greater,
        (false, false) => PrecisionVerdict::Incomparable,
    })
}

use super::approximator::{Approximator, Elem, Pair};
use super::pair::{consistent_pairs, prec_le, ConsistentPair};
use crate::error::{Error, Result};
use crate::lattice::{lfp_within, Lattice};

/// Default cap on the number of candidates swept by [`exact_stable_fixpoints`].
pub const DEFAULT_CANDIDATE_CAP: u128 = 1 << 20;

/// A fixpoint together with the number of steps it took to reach it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint<E> {
    pub pair: ConsistentPair<E>,
    pub iterations: usize,
}

/// Result of one stable revision step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Revision<E> {
    Consistent(ConsistentPair<E>),
    /// The revised bounds cross. Cannot happen for a reliable pair under a
    /// `<=_p`-monotone approximator, so this signals an invalid one.
    Inconsistent {
        lower: E,
        upper: E,
    },
}

impl<E> Revision<E> {
    pub fn consistent(self) -> Option<ConsistentPair<E>> {
        match self {
            Revision::Consistent(p) => Some(p),
            Revision::Inconsistent { .. } => None,
        }
    }
}

fn check_pair<A: Approximator>(a: &A, p: &Pair<A>) -> Result<()> {
    let lat = a.lattice();
    lat.check(p.lower())?;
    lat.check(p.upper())
}

/// `p <=_p A(p)`.
pub fn is_reliable<A: Approximator>(a: &A, p: &Pair<A>) -> Result<bool> {
    check_pair(a, p)?;
    let image = a.apply(p)?;
    Ok(prec_le(a.lattice(), p, &image))
}

/// Least fixpoint of `x -> A¹(x, upper)` on `[bottom, upper]`.
pub fn lower_revision<A: Approximator>(a: &A, upper: &Elem<A>) -> Result<Elem<A>> {
    let lat = a.lattice();
    lfp_within(lat, &lat.bottom(), upper, |x| {
        a.lower(&ConsistentPair::new_unchecked(x.clone(), upper.clone()))
    })
}

/// Least fixpoint of `y -> A²(lower, y)` on `[lower, top]`.
pub fn upper_revision<A: Approximator>(a: &A, lower: &Elem<A>) -> Result<Elem<A>> {
    let lat = a.lattice();
    lfp_within(lat, lower, &lat.top(), |y| {
        a.upper(&ConsistentPair::new_unchecked(lower.clone(), y.clone()))
    })
}

/// Reliable, and the lower bound lies below the lower revision of the upper bound.
pub fn is_prudent<A: Approximator>(a: &A, p: &Pair<A>) -> Result<bool> {
    if !is_reliable(a, p)? {
        return Ok(false);
    }
    let revised = lower_revision(a, p.upper())?;
    Ok(a.lattice().le(p.lower(), &revised))
}

/// The stable revision `(a, b) -> (lower_revision(b), upper_revision(a))`.
///
/// Requires a reliable pair. For a valid approximator the upper revision
/// stays below the upper bound and is a prefixpoint of the lower operator,
/// so the result is consistent; crossing bounds are reported as
/// [`Revision::Inconsistent`] rather than hidden.
pub fn stable_revision<A: Approximator>(a: &A, p: &Pair<A>) -> Result<Revision<Elem<A>>> {
    if !is_reliable(a, p)? {
        return Err(Error::Precondition(format!(
            "stable revision needs a reliable pair, got {p:?}"
        )));
    }
    let lower = lower_revision(a, p.upper())?;
    let upper = upper_revision(a, p.lower())?;
    if a.lattice().le(&lower, &upper) {
        Ok(Revision::Consistent(ConsistentPair::new_unchecked(
            lower, upper,
        )))
    } else {
        Ok(Revision::Inconsistent { lower, upper })
    }
}

fn iteration_bound<L: Lattice>(lat: &L) -> u128 {
    lat.cardinality().saturating_mul(2)
}

/// Least fixpoint of `A` in the precision order, by iterating from `(bottom, top)`.
pub fn kripke_kleene<A: Approximator>(a: &A) -> Result<Fixpoint<Elem<A>>> {
    let lat = a.lattice();
    let bound = iteration_bound(lat);
    let mut current = ConsistentPair::least_precise(lat);
    let mut iterations = 0usize;
    loop {
        let next = a.apply(&current)?;
        if !prec_le(lat, &current, &next) {
            return Err(Error::InvalidApproximator(format!(
                "Kripke-Kleene iteration lost precision at {current:?}"
            )));
        }
        if next == current {
            return Ok(Fixpoint {
                pair: current,
                iterations,
            });
        }
        current = next;
        iterations += 1;
        if iterations as u128 > bound {
            return Err(Error::Internal(
                "Kripke-Kleene iteration did not converge".into(),
            ));
        }
    }
}

/// Least stable fixpoint, by iterating stable revision from `(bottom, top)`.
pub fn well_founded<A: Approximator>(a: &A) -> Result<Fixpoint<Elem<A>>> {
    let lat = a.lattice();
    let bound = iteration_bound(lat);
    let mut current = ConsistentPair::least_precise(lat);
    let mut iterations = 0usize;
    loop {
        let next = match stable_revision(a, &current)? {
            Revision::Consistent(p) => p,
            Revision::Inconsistent { lower, upper } => {
                return Err(Error::InvalidApproximator(format!(
                    "well-founded iteration reached the inconsistent pair ({lower:?}, {upper:?})"
                )))
            }
        };
        if next == current {
            return Ok(Fixpoint {
                pair: current,
                iterations,
            });
        }
        current = next;
        iterations += 1;
        if iterations as u128 > bound {
            return Err(Error::Internal(
                "well-founded iteration exceeded twice the carrier size".into(),
            ));
        }
    }
}

/// Reliable and fixed by stable revision.
pub fn is_stable_pair<A: Approximator>(a: &A, p: &Pair<A>) -> Result<bool> {
    if !is_reliable(a, p)? {
        return Ok(false);
    }
    Ok(&lower_revision(a, p.upper())? == p.lower() && &upper_revision(a, p.lower())? == p.upper())
}

/// Whether `(x, x)` is a stable fixpoint: `x` is a fixpoint of the exact-pair
/// operator and the least fixpoint of `A¹(·, x)` below `x`.
pub fn is_exact_stable<A: Approximator>(a: &A, x: &Elem<A>) -> Result<bool> {
    a.lattice().check(x)?;
    let exact = ConsistentPair::exact(x.clone());
    if &a.lower(&exact)? != x {
        return Ok(false);
    }
    Ok(&lower_revision(a, x)? == x)
}

/// Exact stable fixpoints among the given candidates, in candidate order.
pub fn exact_stable_among<A, I>(a: &A, candidates: I) -> Result<Vec<Elem<A>>>
where
    A: Approximator,
    I: IntoIterator<Item = Elem<A>>,
{
    let mut out = Vec::new();
    for x in candidates {
        if is_exact_stable(a, &x)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Every `x` with `(x, x)` a stable fixpoint, in carrier order.
pub fn exact_stable_fixpoints<A: Approximator>(a: &A, cap: u128) -> Result<Vec<Elem<A>>> {
    let lat = a.lattice();
    let needed = lat.cardinality();
    if needed > cap {
        return Err(Error::resource("stable fixpoint candidates", cap, needed));
    }
    exact_stable_among(a, lat.elements())
}

/// Every stable pair, by exhaustive sweep over the consistent pairs.
pub fn stable_pairs<A: Approximator>(a: &A, cap: u128) -> Result<Vec<Pair<A>>> {
    let lat = a.lattice();
    let needed = lat.consistent_pair_count();
    if needed > cap {
        return Err(Error::resource("consistent pairs", cap, needed));
    }
    let mut out = Vec::new();
    for p in consistent_pairs(lat) {
        if is_stable_pair(a, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aft::{prec_leq, ultimate_of, FnApproximator};
    use crate::lattice::{lfp_monotone, AtomSet, ElemId, FiniteLattice, PowersetLattice};

    fn exact(lat: &PowersetLattice, names: &[&str]) -> ConsistentPair<AtomSet> {
        ConsistentPair::exact(lat.set_of(names.iter().copied()).unwrap())
    }

    // T_P for {p <- not q; q <- not p} over atoms [p, q].
    fn mutual_negation(x: &AtomSet) -> AtomSet {
        let mut out = AtomSet::empty(2);
        if !x.contains(1) {
            out.insert(0);
        }
        if !x.contains(0) {
            out.insert(1);
        }
        out
    }

    #[test]
    fn mutual_negation_ultimate() {
        let lat = PowersetLattice::new(["p", "q"]);
        let op = mutual_negation;
        let u = ultimate_of(&lat, &op);

        let wf = well_founded(&u).unwrap().pair;
        assert_eq!(wf, ConsistentPair::least_precise(&lat));
        assert!(is_stable_pair(&u, &wf).unwrap());

        let stable = exact_stable_fixpoints(&u, DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(
            stable,
            vec![lat.set_of(["p"]).unwrap(), lat.set_of(["q"]).unwrap()]
        );
        // Exhaustive sweep: the stable pairs are the WF pair and the two exact ones.
        let pairs = stable_pairs(&u, 1 << 12).unwrap();
        assert_eq!(pairs.len(), 3);
        for s in &pairs {
            assert!(prec_leq(&lat, &wf, s).unwrap());
        }
    }

    #[test]
    fn least_precise_pair_is_reliable_and_prudent() {
        let lat = FiniteLattice::diamond();
        let op = |x: &ElemId| ElemId(3 - x.0);
        let u = ultimate_of(&lat, &op);
        let least = ConsistentPair::least_precise(&lat);
        assert!(is_reliable(&u, &least).unwrap());
        assert!(is_prudent(&u, &least).unwrap());
    }

    #[test]
    fn unreliable_pair_is_rejected_by_revision() {
        // {p <- not p}: T(x) = complement of x.
        let lat = PowersetLattice::new(["p"]);
        let top = lat.top();
        let op = |x: &AtomSet| top.difference(x);
        let u = ultimate_of(&lat, &op);
        let p = exact(&lat, &["p"]);
        assert!(!is_reliable(&u, &p).unwrap());
        assert!(matches!(
            stable_revision(&u, &p),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn monotone_revision_from_least_precise_pair() {
        let lat = PowersetLattice::new(["p", "q", "r"]);
        // Horn-like: p; q <- p; r <- r.
        let op = |x: &AtomSet| {
            let mut y = AtomSet::empty(3);
            y.insert(0);
            if x.contains(0) {
                y.insert(1);
            }
            if x.contains(2) {
                y.insert(2);
            }
            y
        };
        let u = ultimate_of(&lat, &op);
        let revised = stable_revision(&u, &ConsistentPair::least_precise(&lat))
            .unwrap()
            .consistent()
            .unwrap();
        // Independent coordinate iterations of O itself.
        let lfp = lfp_monotone(&lat, &op, &lat.bottom()).unwrap();
        assert_eq!(lfp, lat.set_of(["p", "q"]).unwrap());
        assert_eq!(revised, ConsistentPair::exact(lfp));
    }

    #[test]
    fn stable_fixpoints_are_revision_fixpoints() {
        let lat = PowersetLattice::new(["p", "q"]);
        let op = mutual_negation;
        let u = ultimate_of(&lat, &op);
        for s in stable_pairs(&u, 1 << 12).unwrap() {
            assert_eq!(
                stable_revision(&u, &s).unwrap(),
                Revision::Consistent(s.clone())
            );
            assert!(is_prudent(&u, &s).unwrap());
            assert_eq!(u.apply(&s).unwrap(), s);
        }
    }

    #[test]
    fn non_monotone_approximator_can_revise_inconsistently() {
        let lat = PowersetLattice::new(["p"]);
        // Lower bound copies the upper one, which breaks <=_p-monotonicity.
        let a = FnApproximator::new(
            lat.clone(),
            |p: &ConsistentPair<AtomSet>| p.upper().clone(),
            |p: &ConsistentPair<AtomSet>| p.upper().clone(),
        );
        assert!(crate::aft::validate_approximator(&a, 1 << 10).is_err());
        let p = ConsistentPair::least_precise(&lat);
        assert!(is_reliable(&a, &p).unwrap());
        assert_eq!(
            stable_revision(&a, &p).unwrap(),
            Revision::Inconsistent {
                lower: lat.top(),
                upper: lat.bottom()
            }
        );
    }

    #[test]
    fn reliable_pairs_revise_consistently_for_program_approximators() {
        use crate::lp::{fitting_approximator, normalize, parse, ultimate_lp, TautologyConfig};
        let np =
            normalize(&parse("a :- not b. b :- not a. c :- a, not c. c :- b, not a.").unwrap());
        let fit = fitting_approximator(&np);
        let ult = ultimate_lp(&np, TautologyConfig::default());
        for p in consistent_pairs(&np.lattice()) {
            for rev in [
                is_reliable(&fit, &p)
                    .unwrap()
                    .then(|| stable_revision(&fit, &p).unwrap()),
                is_reliable(&ult, &p)
                    .unwrap()
                    .then(|| stable_revision(&ult, &p).unwrap()),
            ]
            .into_iter()
            .flatten()
            {
                assert!(matches!(rev, Revision::Consistent(_)), "{p:?}");
            }
        }
    }
}

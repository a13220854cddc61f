//! Brute-force reference computations for cross-checking the fast paths.
//!
//! Everything here is exponential by design and deliberately avoids the
//! evaluation helpers of the `lp` and `aft` modules: one-step provability is
//! re-derived from the rule bodies, intervals are enumerated with plain
//! integer counters, and least fixpoints are computed by naive iteration.

use crate::aft::{Approximator, ConsistentPair, Elem};
use crate::error::{Error, Result};
use crate::lattice::{AtomSet, Lattice};
use crate::lp::{AtomId, DnfFormula, NormalProgram};

fn width_guard(what: &'static str, width: usize, cap: usize) -> Result<()> {
    if width > cap.min(63) {
        return Err(Error::Resource {
            resource: what,
            cap: cap as u128,
            needed: width as u128,
            context: None,
        });
    }
    Ok(())
}

/// `T_P(K)` evaluated directly from the body literals.
fn one_step(np: &NormalProgram, k: &AtomSet) -> AtomSet {
    let mut out = AtomSet::empty(np.len());
    for (head, body) in np.bodies().iter().enumerate() {
        let fires = body.disjuncts().iter().any(|conj| {
            conj.iter().all(|lit| {
                let member = k.contains(lit.atom.index());
                if lit.negated {
                    !member
                } else {
                    member
                }
            })
        });
        if fires {
            out.insert(head);
        }
    }
    out
}

/// Sets `lower ∪ S` for every `S ⊆ free`, by counting.
fn subsets_over<'a>(lower: &'a AtomSet, free: &'a [usize]) -> impl Iterator<Item = AtomSet> + 'a {
    (0u64..(1u64 << free.len())).map(move |bits| {
        let mut k = lower.clone();
        for (j, &atom) in free.iter().enumerate() {
            if bits >> j & 1 == 1 {
                k.insert(atom);
            }
        }
        k
    })
}

/// `(∩ T_P(K), ∪ T_P(K))` over every `K` with `lower ⊆ K ⊆ upper`.
pub fn brute_ultimate(
    np: &NormalProgram,
    lower: &AtomSet,
    upper: &AtomSet,
    max_width: usize,
) -> Result<ConsistentPair<AtomSet>> {
    let n = np.len();
    if !lower.fits(n) || !upper.fits(n) {
        return Err(Error::Domain(
            "interpretation over a different universe".into(),
        ));
    }
    if !lower.is_subset(upper) {
        return Err(Error::Precondition(
            "lower interpretation is not inside the upper one".into(),
        ));
    }
    let free: Vec<usize> = (0..n)
        .filter(|&i| upper.contains(i) && !lower.contains(i))
        .collect();
    width_guard("interval width", free.len(), max_width)?;
    let mut meet = AtomSet::full(n);
    let mut join = AtomSet::empty(n);
    for k in subsets_over(lower, &free) {
        let t = one_step(np, &k);
        meet = meet.intersection(&t);
        join = join.union(&t);
    }
    Ok(ConsistentPair::new_unchecked(meet, join))
}

/// Every `I` with `T_P(I) = I`, by full subset enumeration.
pub fn brute_supported_models(np: &NormalProgram, max_atoms: usize) -> Result<Vec<AtomSet>> {
    let n = np.len();
    width_guard("enumerated atoms", n, max_atoms)?;
    let all: Vec<usize> = (0..n).collect();
    Ok(subsets_over(&AtomSet::empty(n), &all)
        .filter(|i| &one_step(np, i) == i)
        .collect())
}

/// Every `x` for which naive iteration of `z -> A¹(z, x)` from bottom stays
/// below `x` and stops exactly at `x`. No candidate is skipped.
pub fn brute_exact_stable<A: Approximator>(a: &A, max_candidates: u128) -> Result<Vec<Elem<A>>> {
    let lat = a.lattice();
    let needed = lat.cardinality();
    if needed > max_candidates {
        return Err(Error::Resource {
            resource: "stable fixpoint candidates",
            cap: max_candidates,
            needed,
            context: None,
        });
    }
    let mut out = Vec::new();
    for x in lat.elements() {
        let mut z = lat.bottom();
        let mut steps: u128 = 0;
        let stable = loop {
            let next = a.lower(&ConsistentPair::new_unchecked(z.clone(), x.clone()))?;
            if !lat.le(&next, &x) {
                break false;
            }
            if next == z {
                break z == x;
            }
            z = next;
            steps += 1;
            if steps > needed {
                break false;
            }
        };
        if stable {
            out.push(x);
        }
    }
    Ok(out)
}

fn eval_assignment(phi: &DnfFormula, truth: &dyn Fn(AtomId) -> bool) -> bool {
    phi.disjuncts()
        .iter()
        .any(|conj| conj.iter().all(|lit| truth(lit.atom) != lit.negated))
}

/// `∃ I ⊆ xs. ∀ K ⊆ ys. phi(I ∪ K)`, by double enumeration.
pub fn qbf_exists_forall(
    phi: &DnfFormula,
    xs: &[AtomId],
    ys: &[AtomId],
    max_vars: usize,
) -> Result<bool> {
    width_guard("quantified variables", xs.len() + ys.len(), max_vars)?;
    if let Some(a) = phi
        .atoms()
        .into_iter()
        .find(|a| !xs.contains(a) && !ys.contains(a))
    {
        return Err(Error::Precondition(format!(
            "formula atom #{} is not quantified",
            a.0
        )));
    }
    for ex in 0u64..(1u64 << xs.len()) {
        let all_true = (0u64..(1u64 << ys.len())).all(|un| {
            let truth = |a: AtomId| {
                if let Some(i) = xs.iter().position(|&x| x == a) {
                    ex >> i & 1 == 1
                } else {
                    let j = ys.iter().position(|&y| y == a).expect("quantified");
                    un >> j & 1 == 1
                }
            };
            eval_assignment(phi, &truth)
        });
        if all_true {
            return Ok(true);
        }
    }
    Ok(false)
}

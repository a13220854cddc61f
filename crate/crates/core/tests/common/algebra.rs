//! Checks of the algebraic properties of stable revision on one randomized
//! case. Stable pairs are recomputed here by naive Kleene iteration rather
//! than taken from the library.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ultimate::aft::{
    chain_lub, consistent_pairs, exact_stable_fixpoints, is_prudent, is_reliable, kripke_kleene,
    stable_pairs, stable_revision, validate_approximator, well_founded, Approximator,
    ConsistentPair, Revision,
};
use ultimate::lattice::{lfp_monotone, ElemId, FiniteLattice, Lattice};

use super::{
    antimonotone_op, arbitrary_op, monotone_op, random_approximator, random_lattice,
    ultimate_table, Table, TableApprox,
};

type P = ConsistentPair<ElemId>;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OpKind {
    Arbitrary,
    Monotone,
    Antimonotone,
}

pub struct Case {
    pub lattice: FiniteLattice,
    pub op: Table,
    pub kind: OpKind,
    pub approx: TableApprox,
    pub is_ultimate: bool,
}

pub fn random_case(rng: &mut ChaCha8Rng) -> Case {
    let lattice = random_lattice(rng);
    let kind = *[OpKind::Arbitrary, OpKind::Monotone, OpKind::Antimonotone]
        .choose(rng)
        .unwrap();
    let op = match kind {
        OpKind::Arbitrary => arbitrary_op(&lattice, rng),
        OpKind::Monotone => monotone_op(&lattice, rng),
        OpKind::Antimonotone => antimonotone_op(&lattice, rng),
    };
    let is_ultimate = rng.gen_bool(0.5);
    let approx = if is_ultimate {
        ultimate_table(&lattice, &op)
    } else {
        random_approximator(&lattice, &op, rng)
    };
    Case {
        lattice,
        op,
        kind,
        approx,
        is_ultimate,
    }
}

fn le_p(lat: &FiniteLattice, p: &P, q: &P) -> bool {
    lat.le(p.lower(), q.lower()) && lat.le(q.upper(), p.upper())
}

fn naive_lfp(
    lat: &FiniteLattice,
    start: ElemId,
    f: impl Fn(ElemId) -> Option<ElemId>,
) -> Option<ElemId> {
    let mut x = start;
    for _ in 0..=lat.len() {
        let next = f(x)?;
        if next == x {
            return Some(x);
        }
        x = next;
    }
    None
}

fn pair(lat: &FiniteLattice, x: ElemId, y: ElemId) -> Option<P> {
    ConsistentPair::new(lat, x, y).ok()
}

/// Independent test for a stable pair.
fn stable_by_iteration(a: &TableApprox, p: &P) -> bool {
    let lat = a.lattice();
    let image = a.apply(p).unwrap();
    if !le_p(lat, p, &image) {
        return false;
    }
    let (x, y) = (*p.lower(), *p.upper());
    let lower = naive_lfp(lat, lat.bottom(), |z| a.lower(&pair(lat, z, y)?).ok());
    let upper = naive_lfp(lat, x, |z| a.upper(&pair(lat, x, z)?).ok());
    lower == Some(x) && upper == Some(y)
}

/// Number of individual assertions checked, or a description of the first
/// violation.
pub fn check_case(case: &Case, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let lat = &case.lattice;
    let a = &case.approx;
    let mut checks = 0usize;
    macro_rules! ensure {
        ($cond:expr, $($msg:tt)+) => {{
            checks += 1;
            if !$cond {
                return Err(format!($($msg)+));
            }
        }};
    }
    let fail = |e: ultimate::Error| e.to_string();

    ensure!(
        validate_approximator(a, 1 << 16).is_ok(),
        "generated approximator is invalid"
    );

    let pairs: Vec<P> = consistent_pairs(lat).collect();
    let stable: Vec<P> = pairs
        .iter()
        .filter(|p| stable_by_iteration(a, p))
        .cloned()
        .collect();
    let library_stable = stable_pairs(a, 1 << 16).map_err(fail)?;
    ensure!(
        library_stable == stable,
        "stable pairs differ: library {library_stable:?}, naive {stable:?}"
    );

    // Stable pairs are fixpoints.
    for s in &stable {
        ensure!(
            &a.apply(s).map_err(fail)? == s,
            "stable pair {s:?} is not a fixpoint"
        );
    }

    // The well-founded pair is the least stable pair.
    let wf = well_founded(a).map_err(fail)?.pair;
    ensure!(stable.contains(&wf), "WF {wf:?} is not stable");
    for s in &stable {
        ensure!(le_p(lat, &wf, s), "WF {wf:?} is not below stable {s:?}");
    }
    let kk = kripke_kleene(a).map_err(fail)?.pair;
    ensure!(le_p(lat, &kk, &wf), "KK {kk:?} is not below WF {wf:?}");

    let mut reliable = Vec::new();
    let mut prudent = Vec::new();
    for p in &pairs {
        if !is_reliable(a, p).map_err(fail)? {
            continue;
        }
        let rev = match stable_revision(a, p).map_err(fail)? {
            Revision::Consistent(r) => r,
            Revision::Inconsistent { lower, upper } => {
                return Err(format!(
                    "reliable {p:?} revised to crossing bounds ({lower:?}, {upper:?})"
                ))
            }
        };
        checks += 1;
        reliable.push((p.clone(), rev.clone()));
        if is_prudent(a, p).map_err(fail)? {
            // Revision of a prudent pair.
            ensure!(
                is_reliable(a, &rev).map_err(fail)?,
                "revision {rev:?} of prudent {p:?} is not reliable"
            );
            ensure!(
                is_prudent(a, &rev).map_err(fail)?,
                "revision {rev:?} of prudent {p:?} is not prudent"
            );
            ensure!(
                le_p(lat, p, &rev),
                "prudent {p:?} is not below its revision {rev:?}"
            );
            let image = a.apply(p).map_err(fail)?;
            ensure!(
                le_p(lat, &image, &rev),
                "A({p:?}) = {image:?} is not below revision {rev:?}"
            );
            prudent.push((p.clone(), rev));
        }
    }

    // Revision is monotone from reliable pairs into prudent ones.
    for (p, rp) in &reliable {
        for (q, rq) in &prudent {
            if le_p(lat, p, q) {
                ensure!(
                    le_p(lat, rp, rq),
                    "revisions of {p:?} <=p {q:?} are not ordered: {rp:?}, {rq:?}"
                );
            }
        }
    }

    // Chains of prudent pairs have prudent least upper bounds.
    if !prudent.is_empty() {
        let mut chain = vec![prudent.choose(rng).unwrap().0.clone()];
        for _ in 0..4 {
            let last = chain.last().unwrap().clone();
            let above: Vec<&P> = prudent
                .iter()
                .map(|(q, _)| q)
                .filter(|q| **q != last && le_p(lat, &last, q))
                .collect();
            match above.choose(rng) {
                Some(q) => chain.push((*q).clone()),
                None => break,
            }
        }
        let top = chain.last().unwrap().clone();
        let lub = chain_lub(lat, &chain).map_err(fail)?;
        ensure!(
            lub == top,
            "chain lub {lub:?} differs from the chain maximum {top:?}"
        );
        ensure!(
            is_prudent(a, &lub).map_err(fail)?,
            "chain lub {lub:?} is not prudent"
        );
    }

    if case.is_ultimate {
        let fixpoints: Vec<ElemId> = lat.elements().filter(|x| case.op.at(x) == *x).collect();
        let exact_stable = exact_stable_fixpoints(a, 1 << 16).map_err(fail)?;
        match case.kind {
            OpKind::Monotone => {
                for p in &pairs {
                    let (x, y) = (*p.lower(), *p.upper());
                    ensure!(
                        Some(a.apply(p).map_err(fail)?)
                            == pair(lat, case.op.at(&x), case.op.at(&y)),
                        "ultimate of a monotone operator is not (O(x), O(y)) at {p:?}"
                    );
                }
                let lfp =
                    lfp_monotone(lat, &|x: &ElemId| case.op.at(x), &lat.bottom()).map_err(fail)?;
                ensure!(
                    wf == ConsistentPair::exact(lfp),
                    "WF {wf:?} is not the least fixpoint {lfp:?}"
                );
                ensure!(
                    exact_stable == vec![lfp],
                    "stable fixpoints {exact_stable:?} are not just {lfp:?}"
                );
            }
            OpKind::Antimonotone => {
                for p in &pairs {
                    let (x, y) = (*p.lower(), *p.upper());
                    ensure!(
                        Some(a.apply(p).map_err(fail)?)
                            == pair(lat, case.op.at(&y), case.op.at(&x)),
                        "ultimate of an antimonotone operator is not (O(y), O(x)) at {p:?}"
                    );
                }
                ensure!(
                    kk == wf,
                    "KK {kk:?} differs from WF {wf:?} for an antimonotone operator"
                );
                ensure!(
                    exact_stable == fixpoints,
                    "stable fixpoints {exact_stable:?} differ from fixpoints {fixpoints:?}"
                );
            }
            OpKind::Arbitrary => {
                for x in &exact_stable {
                    ensure!(fixpoints.contains(x), "stable {x:?} is not a fixpoint");
                }
            }
        }
    }
    Ok(checks)
}

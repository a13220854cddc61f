//! Random lattices, operators and approximators for the integration suites.
//!
//! Ultimate approximations are tabulated here by direct interval scans so
//! that the library's own construction is never used as its own reference.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ultimate::aft::{consistent_pairs, Approximator, ConsistentPair};
use ultimate::lattice::{ElemId, FiniteLattice, Lattice};
use ultimate::lp::{numbered_universe, AtomId, Literal, Program, Rule};
use ultimate::Result;

pub use rand::SeedableRng;

pub mod algebra;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Lattice of a random intersection-closed family of subsets of a small
/// ground set, with at most `max_size` members.
pub fn closure_lattice(rng: &mut ChaCha8Rng, max_size: usize) -> FiniteLattice {
    loop {
        let ground = rng.gen_range(4..=5u32);
        let full = (1u64 << ground) - 1;
        let generators = rng.gen_range(3..=14);
        let mut family: BTreeSet<u64> = BTreeSet::from([full]);
        for _ in 0..generators {
            family.insert(rng.gen_range(0..=full));
        }
        loop {
            let members: Vec<u64> = family.iter().copied().collect();
            let before = family.len();
            for &a in &members {
                for &b in &members {
                    family.insert(a & b);
                }
            }
            if family.len() == before {
                break;
            }
        }
        if family.len() <= max_size {
            let sets: Vec<u64> = family.into_iter().collect();
            return FiniteLattice::from_set_family(&sets).expect("closure systems are lattices");
        }
    }
}

/// A chain of length 1..=8, the diamond, or a closure-system lattice of at
/// most 32 elements.
pub fn random_lattice(rng: &mut ChaCha8Rng) -> FiniteLattice {
    match rng.gen_range(0..4) {
        0 => FiniteLattice::chain(rng.gen_range(1..=8)).unwrap(),
        1 => FiniteLattice::diamond(),
        _ => closure_lattice(rng, 32),
    }
}

/// An operator as a table indexed by element id.
#[derive(Clone, Debug)]
pub struct Table(pub Vec<u32>);

impl Table {
    pub fn at(&self, x: &ElemId) -> ElemId {
        ElemId(self.0[x.0 as usize])
    }
}

pub fn arbitrary_op(lat: &FiniteLattice, rng: &mut ChaCha8Rng) -> Table {
    let n = lat.len() as u32;
    Table((0..n).map(|_| rng.gen_range(0..n)).collect())
}

/// `x -> lub { r(z) : z <= x }` for a random map `r`, which is monotone.
pub fn monotone_op(lat: &FiniteLattice, rng: &mut ChaCha8Rng) -> Table {
    let r = arbitrary_op(lat, rng);
    Table(
        lat.elements()
            .map(|x| {
                let below: Vec<ElemId> = lat
                    .elements()
                    .filter(|z| lat.le(z, &x))
                    .map(|z| r.at(&z))
                    .collect();
                lat.lub(&below).unwrap().0
            })
            .collect(),
    )
}

/// `x -> lub { r(z) : z >= x }` for a random map `r`, which is antimonotone.
pub fn antimonotone_op(lat: &FiniteLattice, rng: &mut ChaCha8Rng) -> Table {
    let r = arbitrary_op(lat, rng);
    Table(
        lat.elements()
            .map(|x| {
                let above: Vec<ElemId> = lat
                    .elements()
                    .filter(|z| lat.le(&x, z))
                    .map(|z| r.at(&z))
                    .collect();
                lat.lub(&above).unwrap().0
            })
            .collect(),
    )
}

/// An approximator stored as a table over consistent pairs.
#[derive(Clone, Debug)]
pub struct TableApprox {
    pub lattice: FiniteLattice,
    table: HashMap<(u32, u32), (u32, u32)>,
}

impl Approximator for TableApprox {
    type Lattice = FiniteLattice;

    fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }
    fn lower(&self, p: &ConsistentPair<ElemId>) -> Result<ElemId> {
        Ok(ElemId(self.table[&(p.lower().0, p.upper().0)].0))
    }
    fn upper(&self, p: &ConsistentPair<ElemId>) -> Result<ElemId> {
        Ok(ElemId(self.table[&(p.lower().0, p.upper().0)].1))
    }
}

/// `(glb O([x,y]), lub O([x,y]))` by scanning the carrier.
pub fn interval_image(lat: &FiniteLattice, op: &Table, x: ElemId, y: ElemId) -> (ElemId, ElemId) {
    let image: Vec<ElemId> = lat
        .elements()
        .filter(|z| lat.le(&x, z) && lat.le(z, &y))
        .map(|z| op.at(&z))
        .collect();
    (lat.glb(&image).unwrap(), lat.lub(&image).unwrap())
}

pub fn ultimate_table(lat: &FiniteLattice, op: &Table) -> TableApprox {
    let table = consistent_pairs(lat)
        .map(|p| {
            let (lo, hi) = interval_image(lat, op, *p.lower(), *p.upper());
            ((p.lower().0, p.upper().0), (lo.0, hi.0))
        })
        .collect();
    TableApprox {
        lattice: lat.clone(),
        table,
    }
}

/// A valid approximator of `op` that is generally less precise than the
/// ultimate one: non-exact pairs `(x, y)` are first widened to
/// `(x meet c, y join d)` for random `c` and `d`.
pub fn random_approximator(lat: &FiniteLattice, op: &Table, rng: &mut ChaCha8Rng) -> TableApprox {
    let elems: Vec<ElemId> = lat.elements().collect();
    let c = *elems.choose(rng).unwrap();
    let d = *elems.choose(rng).unwrap();
    let table = consistent_pairs(lat)
        .map(|p| {
            let (x, y) = (*p.lower(), *p.upper());
            let (lo, hi) = if x == y {
                interval_image(lat, op, x, x)
            } else {
                interval_image(lat, op, lat.meet(&x, &c), lat.join(&y, &d))
            };
            ((x.0, y.0), (lo.0, hi.0))
        })
        .collect();
    TableApprox {
        lattice: lat.clone(),
        table,
    }
}

/// A random program in which every atom satisfies one of the four
/// tractability conditions for `k = 2`, chosen per atom.
pub fn e2_program(rng: &mut ChaCha8Rng, atoms: usize) -> Program {
    let universe = numbered_universe(atoms);
    let ids: Vec<AtomId> = universe.atoms().collect();
    let mut rules = Vec::new();
    let lit = |rng: &mut ChaCha8Rng, negated: bool| Literal {
        atom: *ids.choose(rng).unwrap(),
        negated,
    };
    for &head in &ids {
        let condition = rng.gen_range(1..=4);
        let count = if condition == 1 {
            rng.gen_range(0..=2)
        } else {
            rng.gen_range(3..=7)
        };
        for _ in 0..count {
            let body: Vec<Literal> = match condition {
                1 => (0..rng.gen_range(0..=6))
                    .map(|_| {
                        let neg = rng.gen_bool(0.5);
                        lit(rng, neg)
                    })
                    .collect(),
                2 => (0..rng.gen_range(0..=2))
                    .map(|_| {
                        let neg = rng.gen_bool(0.5);
                        lit(rng, neg)
                    })
                    .collect(),
                3 => {
                    let mut b: Vec<Literal> =
                        (0..rng.gen_range(0..=5)).map(|_| lit(rng, true)).collect();
                    if rng.gen_bool(0.6) {
                        b.push(lit(rng, false));
                    }
                    b
                }
                _ => {
                    let mut b: Vec<Literal> =
                        (0..rng.gen_range(0..=5)).map(|_| lit(rng, false)).collect();
                    if rng.gen_bool(0.6) {
                        b.push(lit(rng, true));
                    }
                    b
                }
            };
            rules.push(Rule::new(head, body));
        }
    }
    Program::new(universe, rules).unwrap()
}

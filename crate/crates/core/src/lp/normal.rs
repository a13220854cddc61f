use super::dnf::DnfFormula;
use super::syntax::{AtomId, Literal, Program, Universe};
use crate::error::{Error, Result};
use crate::lattice::{AtomSet, LatticeOperator, PowersetLattice};

/// One DNF body per atom: `p <- B(p)`, where `B(p)` is the disjunction of
/// the bodies of all rules with head `p` (false when there are none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalProgram {
    universe: Universe,
    bodies: Vec<DnfFormula>,
}

pub fn normalize(program: &Program) -> NormalProgram {
    let universe = program.universe().clone();
    let bodies = universe
        .atoms()
        .map(|a| DnfFormula::new(program.rules_for(a).map(|r| r.body().iter().copied())))
        .collect();
    NormalProgram { universe, bodies }
}

impl NormalProgram {
    pub fn new(universe: Universe, bodies: Vec<DnfFormula>) -> Result<Self> {
        if bodies.len() != universe.len() {
            return Err(Error::Domain(format!(
                "{} bodies for a universe of {} atoms",
                bodies.len(),
                universe.len()
            )));
        }
        let n = universe.len();
        if bodies
            .iter()
            .flat_map(|b| b.atoms())
            .any(|a| a.index() >= n)
        {
            return Err(Error::Domain(
                "body mentions an atom outside the universe".into(),
            ));
        }
        Ok(NormalProgram { universe, bodies })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn body(&self, atom: AtomId) -> &DnfFormula {
        &self.bodies[atom.index()]
    }

    pub fn bodies(&self) -> &[DnfFormula] {
        &self.bodies
    }

    pub fn lattice(&self) -> PowersetLattice {
        self.universe.lattice()
    }

    fn check(&self, interp: &AtomSet) -> Result<()> {
        if interp.fits(self.len()) {
            Ok(())
        } else {
            Err(Error::Domain(
                "interpretation over a different universe".into(),
            ))
        }
    }

    /// One-step provability: atoms whose body is true under `interp`.
    pub fn tp(&self, interp: &AtomSet) -> AtomSet {
        let mut out = AtomSet::empty(self.len());
        for (i, body) in self.bodies.iter().enumerate() {
            if body.eval(interp) {
                out.insert(i);
            }
        }
        out
    }

    /// `B(atom)` with atoms of `lower` replaced by true and atoms outside
    /// `upper` replaced by false, constants simplified away.
    pub fn reduct_body(&self, atom: AtomId, lower: &AtomSet, upper: &AtomSet) -> DnfFormula {
        let mut out: Vec<Vec<Literal>> = Vec::new();
        'disjunct: for d in self.bodies[atom.index()].disjuncts() {
            let mut kept = Vec::with_capacity(d.len());
            for &l in d {
                let i = l.atom.index();
                let value = if lower.contains(i) {
                    Some(true)
                } else if !upper.contains(i) {
                    Some(false)
                } else {
                    None
                };
                match value.map(|v| v != l.negated) {
                    Some(true) => {}
                    Some(false) => continue 'disjunct,
                    None => kept.push(l),
                }
            }
            out.push(kept);
        }
        DnfFormula::new(out)
    }

    /// The reduct `P_{I,J}` for `lower ⊆ upper`.
    pub fn reduct(&self, lower: &AtomSet, upper: &AtomSet) -> Result<NormalProgram> {
        self.check(lower)?;
        self.check(upper)?;
        if !lower.is_subset(upper) {
            return Err(Error::Precondition(
                "reduct needs the lower interpretation inside the upper one".into(),
            ));
        }
        let bodies = self
            .universe
            .atoms()
            .map(|a| self.reduct_body(a, lower, upper))
            .collect();
        Ok(NormalProgram {
            universe: self.universe.clone(),
            bodies,
        })
    }
}

impl LatticeOperator<AtomSet> for NormalProgram {
    fn apply(&self, x: &AtomSet) -> AtomSet {
        self.tp(x)
    }
}

use super::dnf::{dnf_satisfiable, dnf_tautology, TautologyConfig, Truth};
use super::normal::NormalProgram;
use crate::aft::{Approximator, ConsistentPair};
use crate::error::Result;
use crate::lattice::{AtomSet, PowersetLattice};

/// The three-valued immediate consequence operator: an atom is in the lower
/// bound when its body is true under strong Kleene evaluation, and in the
/// upper bound when its body is not false.
pub struct FittingApproximator<'a> {
    program: &'a NormalProgram,
    lattice: PowersetLattice,
}

pub fn fitting_approximator(program: &NormalProgram) -> FittingApproximator<'_> {
    FittingApproximator {
        program,
        lattice: program.lattice(),
    }
}

impl Approximator for FittingApproximator<'_> {
    type Lattice = PowersetLattice;

    fn lattice(&self) -> &PowersetLattice {
        &self.lattice
    }

    fn lower(&self, pair: &ConsistentPair<AtomSet>) -> Result<AtomSet> {
        Ok(self.collect(|body| body.eval3(pair) == Truth::True))
    }

    fn upper(&self, pair: &ConsistentPair<AtomSet>) -> Result<AtomSet> {
        Ok(self.collect(|body| body.eval3(pair) != Truth::False))
    }
}

impl FittingApproximator<'_> {
    fn collect(&self, keep: impl Fn(&super::DnfFormula) -> bool) -> AtomSet {
        let mut out = AtomSet::empty(self.program.len());
        for (i, body) in self.program.bodies().iter().enumerate() {
            if keep(body) {
                out.insert(i);
            }
        }
        out
    }
}

/// The ultimate approximator of `T_P`, evaluated through reducts: an atom is
/// in the lower bound iff its reduct body is a tautology, and in the upper
/// bound iff its reduct body is satisfiable.
pub struct UltimateLp<'a> {
    program: &'a NormalProgram,
    lattice: PowersetLattice,
    config: TautologyConfig,
}

pub fn ultimate_lp(program: &NormalProgram, config: TautologyConfig) -> UltimateLp<'_> {
    UltimateLp {
        program,
        lattice: program.lattice(),
        config,
    }
}

impl Approximator for UltimateLp<'_> {
    type Lattice = PowersetLattice;

    fn lattice(&self) -> &PowersetLattice {
        &self.lattice
    }

    fn lower(&self, pair: &ConsistentPair<AtomSet>) -> Result<AtomSet> {
        let np = self.program;
        let free = pair.upper().difference(pair.lower());
        let mut out = AtomSet::empty(np.len());
        for atom in np.universe().atoms() {
            let body = np.reduct_body(atom, pair.lower(), pair.upper());
            let taut = dnf_tautology(&body, &free, &self.config).map_err(|e| {
                e.with_context(format!("body of atom `{}`", np.universe().name(atom)))
            })?;
            if taut {
                out.insert(atom.index());
            }
        }
        Ok(out)
    }

    fn upper(&self, pair: &ConsistentPair<AtomSet>) -> Result<AtomSet> {
        let np = self.program;
        let mut out = AtomSet::empty(np.len());
        for atom in np.universe().atoms() {
            if dnf_satisfiable(&np.reduct_body(atom, pair.lower(), pair.upper())) {
                out.insert(atom.index());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aft::{compare_precision, consistent_pairs, ultimate_of, validate_approximator};
    use crate::error::Error;
    use crate::lp::{normalize, parse};

    fn np(src: &str) -> NormalProgram {
        normalize(&parse(src).unwrap())
    }

    fn pair(np: &NormalProgram, lo: &[&str], hi: &[&str]) -> ConsistentPair<AtomSet> {
        let u = np.universe();
        ConsistentPair::new(
            &np.lattice(),
            u.interpretation(lo.iter().copied()).unwrap(),
            u.interpretation(hi.iter().copied()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn fitting_examples() {
        let p1 = np("p :- p. p :- not p.");
        let f1 = fitting_approximator(&p1);
        let unknown = pair(&p1, &[], &["p"]);
        assert_eq!(f1.apply(&unknown).unwrap(), unknown);

        let p2 = np("p.");
        let f2 = fitting_approximator(&p2);
        assert_eq!(
            f2.apply(&pair(&p2, &[], &["p"])).unwrap(),
            pair(&p2, &["p"], &["p"])
        );
    }

    #[test]
    fn ultimate_examples() {
        let p1 = np("p :- p. p :- not p.");
        let u1 = ultimate_lp(&p1, TautologyConfig::default());
        assert_eq!(
            u1.apply(&pair(&p1, &[], &["p"])).unwrap(),
            pair(&p1, &["p"], &["p"])
        );

        let m = np("p :- not q. q :- not p.");
        let um = ultimate_lp(&m, TautologyConfig::default());
        let least = pair(&m, &[], &["p", "q"]);
        assert_eq!(um.apply(&least).unwrap(), least);
    }

    #[test]
    fn both_are_valid_and_ordered() {
        let prog = np("a :- b, not c. a :- not b. b :- not a. c :- c, not b. c :- a.");
        let fit = fitting_approximator(&prog);
        let ult = ultimate_lp(&prog, TautologyConfig::default());
        validate_approximator(&fit, 1 << 12).unwrap();
        validate_approximator(&ult, 1 << 12).unwrap();
        assert!(compare_precision(&fit, &ult, 1 << 12).unwrap().is_at_most());
        let lat = prog.lattice();
        let by_interval = ultimate_of(&lat, &prog);
        for p in consistent_pairs(&lat) {
            assert_eq!(ult.apply(&p).unwrap(), by_interval.apply(&p).unwrap());
            let exact = ConsistentPair::exact(p.lower().clone());
            assert_eq!(
                fit.apply(&exact).unwrap(),
                ConsistentPair::exact(prog.tp(p.lower()))
            );
        }
    }

    #[test]
    fn tautology_cap_names_the_atom() {
        // Five atoms free in a body that needs enumeration.
        let prog = np("h :- a, b, not c, not d. h :- not a, not b, c, d, e. h :- a, not e, c. h :- b, not a, not c, d.");
        let ult = ultimate_lp(&prog, TautologyConfig { max_vars: 3, k: 1 });
        let least = ConsistentPair::least_precise(&prog.lattice());
        match ult.apply(&least) {
            Err(Error::Resource {
                context: Some(c),
                cap: 3,
                ..
            }) => assert!(c.contains("`h`")),
            other => panic!("expected a resource error, got {other:?}"),
        }
    }
}

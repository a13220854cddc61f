//! Propositional normal logic programs and their approximators.

mod approx;
mod dnf;
mod ek;
mod gen;
mod normal;
mod parse;
mod syntax;

pub use approx::{fitting_approximator, ultimate_lp, FittingApproximator, UltimateLp};
pub use dnf::{
    dnf_satisfiable, dnf_tautology, select_method, tautology_by, tautology_by_enumeration,
    DnfFormula, TautologyConfig, TautologyMethod, Truth,
};
pub use ek::{classify_ek, EkCondition, EkReport};
pub use gen::{
    complement_name, gen_random_program, gen_sigma2_program, numbered_universe, parse_formula,
    stratification, RandomProgramParams, Shape, Sigma2Program,
};
pub use normal::{normalize, NormalProgram};
pub use parse::parse;
pub use syntax::{is_atom_name, AtomId, Literal, Program, Rule, Universe};

use crate::aft::{exact_stable_among, Approximator};
use crate::error::{Error, Result};
use crate::lattice::{AtomSet, Lattice, PowersetLattice};

fn enumeration_guard(np: &NormalProgram, max_atoms: usize) -> Result<()> {
    if np.len() > max_atoms.min(63) {
        return Err(Error::resource(
            "enumerated atoms",
            max_atoms as u128,
            np.len() as u128,
        ));
    }
    Ok(())
}

/// Fixpoints of `T_P`, in binary-counting order over the universe.
pub fn supported_models(np: &NormalProgram, max_atoms: usize) -> Result<Vec<AtomSet>> {
    enumeration_guard(np, max_atoms)?;
    let lat = np.lattice();
    Ok(lat.elements().filter(|x| &np.tp(x) == x).collect())
}

/// Exact stable fixpoints of an approximator of `T_P`.
///
/// Candidates are restricted to fixpoints of `T_P` unless `full_sweep` is
/// set, in which case every interpretation is tested.
pub fn stable_models<A>(
    approx: &A,
    np: &NormalProgram,
    max_atoms: usize,
    full_sweep: bool,
) -> Result<Vec<AtomSet>>
where
    A: Approximator<Lattice = PowersetLattice>,
{
    enumeration_guard(np, max_atoms)?;
    if full_sweep {
        exact_stable_among(approx, approx.lattice().elements())
    } else {
        exact_stable_among(approx, supported_models(np, max_atoms)?)
    }
}

//! Approximation fixpoint theory on the consistent pairs of a finite lattice.

mod approximator;
mod fixpoint;
mod pair;

pub use approximator::{
    compare_precision, least_precise_of, ultimate_of, validate_approximator, Approximator, Counted,
    Elem, FnApproximator, LeastPrecise, Pair, Ultimate,
};
pub use fixpoint::{
    exact_stable_among, exact_stable_fixpoints, is_exact_stable, is_prudent, is_reliable,
    is_stable_pair, kripke_kleene, lower_revision, stable_pairs, stable_revision, upper_revision,
    well_founded, Fixpoint, Revision, DEFAULT_CANDIDATE_CAP,
};
pub use pair::{chain_lub, consistent_pairs, prec_leq, ConsistentPair, PrecisionVerdict};

//! Approximation fixpoint theory over finite lattices, the ultimate
//! approximation of an operator, and their instantiation for propositional
//! normal logic programs.

pub mod aft;
pub mod cli;
mod error;
pub mod lattice;
pub mod lp;
pub mod oracle;
pub mod semantics;

pub use error::{Error, Result};

use std::fmt;

use serde::{Deserialize, Serialize};

use super::syntax::Program;

/// The syntactic conditions under which tautology checking for an atom's
/// reduct bodies stays polynomial.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EkCondition {
    /// At most `k` rules have the atom as head.
    FewRules = 1,
    /// Every rule body for the atom has at most two literals.
    ShortBodies = 2,
    /// Every rule body for the atom has at most one positive literal.
    OnePositive = 3,
    /// Every rule body for the atom has at most one negative literal.
    OneNegative = 4,
}

impl EkCondition {
    pub fn index(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for EkCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            EkCondition::FewRules => "at most k rules",
            EkCondition::ShortBodies => "bodies of at most two literals",
            EkCondition::OnePositive => "at most one positive literal per body",
            EkCondition::OneNegative => "at most one negative literal per body",
        };
        write!(f, "condition {} ({text})", self.index())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EkReport {
    pub k: usize,
    /// Earliest satisfied condition per atom, in universe order.
    pub atoms: Vec<(String, Option<EkCondition>)>,
    pub member: bool,
}

impl EkReport {
    pub fn violations(&self) -> impl Iterator<Item = &str> {
        self.atoms
            .iter()
            .filter(|(_, c)| c.is_none())
            .map(|(a, _)| a.as_str())
    }
}

pub fn classify_ek(program: &Program, k: usize) -> EkReport {
    let universe = program.universe();
    let atoms: Vec<(String, Option<EkCondition>)> = universe
        .atoms()
        .map(|a| {
            let rules: Vec<_> = program.rules_for(a).collect();
            let cond = if rules.len() <= k {
                Some(EkCondition::FewRules)
            } else if rules.iter().all(|r| r.body().len() <= 2) {
                Some(EkCondition::ShortBodies)
            } else if rules.iter().all(|r| r.positive_count() <= 1) {
                Some(EkCondition::OnePositive)
            } else if rules.iter().all(|r| r.negative_count() <= 1) {
                Some(EkCondition::OneNegative)
            } else {
                None
            };
            (universe.name(a).to_string(), cond)
        })
        .collect();
    let member = atoms.iter().all(|(_, c)| c.is_some());
    EkReport { k, atoms, member }
}

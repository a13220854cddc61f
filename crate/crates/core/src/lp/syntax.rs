use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{AtomSet, PowersetLattice};

/// Index of an atom in a [`Universe`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Lexicographically ordered, duplicate-free atom names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Universe {
    names: Vec<String>,
}

pub fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Universe {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let set: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        if let Some(bad) = set.iter().find(|n| !is_atom_name(n) || n.as_str() == "not") {
            return Err(Error::Domain(format!("`{bad}` is not a valid atom name")));
        }
        Ok(Universe {
            names: set.into_iter().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, atom: AtomId) -> &str {
        &self.names[atom.index()]
    }

    pub fn id(&self, name: &str) -> Option<AtomId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| AtomId(i as u32))
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> {
        (0..self.names.len() as u32).map(AtomId)
    }

    pub fn lattice(&self) -> PowersetLattice {
        PowersetLattice::new(self.names.iter().cloned())
    }

    /// The interpretation containing the named atoms.
    pub fn interpretation<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<AtomSet> {
        let mut set = AtomSet::empty(self.len());
        for n in names {
            let id = self
                .id(n)
                .ok_or_else(|| Error::Domain(format!("unknown atom `{n}`")))?;
            set.insert(id.index());
        }
        Ok(set)
    }

    pub fn names_of(&self, set: &AtomSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn union(&self, other: &Universe) -> Universe {
        let set: BTreeSet<&String> = self.names.iter().chain(&other.names).collect();
        Universe {
            names: set.into_iter().cloned().collect(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: AtomId,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: AtomId) -> Self {
        Literal {
            atom,
            negated: false,
        }
    }

    pub fn neg(atom: AtomId) -> Self {
        Literal {
            atom,
            negated: true,
        }
    }

    pub fn complement(self) -> Self {
        Literal {
            atom: self.atom,
            negated: !self.negated,
        }
    }

    /// Two-valued truth under an interpretation.
    pub fn holds(self, interp: &AtomSet) -> bool {
        interp.contains(self.atom.index()) != self.negated
    }
}

/// `head <- body`, the body a conjunction of literals with duplicates removed.
/// A body holding both `a` and `not a` is kept as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: AtomId,
    body: Vec<Literal>,
}

impl Rule {
    pub fn new(head: AtomId, body: impl IntoIterator<Item = Literal>) -> Self {
        let mut seen = Vec::new();
        for l in body {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        Rule { head, body: seen }
    }

    pub fn fact(head: AtomId) -> Self {
        Rule {
            head,
            body: Vec::new(),
        }
    }

    pub fn body(&self) -> &[Literal] {
        &self.body
    }

    pub fn positive_count(&self) -> usize {
        self.body.iter().filter(|l| !l.negated).count()
    }

    pub fn negative_count(&self) -> usize {
        self.body.iter().filter(|l| l.negated).count()
    }
}

/// A propositional normal logic program over a fixed universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    universe: Universe,
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(universe: Universe, rules: Vec<Rule>) -> Result<Self> {
        let n = universe.len();
        for r in &rules {
            let atoms = std::iter::once(r.head).chain(r.body.iter().map(|l| l.atom));
            if let Some(bad) = atoms.into_iter().find(|a| a.index() >= n) {
                return Err(Error::Domain(format!(
                    "atom index {} outside a universe of {n} atoms",
                    bad.0
                )));
            }
        }
        Ok(Program { universe, rules })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rules_for(&self, head: AtomId) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(move |r| r.head == head)
    }

    /// The same rules over a larger universe.
    pub fn widen(&self, universe: &Universe) -> Result<Program> {
        let remap = |a: AtomId| {
            universe
                .id(self.universe.name(a))
                .ok_or_else(|| Error::Domain(format!("atom `{}` missing", self.universe.name(a))))
        };
        let mut rules = Vec::with_capacity(self.rules.len());
        for r in &self.rules {
            let body = r
                .body
                .iter()
                .map(|l| {
                    remap(l.atom).map(|atom| Literal {
                        atom,
                        negated: l.negated,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rules.push(Rule::new(remap(r.head)?, body));
        }
        Program::new(universe.clone(), rules)
    }

    pub fn is_horn(&self) -> bool {
        self.rules.iter().all(|r| r.negative_count() == 0)
    }

    pub fn is_purely_negative(&self) -> bool {
        self.rules.iter().all(|r| r.positive_count() == 0)
    }
}

impl fmt::Display for Program {
    /// Program text in the input grammar; atoms occurring in no rule are
    /// emitted as `#atom` declarations first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut used = vec![false; self.universe.len()];
        for r in &self.rules {
            used[r.head.index()] = true;
            for l in &r.body {
                used[l.atom.index()] = true;
            }
        }
        for a in self.universe.atoms() {
            if !used[a.index()] {
                writeln!(f, "#atom {}.", self.universe.name(a))?;
            }
        }
        for r in &self.rules {
            write!(f, "{}", self.universe.name(r.head))?;
            for (i, l) in r.body.iter().enumerate() {
                f.write_str(if i == 0 { " :- " } else { ", " })?;
                if l.negated {
                    f.write_str("not ")?;
                }
                f.write_str(self.universe.name(l.atom))?;
            }
            writeln!(f, ".")?;
        }
        Ok(())
    }
}

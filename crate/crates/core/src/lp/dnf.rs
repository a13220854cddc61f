use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::syntax::{AtomId, Literal, Universe};
use crate::aft::ConsistentPair;
use crate::error::{Error, Result};
use crate::lattice::AtomSet;

/// Three-valued truth, ordered `False < Unknown < True`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    False,
    Unknown,
    True,
}

impl std::ops::Not for Truth {
    type Output = Truth;

    fn not(self) -> Truth {
        match self {
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
            Truth::True => Truth::False,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::False => "false",
            Truth::Unknown => "unknown",
            Truth::True => "true",
        })
    }
}

/// A disjunction of conjunctions of literals. No disjuncts is `false`; an
/// empty conjunction is `true`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DnfFormula {
    disjuncts: Vec<Vec<Literal>>,
}

impl DnfFormula {
    pub fn falsum() -> Self {
        DnfFormula::default()
    }

    pub fn verum() -> Self {
        DnfFormula {
            disjuncts: vec![Vec::new()],
        }
    }

    /// Builds a formula, removing repeated literals inside a disjunct and
    /// repeated disjuncts, keeping first occurrences in order.
    pub fn new<D, I>(disjuncts: D) -> Self
    where
        D: IntoIterator<Item = I>,
        I: IntoIterator<Item = Literal>,
    {
        let mut out: Vec<Vec<Literal>> = Vec::new();
        for d in disjuncts {
            let mut conj: Vec<Literal> = Vec::new();
            for l in d {
                if !conj.contains(&l) {
                    conj.push(l);
                }
            }
            if !out.contains(&conj) {
                out.push(conj);
            }
        }
        DnfFormula { disjuncts: out }
    }

    pub fn disjuncts(&self) -> &[Vec<Literal>] {
        &self.disjuncts
    }

    pub fn is_falsum(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn has_true_disjunct(&self) -> bool {
        self.disjuncts.iter().any(Vec::is_empty)
    }

    /// Distinct atoms occurring in the formula, sorted.
    pub fn atoms(&self) -> Vec<AtomId> {
        let mut atoms: Vec<AtomId> = self.disjuncts.iter().flatten().map(|l| l.atom).collect();
        atoms.sort();
        atoms.dedup();
        atoms
    }

    pub fn eval(&self, interp: &AtomSet) -> bool {
        self.disjuncts
            .iter()
            .any(|d| d.iter().all(|l| l.holds(interp)))
    }

    /// Strong Kleene value: an atom is true below the lower bound, false
    /// outside the upper bound, unknown otherwise.
    pub fn eval3(&self, pair: &ConsistentPair<AtomSet>) -> Truth {
        let atom = |l: &Literal| {
            let i = l.atom.index();
            let v = if pair.lower().contains(i) {
                Truth::True
            } else if !pair.upper().contains(i) {
                Truth::False
            } else {
                Truth::Unknown
            };
            if l.negated {
                !v
            } else {
                v
            }
        };
        self.disjuncts
            .iter()
            .map(|d| d.iter().map(atom).min().unwrap_or(Truth::True))
            .max()
            .unwrap_or(Truth::False)
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        DisplayDnf {
            formula: self,
            universe,
        }
    }
}

struct DisplayDnf<'a> {
    formula: &'a DnfFormula,
    universe: &'a Universe,
}

impl fmt::Display for DisplayDnf<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.formula.is_falsum() {
            return f.write_str("false");
        }
        for (i, d) in self.formula.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            if d.is_empty() {
                f.write_str("true")?;
                continue;
            }
            f.write_str("(")?;
            for (j, l) in d.iter().enumerate() {
                if j > 0 {
                    f.write_str(" & ")?;
                }
                if l.negated {
                    f.write_str("~")?;
                }
                f.write_str(self.universe.name(l.atom))?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Satisfiable iff some disjunct has no complementary pair of literals.
pub fn dnf_satisfiable(f: &DnfFormula) -> bool {
    f.disjuncts
        .iter()
        .any(|d| !d.iter().any(|l| d.contains(&l.complement())))
}

/// Limits and parameters for [`dnf_tautology`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TautologyConfig {
    /// Most distinct atoms a formula may have when falling back to enumeration.
    pub max_vars: usize,
    /// Formulas with at most this many disjuncts use the few-disjuncts procedure.
    pub k: usize,
}

impl Default for TautologyConfig {
    fn default() -> Self {
        TautologyConfig { max_vars: 20, k: 3 }
    }
}

/// Procedure used to decide a tautology.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TautologyMethod {
    /// No disjuncts, or a disjunct with no literals.
    Trivial,
    /// At most `k` disjuncts: search for one literal per disjunct that can be
    /// falsified simultaneously.
    FewDisjuncts,
    /// Every disjunct has at most two literals: 2-SAT on the negation.
    TwoLiterals,
    /// Every disjunct has at most one positive literal: the negation is dual-Horn.
    OnePositive,
    /// Every disjunct has at most one negative literal: the negation is Horn.
    OneNegative,
    Enumeration,
}

pub fn select_method(f: &DnfFormula, k: usize) -> TautologyMethod {
    let ds = &f.disjuncts;
    if ds.is_empty() || f.has_true_disjunct() {
        TautologyMethod::Trivial
    } else if ds.len() <= k {
        TautologyMethod::FewDisjuncts
    } else if ds.iter().all(|d| d.len() <= 2) {
        TautologyMethod::TwoLiterals
    } else if ds
        .iter()
        .all(|d| d.iter().filter(|l| !l.negated).count() <= 1)
    {
        TautologyMethod::OnePositive
    } else if ds
        .iter()
        .all(|d| d.iter().filter(|l| l.negated).count() <= 1)
    {
        TautologyMethod::OneNegative
    } else {
        TautologyMethod::Enumeration
    }
}

/// Whether `f` is true under every assignment to `vars`.
///
/// Only atoms occurring in `f` are enumerated, and only when none of the
/// polynomial procedures applies; that path is bounded by `cfg.max_vars`.
pub fn dnf_tautology(f: &DnfFormula, vars: &AtomSet, cfg: &TautologyConfig) -> Result<bool> {
    if let Some(a) = f.atoms().into_iter().find(|a| !vars.contains(a.index())) {
        return Err(Error::Precondition(format!(
            "formula mentions atom #{} outside the variable set",
            a.0
        )));
    }
    tautology_by(f, select_method(f, cfg.k), cfg.max_vars)
}

/// Decides a tautology with a specific procedure. The procedure must be
/// applicable to `f` (see [`select_method`]); `Enumeration` always is.
pub fn tautology_by(f: &DnfFormula, method: TautologyMethod, max_vars: usize) -> Result<bool> {
    let ds = &f.disjuncts;
    Ok(match method {
        TautologyMethod::Trivial => {
            if ds.is_empty() {
                false
            } else if f.has_true_disjunct() {
                true
            } else {
                return Err(Error::Precondition("formula is not trivial".into()));
            }
        }
        TautologyMethod::FewDisjuncts => !falsifiable_by_choice(ds),
        TautologyMethod::TwoLiterals => {
            if ds.iter().any(|d| d.len() > 2 || d.is_empty()) {
                return Err(Error::Precondition(
                    "disjunct with more than two literals".into(),
                ));
            }
            !two_sat(&negation(ds))
        }
        TautologyMethod::OnePositive => {
            // Each negated disjunct has at most one negative literal; flipping
            // every polarity gives Horn clauses.
            let clauses: Vec<Vec<Literal>> = negation(ds)
                .into_iter()
                .map(|c| c.into_iter().map(Literal::complement).collect())
                .collect();
            !horn_sat(&clauses)?
        }
        TautologyMethod::OneNegative => !horn_sat(&negation(ds))?,
        TautologyMethod::Enumeration => tautology_by_enumeration(f, max_vars)?,
    })
}

/// Truth-table check over the atoms occurring in `f`.
pub fn tautology_by_enumeration(f: &DnfFormula, max_vars: usize) -> Result<bool> {
    let atoms = f.atoms();
    if atoms.len() > max_vars.min(63) {
        return Err(Error::resource(
            "tautology variables",
            max_vars as u128,
            atoms.len() as u128,
        ));
    }
    let local: BTreeMap<AtomId, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let compiled: Vec<Vec<(usize, bool)>> = f
        .disjuncts
        .iter()
        .map(|d| d.iter().map(|l| (local[&l.atom], l.negated)).collect())
        .collect();
    for bits in 0u64..(1u64 << atoms.len()) {
        let sat = compiled
            .iter()
            .any(|d| d.iter().all(|&(v, neg)| (bits >> v & 1 == 1) != neg));
        if !sat {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Clauses `{~l : l in D}` whose conjunction is equivalent to `~f`.
fn negation(ds: &[Vec<Literal>]) -> Vec<Vec<Literal>> {
    ds.iter()
        .map(|d| d.iter().map(|l| l.complement()).collect())
        .collect()
}

/// Whether one literal can be picked from every disjunct so that all picks
/// are falsified by a single assignment.
fn falsifiable_by_choice(ds: &[Vec<Literal>]) -> bool {
    fn go(ds: &[Vec<Literal>], chosen: &mut Vec<Literal>) -> bool {
        let Some((first, rest)) = ds.split_first() else {
            return true;
        };
        // Already falsified by an earlier pick.
        if first.iter().any(|l| chosen.contains(&l.complement())) {
            return go(rest, chosen);
        }
        for &l in first {
            // Falsifying l means making its complement true; conflicts with a
            // pick that requires l true.
            if chosen.contains(&l) {
                continue;
            }
            chosen.push(l.complement());
            if go(rest, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(ds, &mut Vec::new())
}

fn lit_node(l: Literal) -> usize {
    l.atom.index() * 2 + usize::from(l.negated)
}

/// Satisfiability of clauses with at most two literals, via strongly
/// connected components of the implication graph.
fn two_sat(clauses: &[Vec<Literal>]) -> bool {
    let n_atoms = clauses
        .iter()
        .flatten()
        .map(|l| l.atom.index() + 1)
        .max()
        .unwrap_or(0);
    let n = n_atoms * 2;
    let mut graph = vec![Vec::new(); n];
    let mut rev = vec![Vec::new(); n];
    let mut edge = |a: Literal, b: Literal| {
        graph[lit_node(a)].push(lit_node(b));
        rev[lit_node(b)].push(lit_node(a));
    };
    for c in clauses {
        match c.as_slice() {
            [] => return false,
            [a] => edge(a.complement(), *a),
            [a, b] => {
                edge(a.complement(), *b);
                edge(b.complement(), *a);
            }
            _ => unreachable!("clause with more than two literals"),
        }
    }
    let comp = kosaraju(&graph, &rev);
    (0..n_atoms).all(|v| comp[2 * v] != comp[2 * v + 1])
}

fn kosaraju(graph: &[Vec<usize>], rev: &[Vec<usize>]) -> Vec<usize> {
    let n = graph.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if i < graph[v].len() {
                stack.push((v, i + 1));
                let w = graph[v][i];
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = next;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &rev[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Satisfiability of Horn clauses (at most one positive literal each) by
/// forward chaining from the all-false assignment.
fn horn_sat(clauses: &[Vec<Literal>]) -> Result<bool> {
    if clauses
        .iter()
        .any(|c| c.iter().filter(|l| !l.negated).count() > 1)
    {
        return Err(Error::Precondition(
            "clause with two positive literals".into(),
        ));
    }
    let mut truth: BTreeMap<AtomId, bool> = BTreeMap::new();
    loop {
        let mut changed = false;
        for c in clauses {
            let body_true = c
                .iter()
                .filter(|l| l.negated)
                .all(|l| truth.get(&l.atom).copied().unwrap_or(false));
            let head = c.iter().find(|l| !l.negated);
            if !body_true {
                continue;
            }
            match head {
                None => return Ok(false),
                Some(h) => {
                    if !truth.get(&h.atom).copied().unwrap_or(false) {
                        truth.insert(h.atom, true);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(true);
        }
    }
}

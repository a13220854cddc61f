use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dnf::DnfFormula;
use super::syntax::{AtomId, Literal, Program, Rule, Universe};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    General,
    Horn,
    PurelyNegative,
    Stratified,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Shape::General),
            "horn" => Ok(Shape::Horn),
            "purely-negative" => Ok(Shape::PurelyNegative),
            "stratified" => Ok(Shape::Stratified),
            other => Err(Error::Domain(format!("unknown program shape `{other}`"))),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::General => "general",
            Shape::Horn => "horn",
            Shape::PurelyNegative => "purely-negative",
            Shape::Stratified => "stratified",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RandomProgramParams {
    pub atoms: usize,
    pub rules: usize,
    pub max_body: usize,
    pub seed: u64,
    pub shape: Shape,
}

/// Atom names `a0, a1, ..` zero-padded so that name order is index order.
pub fn numbered_universe(n: usize) -> Universe {
    let width = n.saturating_sub(1).to_string().len();
    Universe::new((0..n).map(|i| format!("a{i:0width$}"))).expect("valid names")
}

/// A seeded random program. The universe always holds all `atoms` atoms.
pub fn gen_random_program(params: &RandomProgramParams) -> Result<Program> {
    let RandomProgramParams {
        atoms: n,
        rules: n_rules,
        max_body,
        seed,
        shape,
    } = *params;
    if n == 0 {
        return Err(Error::Domain(
            "a random program needs at least one atom".into(),
        ));
    }
    let universe = numbered_universe(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Strata for the stratified shape: negation only reaches strictly lower levels.
    let levels: Vec<usize> = match shape {
        Shape::Stratified => {
            let n_levels = rng.gen_range(1..=n.min(4));
            (0..n).map(|_| rng.gen_range(0..n_levels)).collect()
        }
        _ => vec![0; n],
    };

    let mut rules = Vec::with_capacity(n_rules);
    for _ in 0..n_rules {
        let head = rng.gen_range(0..n);
        let len = rng.gen_range(0..=max_body);
        let mut body = Vec::with_capacity(len);
        for _ in 0..len {
            let negated = match shape {
                Shape::Horn => false,
                Shape::PurelyNegative => true,
                Shape::General => rng.gen_bool(0.5),
                Shape::Stratified => levels.iter().any(|&l| l < levels[head]) && rng.gen_bool(0.5),
            };
            let candidates: Vec<usize> = (0..n)
                .filter(|&a| match shape {
                    Shape::Stratified if negated => levels[a] < levels[head],
                    Shape::Stratified => levels[a] <= levels[head],
                    _ => true,
                })
                .collect();
            let atom = *candidates
                .choose(&mut rng)
                .expect("head itself is a candidate");
            body.push(Literal {
                atom: AtomId(atom as u32),
                negated,
            });
        }
        rules.push(Rule::new(AtomId(head as u32), body));
    }
    Program::new(universe, rules)
}

/// A level mapping with `level(head) >= level(b)` for positive body atoms
/// and `level(head) > level(b)` for negative ones, if one exists.
pub fn stratification(program: &Program) -> Option<Vec<usize>> {
    let n = program.universe().len();
    let mut level = vec![0usize; n];
    loop {
        let mut changed = false;
        for r in program.rules() {
            let h = r.head.index();
            for l in r.body() {
                let need = level[l.atom.index()] + usize::from(l.negated);
                if level[h] < need {
                    level[h] = need;
                    changed = true;
                    if need > n {
                        return None;
                    }
                }
            }
        }
        if !changed {
            return Some(level);
        }
    }
}

/// The program built from a two-level formula, with the roles of its atoms.
#[derive(Clone, Debug)]
pub struct Sigma2Program {
    pub program: Program,
    pub p: AtomId,
    pub q: AtomId,
    /// Each existential atom paired with its fresh complement atom.
    pub xs: Vec<(AtomId, AtomId)>,
    pub ys: Vec<AtomId>,
}

/// Fresh name standing for the negation of an existential atom.
pub fn complement_name(x: &str) -> String {
    format!("{x}_neg")
}

/// Builds `P(phi)`: `x <- not x'` and `x' <- not x` for every existential
/// atom, `y <- phi'` for every universal atom, `p <- phi'` and
/// `q <- not p, not q`, where `phi'` replaces each `not x` by `x'`.
///
/// Each disjunct of `phi'` becomes one rule per head.
pub fn gen_sigma2_program(
    universe: &Universe,
    phi: &DnfFormula,
    xs: &[AtomId],
    ys: &[AtomId],
) -> Result<Sigma2Program> {
    let n = universe.len();
    let xs_set: BTreeSet<AtomId> = xs.iter().copied().collect();
    let ys_set: BTreeSet<AtomId> = ys.iter().copied().collect();
    if xs.iter().chain(ys).any(|a| a.index() >= n) {
        return Err(Error::Domain(
            "quantified atom outside the formula universe".into(),
        ));
    }
    if xs_set.len() != xs.len() || ys_set.len() != ys.len() || !xs_set.is_disjoint(&ys_set) {
        return Err(Error::Domain("quantified atoms must be distinct".into()));
    }
    if let Some(a) = phi
        .atoms()
        .into_iter()
        .find(|a| !xs_set.contains(a) && !ys_set.contains(a))
    {
        return Err(Error::Domain(format!(
            "formula atom `{}` is neither existential nor universal",
            universe.name(a)
        )));
    }

    let name = |a: &AtomId| universe.name(*a).to_string();
    let old: BTreeSet<String> = xs.iter().chain(ys).map(name).collect();
    let fresh: Vec<String> = xs
        .iter()
        .map(|x| complement_name(universe.name(*x)))
        .chain(["p".to_string(), "q".to_string()])
        .collect();
    if let Some(clash) = fresh.iter().find(|f| old.contains(*f)) {
        return Err(Error::Domain(format!(
            "atom `{clash}` is reserved for the generated program"
        )));
    }

    let target = Universe::new(old.iter().cloned().chain(fresh))?;
    let id = |s: &str| target.id(s).expect("interned");
    let p = id("p");
    let q = id("q");
    let pairs: Vec<(AtomId, AtomId)> = xs
        .iter()
        .map(|x| {
            (
                id(universe.name(*x)),
                id(&complement_name(universe.name(*x))),
            )
        })
        .collect();
    let new_ys: Vec<AtomId> = ys.iter().map(|y| id(universe.name(*y))).collect();

    let primed: Vec<Vec<Literal>> = phi
        .disjuncts()
        .iter()
        .map(|d| {
            d.iter()
                .map(|l| {
                    let nm = universe.name(l.atom);
                    if l.negated && xs_set.contains(&l.atom) {
                        Literal::pos(id(&complement_name(nm)))
                    } else {
                        Literal {
                            atom: id(nm),
                            negated: l.negated,
                        }
                    }
                })
                .collect()
        })
        .collect();

    let mut rules = Vec::new();
    for &(x, xc) in &pairs {
        rules.push(Rule::new(x, [Literal::neg(xc)]));
        rules.push(Rule::new(xc, [Literal::neg(x)]));
    }
    for &head in new_ys.iter().chain(std::iter::once(&p)) {
        for d in &primed {
            rules.push(Rule::new(head, d.iter().copied()));
        }
    }
    rules.push(Rule::new(q, [Literal::neg(p), Literal::neg(q)]));

    Ok(Sigma2Program {
        program: Program::new(target, rules)?,
        p,
        q,
        xs: pairs,
        ys: new_ys,
    })
}

/// Parses a DNF in prefix form:
/// `(or (and x1 y1) (and (not x1) (not y1)))`. A bare literal or a single
/// `(and ..)` is accepted; `(or)` is false and `(and)` is true.
pub fn parse_formula(text: &str) -> Result<(Universe, DnfFormula)> {
    #[derive(Debug)]
    enum Sx {
        Atom(String, usize),
        List(Vec<Sx>, usize),
    }

    fn err(column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;

    fn parse_sx(chars: &[char], pos: &mut usize) -> Result<Sx> {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
        let start = *pos + 1;
        match chars.get(*pos) {
            None => Err(err(start, "unexpected end of formula")),
            Some('(') => {
                *pos += 1;
                let mut items = Vec::new();
                loop {
                    while *pos < chars.len() && chars[*pos].is_whitespace() {
                        *pos += 1;
                    }
                    match chars.get(*pos) {
                        None => return Err(err(*pos + 1, "missing `)`")),
                        Some(')') => {
                            *pos += 1;
                            return Ok(Sx::List(items, start));
                        }
                        _ => items.push(parse_sx(chars, pos)?),
                    }
                }
            }
            Some(')') => Err(err(start, "unexpected `)`")),
            Some(_) => {
                let mut end = *pos;
                while end < chars.len() && !chars[end].is_whitespace() && !"()".contains(chars[end])
                {
                    end += 1;
                }
                let word: String = chars[*pos..end].iter().collect();
                *pos = end;
                Ok(Sx::Atom(word, start))
            }
        }
    }

    let sx = parse_sx(&chars, &mut pos)?;
    while pos < chars.len() && chars[pos].is_whitespace() {
        pos += 1;
    }
    if pos < chars.len() {
        return Err(err(pos + 1, "trailing input after formula"));
    }

    fn literal(sx: &Sx) -> Result<(String, bool)> {
        match sx {
            Sx::Atom(a, col) => {
                if super::syntax::is_atom_name(a) && !matches!(a.as_str(), "not" | "and" | "or") {
                    Ok((a.clone(), false))
                } else {
                    Err(err(*col, format!("`{a}` is not an atom")))
                }
            }
            Sx::List(items, col) => match items.as_slice() {
                [Sx::Atom(head, _), inner @ Sx::Atom(..)] if head == "not" => {
                    literal(inner).map(|(a, _)| (a, true))
                }
                _ => Err(err(*col, "expected an atom or `(not atom)`")),
            },
        }
    }

    fn conjunction(sx: &Sx) -> Result<Vec<(String, bool)>> {
        match sx {
            Sx::List(items, _) if matches!(items.first(), Some(Sx::Atom(h, _)) if h == "and") => {
                items[1..].iter().map(literal).collect()
            }
            other => Ok(vec![literal(other)?]),
        }
    }

    let raw: Vec<Vec<(String, bool)>> = match &sx {
        Sx::List(items, _) if matches!(items.first(), Some(Sx::Atom(h, _)) if h == "or") => {
            items[1..].iter().map(conjunction).collect::<Result<_>>()?
        }
        other => vec![conjunction(other)?],
    };

    let universe = Universe::new(raw.iter().flatten().map(|(a, _)| a.clone()))?;
    let formula = DnfFormula::new(raw.iter().map(|d| {
        d.iter().map(|(a, neg)| Literal {
            atom: universe.id(a).expect("interned"),
            negated: *neg,
        })
    }));
    Ok((universe, formula))
}

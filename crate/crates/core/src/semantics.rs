//! Standard and ultimate semantics of a program, packaged for output.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::aft::{
    compare_precision, consistent_pairs, kripke_kleene, prec_leq, well_founded, Approximator,
    ConsistentPair, Counted, Fixpoint,
};
use crate::error::{Error, Result};
use crate::lattice::{AtomSet, PowersetLattice};
use crate::lp::{
    dnf_tautology, fitting_approximator, normalize, stable_models, supported_models,
    tautology_by_enumeration, ultimate_lp, NormalProgram, Program, TautologyConfig, Truth,
};
use crate::oracle;

#[derive(
    Copy,
    Clone,
    Debug,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Kk,
    Wf,
    Stable,
    Supported,
    UltimateKk,
    UltimateWf,
    UltimateStable,
    All,
}

impl Method {
    pub const SINGLE: [Method; 7] = [
        Method::Kk,
        Method::Wf,
        Method::Stable,
        Method::Supported,
        Method::UltimateKk,
        Method::UltimateWf,
        Method::UltimateStable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Kk => "kk",
            Method::Wf => "wf",
            Method::Stable => "stable",
            Method::Supported => "supported",
            Method::UltimateKk => "ultimate-kk",
            Method::UltimateWf => "ultimate-wf",
            Method::UltimateStable => "ultimate-stable",
            Method::All => "all",
        }
    }

    pub fn is_ultimate(self) -> bool {
        matches!(
            self,
            Method::UltimateKk | Method::UltimateWf | Method::UltimateStable
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Enumeration caps shared by every command.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Free atoms allowed when a reduct body falls back to truth tables.
    pub max_taut_vars: usize,
    /// Atoms allowed when sweeping all interpretations for model sets.
    pub max_enum_atoms: usize,
    /// Atoms allowed when sweeping all consistent pairs.
    pub max_pair_sweep: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_taut_vars: 20,
            max_enum_atoms: 20,
            max_pair_sweep: 12,
        }
    }
}

impl Limits {
    pub fn tautology(&self) -> TautologyConfig {
        TautologyConfig {
            max_vars: self.max_taut_vars,
            ..TautologyConfig::default()
        }
    }

    fn pair_cap(&self) -> u128 {
        3u128.saturating_pow(self.max_pair_sweep as u32)
    }

    fn pair_sweep_guard(&self, np: &NormalProgram) -> Result<()> {
        if np.len() > self.max_pair_sweep {
            return Err(Error::Resource {
                resource: "atoms for a consistent-pair sweep",
                cap: self.max_pair_sweep as u128,
                needed: np.len() as u128,
                context: None,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub iterations: u64,
    pub evaluations: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticsResult {
    pub method: Method,
    pub atoms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<BTreeMap<String, Truth>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub models: Option<Vec<Vec<String>>>,
    /// Per-method results when `method` is `all`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub results: Option<Vec<SemanticsResult>>,
    pub stats: Stats,
}

impl SemanticsResult {
    fn pair(method: Method, np: &NormalProgram, fp: &Fixpoint<AtomSet>, evaluations: u64) -> Self {
        let u = np.universe();
        let (lo, hi) = (fp.pair.lower(), fp.pair.upper());
        let truth = u
            .atoms()
            .map(|a| {
                let i = a.index();
                let t = if lo.contains(i) {
                    Truth::True
                } else if !hi.contains(i) {
                    Truth::False
                } else {
                    Truth::Unknown
                };
                (u.name(a).to_string(), t)
            })
            .collect();
        SemanticsResult {
            method,
            atoms: u.names().to_vec(),
            lower: Some(u.names_of(lo)),
            upper: Some(u.names_of(hi)),
            truth: Some(truth),
            models: None,
            results: None,
            stats: Stats {
                iterations: fp.iterations as u64,
                evaluations,
                elapsed_ms: 0,
            },
        }
    }

    fn models(method: Method, np: &NormalProgram, sets: &[AtomSet], stats: Stats) -> Self {
        let mut models: Vec<Vec<String>> = sets.iter().map(|s| np.universe().names_of(s)).collect();
        models.sort();
        SemanticsResult {
            method,
            atoms: np.universe().names().to_vec(),
            lower: None,
            upper: None,
            truth: None,
            models: Some(models),
            results: None,
            stats,
        }
    }

    /// Same content with timing cleared, for comparisons.
    pub fn without_timing(&self) -> SemanticsResult {
        let mut r = self.clone();
        r.stats.elapsed_ms = 0;
        if let Some(rs) = &mut r.results {
            for x in rs.iter_mut() {
                *x = x.without_timing();
            }
        }
        r
    }

    fn same_semantics(&self, other: &SemanticsResult) -> bool {
        self.lower == other.lower && self.upper == other.upper && self.models == other.models
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out);
        out
    }

    fn write_text(&self, out: &mut String) {
        let _ = writeln!(out, "method: {}", self.method);
        if let Some(truth) = &self.truth {
            for (atom, t) in truth {
                let _ = writeln!(out, "{atom}: {t}");
            }
        }
        if let Some(models) = &self.models {
            let rendered: Vec<String> = models
                .iter()
                .map(|m| format!("[{}]", m.join(", ")))
                .collect();
            let _ = writeln!(out, "models: [{}]", rendered.join(", "));
        }
        if let Some(results) = &self.results {
            for r in results {
                out.push('\n');
                r.write_text(out);
            }
        } else {
            let _ = writeln!(
                out,
                "stats: iterations={} evaluations={}",
                self.stats.iterations, self.stats.evaluations
            );
        }
    }
}

fn pair_method<A>(
    method: Method,
    np: &NormalProgram,
    approx: A,
    well_founded_iter: bool,
) -> Result<SemanticsResult>
where
    A: Approximator<Lattice = PowersetLattice>,
{
    let counted = Counted::new(approx);
    let fp = if well_founded_iter {
        well_founded(&counted)?
    } else {
        kripke_kleene(&counted)?
    };
    Ok(SemanticsResult::pair(
        method,
        np,
        &fp,
        counted.evaluations(),
    ))
}

fn stable_method<A>(
    method: Method,
    np: &NormalProgram,
    approx: A,
    limits: &Limits,
) -> Result<SemanticsResult>
where
    A: Approximator<Lattice = PowersetLattice>,
{
    let counted = Counted::new(approx);
    let candidates = supported_models(np, limits.max_enum_atoms)?;
    let models = stable_models(&counted, np, limits.max_enum_atoms, false)?;
    let stats = Stats {
        iterations: candidates.len() as u64,
        evaluations: counted.evaluations(),
        elapsed_ms: 0,
    };
    Ok(SemanticsResult::models(method, np, &models, stats))
}

/// Computes one semantics (or all of them) of a normalized program.
pub fn solve(np: &NormalProgram, method: Method, limits: &Limits) -> Result<SemanticsResult> {
    let start = Instant::now();
    let taut = limits.tautology();
    let mut result = match method {
        Method::Kk => pair_method(method, np, fitting_approximator(np), false)?,
        Method::Wf => pair_method(method, np, fitting_approximator(np), true)?,
        Method::UltimateKk => pair_method(method, np, ultimate_lp(np, taut), false)?,
        Method::UltimateWf => pair_method(method, np, ultimate_lp(np, taut), true)?,
        Method::Stable => stable_method(method, np, fitting_approximator(np), limits)?,
        Method::UltimateStable => stable_method(method, np, ultimate_lp(np, taut), limits)?,
        Method::Supported => {
            let models = supported_models(np, limits.max_enum_atoms)?;
            let stats = Stats {
                iterations: 0,
                evaluations: 1u64 << np.len(),
                elapsed_ms: 0,
            };
            SemanticsResult::models(method, np, &models, stats)
        }
        Method::All => {
            let results = Method::SINGLE
                .iter()
                .map(|&m| solve(np, m, limits))
                .collect::<Result<Vec<_>>>()?;
            let stats = Stats {
                iterations: results.iter().map(|r| r.stats.iterations).sum(),
                evaluations: results.iter().map(|r| r.stats.evaluations).sum(),
                elapsed_ms: 0,
            };
            SemanticsResult {
                method,
                atoms: np.universe().names().to_vec(),
                lower: None,
                upper: None,
                truth: None,
                models: None,
                results: Some(results),
                stats,
            }
        }
    };
    result.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(result)
}

/// Side-by-side comparison of two programs over their joint universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub atoms: Vec<String>,
    pub tp_equal: bool,
    /// Whether each single semantics agrees, in [`Method::SINGLE`] order.
    pub agreement: Vec<(Method, bool)>,
}

impl Comparison {
    pub fn ultimate_equal(&self) -> bool {
        self.agreement
            .iter()
            .filter(|(m, _)| m.is_ultimate())
            .all(|(_, eq)| *eq)
    }

    pub fn standard_equal(&self) -> bool {
        self.agreement
            .iter()
            .filter(|(m, _)| !m.is_ultimate())
            .all(|(_, eq)| *eq)
    }

    pub fn render_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        let _ = writeln!(out, "atoms: [{}]", self.atoms.join(", "));
        let _ = writeln!(out, "tp-equal: {}", yn(self.tp_equal));
        let _ = writeln!(
            out,
            "ultimate semantics equal: {}",
            yn(self.ultimate_equal())
        );
        let _ = writeln!(
            out,
            "standard semantics equal: {}",
            yn(self.standard_equal())
        );
        for (m, eq) in &self.agreement {
            let _ = writeln!(out, "{m}: {}", if *eq { "equal" } else { "differ" });
        }
        out
    }
}

pub fn compare(a: &Program, b: &Program, limits: &Limits) -> Result<Comparison> {
    let universe = a.universe().union(b.universe());
    let na = normalize(&a.widen(&universe)?);
    let nb = normalize(&b.widen(&universe)?);
    let tp_equal = supported_guarded_sweep(&na, limits)?.all(|x| na.tp(&x) == nb.tp(&x));
    let mut agreement = Vec::new();
    for m in Method::SINGLE {
        let ra = solve(&na, m, limits)?;
        let rb = solve(&nb, m, limits)?;
        agreement.push((m, ra.same_semantics(&rb)));
    }
    Ok(Comparison {
        atoms: universe.names().to_vec(),
        tp_equal,
        agreement,
    })
}

fn supported_guarded_sweep<'a>(
    np: &'a NormalProgram,
    limits: &Limits,
) -> Result<impl Iterator<Item = AtomSet> + 'a> {
    if np.len() > limits.max_enum_atoms.min(63) {
        return Err(Error::Resource {
            resource: "enumerated atoms",
            cap: limits.max_enum_atoms as u128,
            needed: np.len() as u128,
            context: None,
        });
    }
    let n = np.len();
    Ok((0u64..(1u64 << n)).map(move |bits| AtomSet::from_bits(n, bits)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// Description of the first disagreement, if any.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub checks: Vec<CheckOutcome>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    fn record(&mut self, name: &'static str, witness: Option<String>) {
        self.checks.push(CheckOutcome { name, witness });
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match &c.witness {
                None => {
                    let _ = writeln!(out, "PASS {}", c.name);
                }
                Some(w) => {
                    let _ = writeln!(out, "FAIL {}: {w}", c.name);
                }
            }
        }
        out
    }
}

/// Perturbs the lower bound of the wrapped approximator by toggling the
/// first atom. Used to exercise the mismatch path of the oracle checks.
struct Corrupted<A>(A);

impl<A: Approximator<Lattice = PowersetLattice>> Approximator for Corrupted<A> {
    type Lattice = PowersetLattice;

    fn lattice(&self) -> &PowersetLattice {
        self.0.lattice()
    }
    fn lower(&self, pair: &ConsistentPair<AtomSet>) -> Result<AtomSet> {
        let mut lo = self.0.lower(pair)?;
        if !self.lattice().is_empty() {
            if lo.contains(0) {
                lo.remove(0);
            } else {
                lo.insert(0);
            }
        }
        Ok(lo)
    }
    fn upper(&self, pair: &ConsistentPair<AtomSet>) -> Result<AtomSet> {
        self.0.upper(pair)
    }
}

fn show(np: &NormalProgram, s: &AtomSet) -> String {
    format!("{{{}}}", np.universe().names_of(s).join(", "))
}

fn show_pair(np: &NormalProgram, p: &ConsistentPair<AtomSet>) -> String {
    format!("({}, {})", show(np, p.lower()), show(np, p.upper()))
}

fn show_sets(np: &NormalProgram, sets: &[AtomSet]) -> String {
    let parts: Vec<String> = sets.iter().map(|s| show(np, s)).collect();
    format!("[{}]", parts.join(", "))
}

/// Runs every oracle-versus-fast-path comparison on one program.
///
/// `corrupt` deliberately breaks the fast ultimate approximator so that the
/// mismatch reporting can be tested end to end.
pub fn oracle_check(np: &NormalProgram, limits: &Limits, corrupt: bool) -> Result<OracleReport> {
    limits.pair_sweep_guard(np)?;
    let taut = limits.tautology();
    let fast = ultimate_lp(np, taut);
    if corrupt {
        check_with(np, limits, &Corrupted(fast))
    } else {
        check_with(np, limits, &fast)
    }
}

fn check_with<U>(np: &NormalProgram, limits: &Limits, ult: &U) -> Result<OracleReport>
where
    U: Approximator<Lattice = PowersetLattice>,
{
    let lat = np.lattice();
    let fit = fitting_approximator(np);
    let taut = limits.tautology();
    let mut report = OracleReport::default();

    let mut witness = None;
    for p in consistent_pairs(&lat) {
        let (lo, hi) = (ult.lower(&p)?, ult.upper(&p)?);
        let brute = oracle::brute_ultimate(np, p.lower(), p.upper(), limits.max_pair_sweep)?;
        if &lo != brute.lower() || &hi != brute.upper() {
            witness = Some(format!(
                "at {}: fast ({}, {}), brute {}",
                show_pair(np, &p),
                show(np, &lo),
                show(np, &hi),
                show_pair(np, &brute)
            ));
            break;
        }
    }
    report.record("ultimate-vs-brute", witness);

    let mut witness = None;
    'pairs: for p in consistent_pairs(&lat) {
        let free = p.upper().difference(p.lower());
        for atom in np.universe().atoms() {
            let body = np.reduct_body(atom, p.lower(), p.upper());
            let fast = dnf_tautology(&body, &free, &taut)?;
            let slow = tautology_by_enumeration(&body, limits.max_taut_vars)?;
            if fast != slow {
                witness = Some(format!(
                    "reduct body of `{}` at {}: fast {fast}, enumeration {slow}",
                    np.universe().name(atom),
                    show_pair(np, &p)
                ));
                break 'pairs;
            }
        }
    }
    report.record("tautology-fast-vs-enumeration", witness);

    let supported = supported_models(np, limits.max_enum_atoms)?;
    let brute_supported = oracle::brute_supported_models(np, limits.max_enum_atoms)?;
    report.record(
        "supported-vs-brute",
        (supported != brute_supported).then(|| {
            format!(
                "fast {}, brute {}",
                show_sets(np, &supported),
                show_sets(np, &brute_supported)
            )
        }),
    );

    let cand_cap = 1u128 << limits.max_enum_atoms.min(63);
    for (name, fast, brute) in [
        (
            "ultimate-stable-vs-brute",
            stable_models(ult, np, limits.max_enum_atoms, false)?,
            oracle::brute_exact_stable(ult, cand_cap)?,
        ),
        (
            "standard-stable-vs-brute",
            stable_models(&fit, np, limits.max_enum_atoms, false)?,
            oracle::brute_exact_stable(&fit, cand_cap)?,
        ),
    ] {
        let stray: Vec<AtomSet> = fast
            .iter()
            .filter(|m| !brute_supported.contains(m))
            .cloned()
            .collect();
        let witness = if fast != brute {
            Some(format!(
                "fast {}, brute {}",
                show_sets(np, &fast),
                show_sets(np, &brute)
            ))
        } else if !stray.is_empty() {
            Some(format!(
                "stable but not supported: {}",
                show_sets(np, &stray)
            ))
        } else {
            None
        };
        report.record(name, witness);
    }

    let verdict = compare_precision(&fit, ult, limits.pair_cap())?;
    report.record(
        "fitting-at-most-ultimate",
        (!verdict.is_at_most()).then(|| format!("verdict {verdict:?}")),
    );

    let kk_f = kripke_kleene(&fit)?.pair;
    let wf_f = well_founded(&fit)?.pair;
    let (kk_u, wf_u) = match (kripke_kleene(ult), well_founded(ult)) {
        (Ok(k), Ok(w)) => (k.pair, w.pair),
        (Err(e), _) | (_, Err(e)) if matches!(e, Error::Resource { .. }) => return Err(e),
        (Err(e), _) | (_, Err(e)) => {
            report.record(
                "fixpoint-ordering",
                Some(format!("ultimate iteration failed: {e}")),
            );
            return Ok(report);
        }
    };
    let ordered = [
        ("KK(fitting) <=p WF(fitting)", &kk_f, &wf_f),
        ("KK(ultimate) <=p WF(ultimate)", &kk_u, &wf_u),
        ("KK(fitting) <=p KK(ultimate)", &kk_f, &kk_u),
        ("WF(fitting) <=p WF(ultimate)", &wf_f, &wf_u),
    ];
    let mut witness = None;
    for (what, p, q) in ordered {
        if !prec_leq(&lat, p, q)? {
            witness = Some(format!(
                "{what} fails: {} vs {}",
                show_pair(np, p),
                show_pair(np, q)
            ));
            break;
        }
    }
    report.record("fixpoint-ordering", witness);
    Ok(report)
}

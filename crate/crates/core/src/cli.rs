//! Command-line front end. [`run`] returns the process exit code so the
//! binary stays a thin wrapper and the commands can be tested in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::lp::{
    classify_ek, gen_random_program, gen_sigma2_program, normalize, parse, parse_formula, Program,
    RandomProgramParams, Shape,
};
use crate::semantics::{compare, oracle_check, solve, Limits, Method};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "ultimate",
    version,
    about = "Standard and ultimate semantics of propositional normal logic programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct CapArgs {
    /// Free atoms allowed when deciding a reduct body by truth tables.
    #[arg(long, default_value_t = 20)]
    max_taut_vars: usize,
    /// Atoms allowed when enumerating interpretations.
    #[arg(long, default_value_t = 20)]
    max_enum_atoms: usize,
    /// Atoms allowed when sweeping every consistent pair.
    #[arg(long, default_value_t = 12)]
    max_pair_sweep: usize,
}

impl From<CapArgs> for Limits {
    fn from(c: CapArgs) -> Self {
        Limits {
            max_taut_vars: c.max_taut_vars,
            max_enum_atoms: c.max_enum_atoms,
            max_pair_sweep: c.max_pair_sweep,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a semantics of a program file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Compare the one-step operators and semantics of two programs.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Cross-check fast procedures against brute-force references.
    OracleCheck {
        /// Program file; omit when using --random.
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Check this many random programs instead of a file.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest universe for random programs.
        #[arg(long, default_value_t = 6)]
        atoms: usize,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, hide = true)]
        corrupt_fast_path: bool,
    },
    /// Report, per atom, which tractability condition it satisfies.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Generate programs.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Program whose ultimate stable models witness an exists-forall formula.
    ///
    /// The formula is a DNF in prefix syntax, for example
    /// `(or (and x1 y1) (and (not x1) (not y1)))`. A bare literal or a
    /// single `(and ...)` is also accepted; `(or)` is false and `(and)` true.
    /// The atoms `p`, `q` and `<x>_neg` for existential `x` are reserved.
    Sigma2 {
        #[arg(long)]
        phi: String,
        /// Existential atoms, comma separated.
        #[arg(long, default_value = "")]
        xs: String,
        /// Universal atoms, comma separated.
        #[arg(long, default_value = "")]
        ys: String,
    },
    /// Seeded random program.
    Random {
        #[arg(long, default_value_t = 5)]
        atoms: usize,
        #[arg(long, default_value_t = 10)]
        rules: usize,
        #[arg(long, default_value_t = 3)]
        max_body: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Shape::General)]
        shape: Shape,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = out.write_all(text.as_bytes());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path) -> Result<Program> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Internal(format!("writing output: {e}")))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Solve {
            file,
            method,
            format,
            caps,
        } => {
            let np = normalize(&load(&file)?);
            let result = solve(&np, method, &caps.into())?;
            let text = match format {
                Format::Text => result.render_text(),
                Format::Json => result.to_json() + "\n",
            };
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Compare {
            first,
            second,
            caps,
        } => {
            let c = compare(&load(&first)?, &load(&second)?, &caps.into())?;
            emit(out, &c.render_text())?;
            Ok(EXIT_OK)
        }
        Command::OracleCheck {
            file,
            random,
            seed,
            atoms,
            caps,
            corrupt_fast_path,
        } => {
            let limits: Limits = caps.into();
            match (file, random) {
                (Some(path), _) => {
                    let np = normalize(&load(&path)?);
                    let report = oracle_check(&np, &limits, corrupt_fast_path)?;
                    emit(out, &report.render_text())?;
                    Ok(if report.passed() {
                        EXIT_OK
                    } else {
                        EXIT_MISMATCH
                    })
                }
                (None, Some(count)) => {
                    if atoms == 0 {
                        return Err(Error::Domain("--atoms must be at least 1".into()));
                    }
                    for i in 0..count {
                        let n = 1 + i % atoms;
                        let params = RandomProgramParams {
                            atoms: n,
                            rules: 2 * n,
                            max_body: 3,
                            seed: seed.wrapping_add(i as u64),
                            shape: Shape::General,
                        };
                        let program = gen_random_program(&params)?;
                        let report =
                            oracle_check(&normalize(&program), &limits, corrupt_fast_path)?;
                        if !report.passed() {
                            emit(out, &report.render_text())?;
                            let _ = writeln!(
                                err,
                                "mismatch on random program {i} (seed {}):\n{program}",
                                params.seed
                            );
                            return Ok(EXIT_MISMATCH);
                        }
                    }
                    emit(out, &format!("PASS {count} random programs\n"))?;
                    Ok(EXIT_OK)
                }
                (None, None) => Err(Error::Domain(
                    "a program file or --random is required".into(),
                )),
            }
        }
        Command::Classify { file, k } => {
            let report = classify_ek(&load(&file)?, k);
            let mut text = format!("k: {k}\n");
            for (atom, cond) in &report.atoms {
                match cond {
                    Some(c) => text += &format!("{atom}: {c}\n"),
                    None => text += &format!("{atom}: no condition holds\n"),
                }
            }
            if report.member {
                text += "member: yes\n";
                text += "note: the ultimate well-founded model of a member is computable in polynomial time\n";
            } else {
                let bad: Vec<&str> = report.violations().collect();
                text += &format!("member: no (violating atoms: {})\n", bad.join(", "));
            }
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Gen(GenCommand::Sigma2 { phi, xs, ys }) => {
            let (universe, formula) = parse_formula(&phi)?;
            let ids = |list: &str| {
                list.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        universe.id(s).ok_or_else(|| {
                            Error::Domain(format!("atom `{s}` does not occur in the formula"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            };
            let gadget = gen_sigma2_program(&universe, &formula, &ids(&xs)?, &ids(&ys)?)?;
            emit(out, &gadget.program.to_string())?;
            Ok(EXIT_OK)
        }
        Command::Gen(GenCommand::Random {
            atoms,
            rules,
            max_body,
            seed,
            shape,
        }) => {
            let program = gen_random_program(&RandomProgramParams {
                atoms,
                rules,
                max_body,
                seed,
                shape,
            })?;
            emit(out, &program.to_string())?;
            Ok(EXIT_OK)
        }
    }
}

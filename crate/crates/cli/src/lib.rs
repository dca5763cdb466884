//! The `tpa` command line: argument parsing, command dispatch, and human or
//! JSON rendering of reports.
//!
//! [`run`] never touches the process: it returns the exit code and the text
//! destined for stdout and stderr, so tests can drive it directly.

mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand};

use tpa_core::generic::{self, EnumerationLimits};
use tpa_core::io::{self, PathOrder};
use tpa_core::oracle::{self, MatrixModule};
use tpa_core::{Error, MonomialModule, TruncatedAlgebra};

pub use report::{Report, REPORT_VERSION};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 1;
/// Exit status when two independent computations disagree.
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tpa", version, about = "Homological invariants of truncated path algebras")]
struct Cli {
    /// Emit a versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Read written paths first-arrow-first instead of right-to-left.
    #[arg(long, global = true)]
    left_to_right: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Longest paths, cyclebound vertices, simple modules, finitistic
    /// dimension and the modules T_i.
    Analyze { quiver: PathBuf },
    /// Projective dimension of a cyclic ideal, a simple module, or a module.
    Pdim {
        #[command(subcommand)]
        target: PdimTarget,
    },
    /// Syzygies of a module as sums of cyclic ideals.
    Syzygy {
        quiver: PathBuf,
        module: PathBuf,
        /// Number of syzygies to compute.
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// Realizability, layer decomposition and generic projective dimension
    /// of a radical layering.
    Generic(SeqArgs),
    /// Projective dimensions attained on the closure of a stratum.
    Spectrum(SeqArgs),
    /// Compares the spectrum with an enumeration of all layerings above.
    SpectrumCheck {
        #[command(flatten)]
        seq: SeqArgs,
        /// Largest total dimension the enumeration accepts.
        #[arg(long, default_value_t = EnumerationLimits::default().max_dimension)]
        max_dimension: u64,
    },
    /// Compares the formula with an exact minimal projective resolution.
    Oracle {
        quiver: PathBuf,
        module: PathBuf,
        /// Number of syzygies to compute before giving up.
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Layered graph of a module's skeleton.
    Graph {
        quiver: PathBuf,
        module: PathBuf,
        /// Emit Graphviz source.
        #[arg(long)]
        dot: bool,
        /// Include critical paths as dashed edges.
        #[arg(long)]
        critical: bool,
    },
}

#[derive(Debug, Subcommand)]
enum PdimTarget {
    /// The left ideal generated by a path such as `a9*a8*b7`.
    Path { expr: String, quiver: PathBuf },
    /// The simple module at a vertex.
    Simple { vertex: String, quiver: PathBuf },
    /// A module given in a `.mod` file.
    Module { quiver: PathBuf, module: PathBuf },
}

#[derive(Debug, Args)]
struct SeqArgs {
    quiver: PathBuf,
    sequence: PathBuf,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

struct Context {
    json: bool,
    order: PathOrder,
}

/// A failure tied to an input file.
struct InputError(String);

impl InputError {
    fn at(path: &FsPath, e: Error) -> Self {
        InputError(format!("{}: {e}", path.display()))
    }
}

fn read(path: &FsPath) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &FsPath) -> Result<TruncatedAlgebra, InputError> {
    io::parse_quiver(&read(path)?).map_err(|e| InputError::at(path, e))
}

fn load_module(ctx: &Context, alg: &TruncatedAlgebra, path: &FsPath) -> Result<MonomialModule, InputError> {
    io::parse_module(alg, &read(path)?, ctx.order).map_err(|e| InputError::at(path, e))
}

fn load_sequence(alg: &TruncatedAlgebra, path: &FsPath) -> Result<tpa_core::SemisimpleSequence, InputError> {
    io::parse_sequence(alg, &read(path)?).map_err(|e| InputError::at(path, e))
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let ctx = Context {
        json: cli.json,
        order: if cli.left_to_right {
            PathOrder::LeftToRight
        } else {
            PathOrder::RightToLeft
        },
    };
    match execute(&ctx, cli.command) {
        Ok((report, code)) => {
            let stdout = if ctx.json {
                report.to_json()
            } else {
                report.to_human()
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(InputError(message)) => Outcome::input_error(message),
    }
}

fn execute(ctx: &Context, command: Command) -> Result<(Report, i32), InputError> {
    match command {
        Command::Analyze { quiver } => {
            let alg = load_algebra(&quiver)?;
            Ok((report::analyze(&alg), EXIT_OK))
        }
        Command::Pdim { target } => match target {
            PdimTarget::Path { expr, quiver } => {
                let alg = load_algebra(&quiver)?;
                let q = io::parse_path(&alg, &expr, ctx.order).map_err(|e| InputError(format!("path `{expr}`: {e}")))?;
                let pdim = alg.pdim_cyclic(&q).map_err(|e| InputError(format!("path `{expr}`: {e}")))?;
                Ok((report::pdim_path(&alg, &q, pdim), EXIT_OK))
            }
            PdimTarget::Simple { vertex, quiver } => {
                let alg = load_algebra(&quiver)?;
                let v = alg
                    .quiver()
                    .vertex_by_name(&vertex)
                    .ok_or_else(|| InputError(format!("unknown vertex `{vertex}`")))?;
                Ok((report::pdim_simple(&alg, v), EXIT_OK))
            }
            PdimTarget::Module { quiver, module } => {
                let alg = load_algebra(&quiver)?;
                let m = load_module(ctx, &alg, &module)?;
                Ok((report::pdim_module(&alg, &m), EXIT_OK))
            }
        },
        Command::Syzygy {
            quiver,
            module,
            iterate,
        } => {
            let alg = load_algebra(&quiver)?;
            let m = load_module(ctx, &alg, &module)?;
            let steps = m
                .syzygy_iterates(&alg, iterate)
                .map_err(|e| InputError(format!("{}: {e}", module.display())))?;
            Ok((report::syzygy(&alg, &m, &steps), EXIT_OK))
        }
        Command::Generic(seq) => {
            let alg = load_algebra(&seq.quiver)?;
            let s = load_sequence(&alg, &seq.sequence)?;
            let r = report::generic(&alg, &s).map_err(|e| InputError::at(&seq.sequence, e))?;
            Ok((r, EXIT_OK))
        }
        Command::Spectrum(seq) => {
            let alg = load_algebra(&seq.quiver)?;
            let s = load_sequence(&alg, &seq.sequence)?;
            let spectrum = generic::spectrum(&alg, &s).map_err(|e| InputError::at(&seq.sequence, e))?;
            Ok((report::spectrum(&spectrum), EXIT_OK))
        }
        Command::SpectrumCheck { seq, max_dimension } => {
            let alg = load_algebra(&seq.quiver)?;
            let s = load_sequence(&alg, &seq.sequence)?;
            let started = std::time::Instant::now();
            let check = generic::spectrum_check(&alg, &s, EnumerationLimits { max_dimension })
                .map_err(|e| InputError::at(&seq.sequence, e))?;
            let code = if check.agrees() { EXIT_OK } else { EXIT_MISMATCH };
            Ok((report::spectrum_check(&check, started.elapsed()), code))
        }
        Command::Oracle {
            quiver,
            module,
            max_depth,
        } => {
            let alg = load_algebra(&quiver)?;
            let m = load_module(ctx, &alg, &module)?;
            let depth = max_depth.unwrap_or_else(|| oracle::default_depth(&alg));
            let formula = m.pdim(&alg);
            let trace = oracle::pdim_upto(&alg, &MatrixModule::from_monomial(&alg, &m), depth);
            let agrees = trace.result.matches(formula);
            let code = if agrees { EXIT_OK } else { EXIT_MISMATCH };
            Ok((report::oracle(formula, &trace, depth), code))
        }
        Command::Graph {
            quiver,
            module,
            dot,
            critical,
        } => {
            let alg = load_algebra(&quiver)?;
            let m = load_module(ctx, &alg, &module)?;
            let graph = m.layered_graph(&alg, critical);
            if dot && !ctx.json {
                let name = module.file_stem().map_or("module".into(), |s| s.to_string_lossy().into_owned());
                return Ok((Report::raw("graph", graph.to_dot(&name)), EXIT_OK));
            }
            let mut text = String::new();
            for n in &graph.nodes {
                let _ = writeln!(
                    text,
                    "{}{} [{}]{}",
                    "  ".repeat(n.level),
                    n.label,
                    n.id,
                    if n.critical { " (critical)" } else { "" }
                );
            }
            Ok((Report::graph(&graph, text), EXIT_OK))
        }
    }
}

//! Command-line front end: `present`, `pcm` and `wp` over a chain file.
//!
//! Exit codes: 0 success, 2 parse error, 3 guard exceeded, 4 failed
//! precondition, 1 anything else.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use limitfold_core::{Error, ExtensionChain, Limits};

use crate::files::{load_chain, load_subgroup};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{error}")]
    Guard { error: Error, report: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> CliError {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Guard { .. } => 3,
            CliError::Core(e) => match e {
                Error::Parse(_) => 2,
                Error::GuardExceeded { .. } => 3,
                Error::TrivialElement(_) | Error::ProperPower(_) | Error::NotSupported(_) => 4,
                _ => 1,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "limitfold",
    about = "Subgroup presentations, power coset membership and the word problem in centralizer extension chains"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Chain file: `base <k>` then `extend g=<word> rank <r>` lines.
    #[arg(long, global = true)]
    pub chain: Option<PathBuf>,
    /// Subgroup file: one generator word per line.
    #[arg(long, global = true)]
    pub subgroup: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Print the B-path witnessing a positive answer.
    #[arg(long, global = true)]
    pub witness: bool,
    /// Print the hypothesis report and the graph the answer was read in.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Budget for folding moves and search nodes.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Presentation of the subgroup generated by the subgroup file.
    Present,
    /// Least |m| > 0 with g^m in xH, or NO.
    Pcm,
    /// Whether w is trivial.
    Wp,
}

fn require<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn report(chain: &ExtensionChain) -> String {
    chain.report().iter().map(|e| format!("{e}\n")).collect()
}

/// Runs one command, returning its standard output.
pub fn run(args: &Args) -> Result<String, CliError> {
    let limits = args.budget.map_or_else(Limits::default, |n| Limits { moves: n, nodes: n });
    let chain = load_chain(require(&args.chain, "chain")?, limits)?;
    execute(args, &chain).map_err(|e| match e {
        CliError::Core(error @ Error::GuardExceeded { .. }) => CliError::Guard { error, report: report(&chain) },
        e => e,
    })
}

fn execute(args: &Args, chain: &ExtensionChain) -> Result<String, CliError> {
    let level = chain.top();
    let group = chain.group(level);
    let mut out = String::new();
    if args.trace {
        out.push_str(&report(chain));
    }
    match args.command {
        Command::Wp => {
            let trivial = chain.word_problem(level, require(&args.w, "w")?)?;
            out.push_str(if trivial { "TRIVIAL\n" } else { "NONTRIVIAL\n" });
        }
        Command::Present => {
            let h = load_subgroup(chain, level, require(&args.subgroup, "subgroup")?)?;
            let p = chain.subgroup_presentation(level, &h)?;
            let _ = write!(out, "{}", p.presentation);
            for (name, y) in p.presentation.generators.iter().zip(&p.witnesses) {
                let _ = writeln!(out, "{name} = {}", chain.print_element(level, y)?);
            }
        }
        Command::Pcm => {
            let h = load_subgroup(chain, level, require(&args.subgroup, "subgroup")?)?;
            let x = chain.parse_element(level, require(&args.x, "x")?)?;
            let g = chain.parse_element(level, require(&args.g, "g")?)?;
            if group.is_identity(&g)? {
                return Err(Error::TrivialElement("g").into());
            }
            if level == 0 || !(args.witness || args.trace) {
                match chain.power_coset(level, &h, &x, &g)? {
                    Some(m) => {
                        let _ = writeln!(out, "YES m={m}");
                    }
                    None => out.push_str("NO\n"),
                }
            } else {
                match chain.power_coset_witness(level, &h, &x, &g)? {
                    Some(ans) => {
                        let _ = writeln!(out, "YES m={}", ans.m);
                        if args.witness {
                            let _ = writeln!(out, "witness {}", format_bpath(&ans.witness));
                        }
                        if args.trace {
                            out.push_str(&ans.graph.to_text());
                        }
                    }
                    None => out.push_str("NO\n"),
                }
            }
        }
    }
    Ok(out)
}

fn format_bpath(q: &limitfold_core::BPath) -> String {
    let mut s = format!("u{} {}", q.start, q.elems[0]);
    for (f, y) in q.edges.iter().zip(&q.elems[1..]) {
        let _ = write!(s, " ; f{f} ; {y}");
    }
    let _ = write!(s, " u{}", q.end);
    s
}

//! Command-line front end. [`run`] takes argv and output sinks so the binary
//! and the tests share one code path.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::oracle::{brute_sequence, compare_with_cap, DEFAULT_CAP};
use crate::perm::{Basis, Permutation};
use crate::scheme::{
    build_scheme_with, eval_sequence, export, import_json, BuildOptions, BuildOutcome,
    ExportFormat, Mode, Scheme, DEFAULT_MAX_DEPTH,
};
use crate::triage::{triage, DEFAULT_SB_MAX, DEFAULT_SIMPLE_CAP};

pub const EXIT_OK: u8 = 0;
/// `verify` found a count mismatch.
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
/// No scheme was found at the requested depth.
pub const EXIT_FRONTIER: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "permscheme", version, about = "Enumeration schemes for permutation classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find or evaluate enumeration schemes.
    #[command(subcommand)]
    Scheme(SchemeCommand),
    /// Brute-force counts.
    #[command(subcommand)]
    Count(CountCommand),
    /// Build a scheme, evaluate it and compare against brute force.
    Verify(VerifyArgs),
    /// Check which other enumeration methods apply.
    Triage(TriageArgs),
}

#[derive(Subcommand, Debug)]
enum SchemeCommand {
    /// Search for a scheme breadth-first from the empty permutation.
    Find(FindArgs),
    /// Print s_0..s_N from a stored or freshly built scheme.
    Eval(EvalArgs),
}

#[derive(Subcommand, Debug)]
enum CountCommand {
    /// Count avoiders by walking the pattern-avoidance tree.
    Brute(BruteArgs),
}

#[derive(Args, Debug)]
struct FindArgs {
    /// Comma-separated basis, e.g. "1342,1432".
    #[arg(long, allow_hyphen_values = true)]
    basis: String,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    /// Use the original J(π)-based reducibility test.
    #[arg(long)]
    classic: bool,
    /// Write the scheme JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["scheme", "basis"])))]
struct EvalArgs {
    #[arg(long)]
    scheme: Option<PathBuf>,
    #[arg(long)]
    basis: Option<String>,
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug)]
struct BruteArgs {
    #[arg(long)]
    basis: String,
    #[arg(long)]
    n: usize,
    /// Acknowledge running brute force beyond n = 10.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    basis: String,
    #[arg(long)]
    n: usize,
    /// Acknowledge running brute force beyond n = 10.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args, Debug)]
struct TriageArgs {
    #[arg(long)]
    basis: String,
    #[arg(long, default_value_t = DEFAULT_SB_MAX)]
    sb_max: usize,
    #[arg(long, default_value_t = DEFAULT_SIMPLE_CAP)]
    simple_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs one command; returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn parse_basis(text: &str) -> Result<Basis> {
    text.parse()
}

fn brute_cap(n: usize, force: bool) -> usize {
    if force {
        n.max(DEFAULT_CAP)
    } else {
        DEFAULT_CAP
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> std::result::Result<u8, Failure> {
    match command {
        Command::Scheme(SchemeCommand::Find(args)) => find(args, out),
        Command::Scheme(SchemeCommand::Eval(args)) => {
            let scheme = match (&args.scheme, &args.basis) {
                (Some(path), _) => import_json(&fs::read_to_string(path)?)?,
                (None, Some(basis)) => {
                    match build_scheme_with(&parse_basis(basis)?, &BuildOptions::default())? {
                        BuildOutcome::Scheme(s) => s,
                        BuildOutcome::Frontier(f) => {
                            return report_frontier(DEFAULT_MAX_DEPTH, &f, out)
                        }
                    }
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            for (n, c) in eval_sequence(&scheme, args.n)?.iter().enumerate() {
                writeln!(out, "{n}: {c}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Count(CountCommand::Brute(args)) => {
            let basis = parse_basis(&args.basis)?;
            let counts = brute_sequence(&basis, args.n, brute_cap(args.n, args.force))?;
            for (n, c) in counts.iter().enumerate() {
                writeln!(out, "{n}: {c}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let basis = parse_basis(&args.basis)?;
            let scheme = match build_scheme_with(&basis, &BuildOptions::default())? {
                BuildOutcome::Scheme(s) => s,
                BuildOutcome::Frontier(f) => return report_frontier(DEFAULT_MAX_DEPTH, &f, out),
            };
            let report = compare_with_cap(&basis, args.n, &scheme, brute_cap(args.n, args.force))?;
            writeln!(out, "{report}")?;
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Triage(args) => {
            let basis = parse_basis(&args.basis)?;
            let verdict = triage(&basis, args.sb_max, args.simple_cap)?;
            match args.format {
                Format::Table => writeln!(out, "{verdict}")?,
                Format::Json => writeln!(out, "{}", verdict.to_json())?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn find(args: FindArgs, out: &mut dyn Write) -> std::result::Result<u8, Failure> {
    let basis = parse_basis(&args.basis)?;
    let opts = BuildOptions {
        max_depth: args.max_depth,
        mode: if args.classic { Mode::Classic } else { Mode::Extended },
    };
    let scheme: Scheme = match build_scheme_with(&basis, &opts)? {
        BuildOutcome::Scheme(s) => s,
        BuildOutcome::Frontier(f) => return report_frontier(args.max_depth, &f, out),
    };
    let json = export(&scheme, ExportFormat::Json);
    match &args.out {
        Some(path) => {
            fs::write(path, &json)?;
            writeln!(
                out,
                "scheme for Av({}): {} nodes, depth {}",
                scheme.basis(),
                scheme.len(),
                scheme.depth()
            )?;
        }
        None => out.write_all(&json)?,
    }
    if let Some(path) = &args.dot {
        fs::write(path, export(&scheme, ExportFormat::Dot))?;
    }
    Ok(EXIT_OK)
}

fn report_frontier(depth: usize, frontier: &[Permutation], out: &mut dyn Write) -> std::result::Result<u8, Failure> {
    writeln!(
        out,
        "no scheme found at max depth {depth}; {} ES⁺-irreducible permutations of length {depth}:",
        frontier.len()
    )?;
    for p in frontier {
        writeln!(out, "{p}")?;
    }
    Ok(EXIT_FRONTIER)
}

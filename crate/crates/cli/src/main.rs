use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subset_base::{ActionSpec, Group};

mod basesize;
mod cell;
mod construct;
mod exit;
mod selftest;
mod table;
mod verify;

use exit::{Failure, Outcome};

/// Base sizes and minimum bases for symmetric and alternating groups acting
/// on r-subsets.
#[derive(Parser)]
#[command(name = "subset-base", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum base size with its witness and lower bound.
    Basesize(BasesizeArgs),
    /// Build and verify a minimum base, written as JSON.
    Construct(ConstructArgs),
    /// Check whether a family read from JSON is a base.
    Verify(VerifyArgs),
    /// Base sizes over a range of (n, r), as CSV or JSON.
    Table(TableArgs),
    /// Run the built-in regression and oracle suites.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    #[value(name = "S")]
    S,
    #[value(name = "A")]
    A,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::S => Group::Symmetric,
            GroupArg::A => Group::Alternating,
        }
    }
}

#[derive(Args)]
struct ActionArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    r: u64,
}

impl ActionArgs {
    fn spec(&self, uniform: bool) -> Outcome<ActionSpec> {
        Ok(ActionSpec::new(self.group.into(), self.n, self.r, uniform)?)
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Method {
    Auto,
    Theorem,
    ClosedForm,
    Bounds,
}

#[derive(Args)]
struct BasesizeArgs {
    #[command(flatten)]
    action: ActionArgs,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    action: ActionArgs,
    /// Allow sets of size below r.
    #[arg(long)]
    at_most_r: bool,
    /// Write the family here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the intermediate hypergraph.
    #[arg(long)]
    emit_hypergraph: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    action: ActionArgs,
    #[arg(long)]
    at_most_r: bool,
    /// Family JSON: a document with a "sets" field, or a bare array of sets.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    r_min: u64,
    #[arg(long)]
    r_max: u64,
    #[arg(long, requires = "n_max", conflicts_with = "n_rel")]
    n_min: Option<u64>,
    #[arg(long, requires = "n_min")]
    n_max: Option<u64>,
    /// n range as affine expressions in r, e.g. "2r..2r+12".
    #[arg(long, required_unless_present = "n_min")]
    n_rel: Option<String>,
    #[arg(long, value_enum, default_value = "S")]
    group: GroupArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Add closed-form values and an agreement flag.
    #[arg(long)]
    check_closed_forms: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, value_enum, default_value = "quick")]
    level: Level,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Basesize(a) => basesize::run(&a),
        Command::Construct(a) => construct::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Table(a) => table::run(&a),
        Command::Selftest(a) => selftest::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

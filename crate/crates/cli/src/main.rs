use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use derham_factor::{run, Command, Format, Options};

#[derive(Parser)]
#[command(
    name = "derham-factor",
    version,
    about = "Count and compute the absolutely irreducible factors of a polynomial over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Number of irreducible factors over C.
    Count(Common),
    /// Split into factors with rational coefficients.
    Factor(Common),
    /// Decide genericity with respect to one variable.
    Generic(Common),
    /// Compare factor counts of the polynomial and its plane sections.
    Section(Common),
}

#[derive(clap::Args)]
struct Common {
    /// Polynomial, e.g. "x^2 - z*y^2".
    expr: String,
    /// Variable order, e.g. "x,y,z" (default: order of first occurrence).
    #[arg(long)]
    vars: Option<String>,
    /// Variable tested by `generic` (default: the first).
    #[arg(long)]
    var: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Attempts at a separating element before giving up.
    #[arg(long, default_value_t = 8)]
    retries: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Plane "p;u;w": point and two directions as comma-separated rationals.
    #[arg(long, conflicts_with = "random_planes")]
    plane: Option<String>,
    /// Number of random planes with small integer entries.
    #[arg(long)]
    random_planes: Option<usize>,
    /// Report wall-clock time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Sub::Count(a) => (Command::Count, a),
        Sub::Factor(a) => (Command::Factor, a),
        Sub::Generic(a) => (Command::Generic, a),
        Sub::Section(a) => (Command::Section, a),
    };
    let opts = Options {
        vars: args.vars,
        var: args.var,
        seed: args.seed,
        retries: args.retries,
        plane: args.plane,
        random_planes: args.random_planes,
        timing: args.timing,
    };
    let format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let outcome = run(cmd, &args.expr, &opts);
    print!("{}", outcome.render(format));
    if let Some(e) = &outcome.report.error {
        eprintln!("derham-factor: {}", e.message);
    }
    ExitCode::from(outcome.exit_code as u8)
}

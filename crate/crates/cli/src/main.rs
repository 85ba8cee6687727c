//! `cpshield`: Casimir-Polder potentials for atoms above graphene-covered
//! substrates. Scenario configs in, CSV out.

// Validation guards use the negated forms (!(x > 0.0)) so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cpshield", version, about = "Casimir-Polder potentials for layered graphene stacks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Potential at a single atom height
    Potential(RunArgs),
    /// Potential along the configured sweep axis
    Sweep(RunArgs),
    /// Shielding ratio against the sheet-substrate gap
    Ratio(RunArgs),
    /// Response functions (chi, sigma, alpha, reflection) over a grid
    Response(RunArgs),
    /// Built-in Rb ground-state reference table at z_a = 1 um
    Table1(TableArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario config file
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path (default: the config's `out:`, else stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Quadrature relative tolerance override
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct TableArgs {
    /// Output CSV path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Quadrature relative tolerance override
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; only real usage mistakes
            // are config errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Potential(a) => run::potential(&a.config, a.out.clone(), a.tol),
        Command::Sweep(a) => run::sweep_cmd(&a.config, a.out.clone(), a.tol),
        Command::Ratio(a) => run::ratio(&a.config, a.out.clone(), a.tol),
        Command::Response(a) => run::response(&a.config, a.out.clone(), a.tol),
        Command::Table1(a) => run::table1(a.out.clone(), a.tol),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

mod checks;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skein_core::surface::{standard_datum, DtDatum};

use crate::checks::{CheckRegistry, GridSpec};

#[derive(Parser)]
#[command(name = "skein-tool", version, about = "Dehn-Thurston coordinates, quantum traces and centre lattices")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long)]
    genus: Option<usize>,
    #[arg(long)]
    punctures: Option<usize>,
    /// Datum file; overrides --genus/--punctures.
    #[arg(long)]
    datum: Option<PathBuf>,
}

impl SurfaceArgs {
    fn load(&self) -> Result<DtDatum> {
        if let Some(path) = &self.datum {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return DtDatum::from_json(&text).with_context(|| format!("bad datum file {}", path.display()));
        }
        match (self.genus, self.punctures) {
            (Some(g), Some(m)) => Ok(standard_datum(g, m)?),
            _ => bail!("either --datum or both --genus and --punctures are required"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Matrices, lattices, kernel index and PI-degree at a root of unity.
    Analyze {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        xi_order: u64,
    },
    /// Membership, degree vector and face split of a coordinate.
    Coords {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        coord: String,
    },
    /// Quantum trace of a coordinate on a surface, or on a single pants with --pants.
    Trace {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        pants: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        coord: String,
    },
    /// Run the verification suite over a grid of surfaces and root orders.
    Check {
        #[arg(long, default_value = "rmax=4,nmax=12")]
        grid: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma list of check names; all registered checks by default.
        #[arg(long)]
        checks: Option<String>,
        /// Negative control: perturb one entry of Q̃ in the lattice checks.
        #[arg(long)]
        corrupt_qtilde: bool,
    },
    /// Print the standard datum of a surface as JSON.
    Datum {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
    },
}

fn parse_coord(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().with_context(|| format!("bad coordinate entry {s:?}")))
        .collect()
}

fn emit<T: Serialize + report::Render>(value: &T, format: Format) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Text => print!("{}", value.render()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze { surface, xi_order } => {
            let datum = surface.load()?;
            let r = report::cmd_analyze(&datum, xi_order)?;
            emit(&r, cli.format)?;
            Ok(r.verdict.passed())
        }
        Command::Coords { surface, coord } => {
            let datum = surface.load()?;
            emit(&report::cmd_coords(&datum, &parse_coord(&coord)?)?, cli.format)?;
            Ok(true)
        }
        Command::Trace { surface, pants, coord } => {
            let coord = parse_coord(&coord)?;
            match pants {
                Some(name) => {
                    let r = report::cmd_trace_pants(&name, &coord)?;
                    emit(&r, cli.format)?;
                    Ok(r.trace_theorem.passed())
                }
                None => {
                    let r = report::cmd_trace(&surface.load()?, &coord)?;
                    emit(&r, cli.format)?;
                    Ok(r.passed())
                }
            }
        }
        Command::Check {
            grid,
            seed,
            checks,
            corrupt_qtilde,
        } => {
            let grid = GridSpec::parse(&grid)?;
            let registry = CheckRegistry::default();
            let names: Vec<String> = match checks {
                Some(list) => list.split(',').map(|s| s.trim().to_owned()).collect(),
                None => registry.names().map(str::to_owned).collect(),
            };
            let r = registry.cmd_check(&names, &grid, seed, corrupt_qtilde)?;
            emit(&r, cli.format)?;
            Ok(r.passed)
        }
        Command::Datum { genus, punctures } => {
            print!("{}", standard_datum(genus, punctures)?.to_json());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

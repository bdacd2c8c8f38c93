use std::{fs, path::PathBuf, process::ExitCode};

use anyhow::Context;
use clap::Parser;
use gammacx::{io::CollectionSelector, run_command, Command, Format, RunConfig};

/// Build and verify blowup cube complexes of right-angled Artin groups.
///
/// Exit status: 0 when every check passes, 1 when a verification fails (the
/// report lists the violations), 2 on bad input.
#[derive(Debug, Parser)]
#[command(name = "gammacx", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Graph file: {"vertices": ["a", "b"], "edges": [["a", "b"]]}. Census
    /// without a graph sweeps every graph on at most 4 vertices.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// `all`, an index into the collection list, or partitions such as
    /// "a b | a^-1 b^-1; ..." separated by `;`.
    #[arg(long)]
    collection: Option<CollectionSelector>,
    /// Seed for random allowable structures (default 0; audit defaults to
    /// the unit metric plus seeds 0..20).
    #[arg(long)]
    seed: Option<u64>,
    /// Straightening parameters in [0, 1], comma separated (default
    /// 0,0.25,0.5,0.75,1).
    #[arg(long, value_delimiter = ',')]
    t: Vec<f64>,
    /// Structure file (as written by metric-random) for metric-validate and
    /// metric-straighten.
    #[arg(long)]
    structure: Option<PathBuf>,
    /// Write the report here and print only the summary.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `dot` exports the 1-skeleton (blowup-build only).
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn write(out: Option<&PathBuf>, report: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, report).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        command: cli.command,
        graph: cli.graph,
        collection: cli.collection,
        seed: cli.seed,
        t: cli.t,
        structure: cli.structure,
        format: cli.format,
    };
    match run_command(&cfg) {
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Ok(outcome) => {
            if let Err(e) = write(cli.out.as_ref(), &outcome.report) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if cli.out.is_some() {
                println!("{}", outcome.summary);
            } else {
                eprintln!("{}", outcome.summary);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
    }
}

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use commands::Options;
use report::Report;

#[derive(Parser)]
#[command(
    name = "orbibundle",
    version,
    about = "Parabolic bundles on orbifold lines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Largest group order to construct.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_order: usize,

    /// Largest tensor power searched for a finiteness relation.
    #[arg(long, global = true, default_value_t = 6)]
    max_power: usize,
}

#[derive(clap::Args)]
struct Source {
    /// JSON input file.
    file: Option<PathBuf>,

    /// Inline JSON input.
    #[arg(long, conflicts_with = "file")]
    input: Option<String>,
}

impl Source {
    fn read(&self) -> Result<String> {
        match (&self.file, &self.input) {
            (_, Some(s)) => Ok(s.clone()),
            (Some(p), None) => {
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
            }
            (None, None) => bail!("no input: pass a JSON file or --input"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Picard group of a genus-0 orbifold and its degree-zero torsion.
    Pic {
        #[command(flatten)]
        source: Source,
        /// Torsion orders to report (repeatable); defaults to the distinct
        /// orbifold orders.
        #[arg(long)]
        torsion: Vec<u64>,
    },
    /// Geometry of a tame cover given by monodromy.
    Cover {
        #[command(flatten)]
        source: Source,
    },
    /// Mackey decomposition of a tensor product of induced characters.
    Mackey {
        #[command(flatten)]
        source: Source,
    },
    /// Pushforward of a parabolic line bundle along a cover.
    Push {
        #[command(flatten)]
        source: Source,
    },
    /// Search for a relation P(E) = Q(E) among tensor powers.
    Finite {
        #[command(flatten)]
        source: Source,
    },
    /// The rank-2 bundle with symmetric-group monodromy on (0, 1, inf; 2, 2, 3).
    ExampleS3,
}

fn run(cli: &Cli) -> Result<Report> {
    let mut opts = Options {
        max_order: cli.max_order,
        max_power: cli.max_power,
        torsion: Vec::new(),
    };
    match &cli.command {
        Command::Pic { source, torsion } => {
            opts.torsion = torsion.clone();
            commands::pic(&source.read()?, &opts)
        }
        Command::Cover { source } => commands::cover(&source.read()?, &opts),
        Command::Mackey { source } => commands::mackey(&source.read()?, &opts),
        Command::Push { source } => commands::push(&source.read()?, &opts),
        Command::Finite { source } => commands::finite(&source.read()?, &opts),
        Command::ExampleS3 => commands::example_s3(&opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

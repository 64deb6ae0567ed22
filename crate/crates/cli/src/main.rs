use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use hyperpin_cli::commands;
use hyperpin_cli::config::ExperimentConfig;

#[derive(Parser)]
#[command(name = "hyperpin", version, about = "Pinning control of networks on directed hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML experiment configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides `topology.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Overrides `output.directory`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the configured hypergraph.
    Generate,
    /// Laplacian, reduced block and verdict for the configured pins.
    Spectrum,
    /// MSF grid and type-II threshold.
    Msf,
    /// Choose pinning hyperedges.
    Select,
    /// Integrate the network.
    Simulate,
    /// Three-body ring benchmark.
    Table1,
    /// ER hypergraph benchmark.
    Table2,
    /// Figure data: fig2a, fig2b, fig3, fig4, fig6 or lorenz.
    Example { name: String },
    /// All set partitions of the 10-node ring.
    Sweep10,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Generate => "generate",
            Command::Spectrum => "spectrum",
            Command::Msf => "msf",
            Command::Select => "select",
            Command::Simulate => "simulate",
            Command::Table1 => "table1",
            Command::Table2 => "table2",
            Command::Example { .. } => "example",
            Command::Sweep10 => "sweep10",
        }
    }
}

fn run(cli: &Cli) -> Result<Vec<String>> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.topology.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.output.directory = out.clone();
    }
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let dir = cfg.output.directory.clone();
    match &cli.command {
        Command::Generate => commands::cmd_generate(&cfg, &dir),
        Command::Spectrum => commands::cmd_spectrum(&cfg, &dir),
        Command::Msf => commands::cmd_msf(&cfg, &dir),
        Command::Select => commands::cmd_select(&cfg, &dir),
        Command::Simulate => commands::cmd_simulate(&cfg, &dir),
        Command::Table1 => commands::cmd_table1(&cfg, &dir),
        Command::Table2 => commands::cmd_table2(&cfg, &dir),
        Command::Example { name } => commands::cmd_example(name, &cfg, &dir),
        Command::Sweep10 => commands::cmd_sweep10(&cfg, &dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("FAILED command={} error={:#}", cli.command.name(), e);
            ExitCode::FAILURE
        }
    }
}

mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::ExperimentConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Budget(String),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }
}

/// Random walks on mapping class group representations, sieved by
/// characteristic-polynomial conditions.
#[derive(Parser, Debug)]
#[command(name = "torelli-sieve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML experiment configuration; defaults apply to missing keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, global = true)]
    budget_exhaustive: Option<u64>,
    #[arg(long, global = true)]
    budget_bfs: Option<u64>,
    #[arg(long, global = true)]
    budget_spectral: Option<u64>,
    #[arg(long, global = true)]
    budget_recombination: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Run the random-walk decay experiment; writes per-step CSV and a JSON summary.
    Walk,
    /// Reducible characteristic polynomial density in Sp(2n, F_p).
    Census,
    /// Spectral gap of the Cayley graph of the congruence quotient.
    Gap,
    /// Report on the four sieve conditions.
    CheckSieve,
    /// Print generator matrices of the chosen representation.
    RepDump,
}

impl Cli {
    fn resolve_config(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = ExperimentConfig::load(self.config.as_deref())?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        let b = &mut cfg.budget;
        for (flag, slot) in [
            (self.budget_exhaustive, &mut b.exhaustive),
            (self.budget_bfs, &mut b.bfs),
            (self.budget_spectral, &mut b.spectral),
            (self.budget_recombination, &mut b.recombination),
        ] {
            if let Some(v) = flag {
                *slot = v;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.resolve_config()?;
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(CliError::Config("--workers must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    let run = match cli.command {
        Command::Walk => commands::walk(&cfg, &cli.out_dir)?,
        Command::Census => commands::census(&cfg, &cli.out_dir)?,
        Command::Gap => commands::gap(&cfg, &cli.out_dir)?,
        Command::CheckSieve => commands::check_sieve(&cfg, &cli.out_dir)?,
        Command::RepDump => commands::rep_dump(&cfg, &cli.out_dir)?,
    };
    let written = run.outputs.commit()?;
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(run.stdout.as_bytes());
    for path in written {
        let _ = writeln!(stdout, "wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("torelli-sieve: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

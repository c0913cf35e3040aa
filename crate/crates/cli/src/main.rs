use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use relaygame_cli::{report, sweep, CliError, Result, RunConfig, Solution};

#[derive(Parser)]
#[command(name = "relaygame", version, about = "Equilibrium secrecy rates against a jammer relay")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration (a previous report also works).
    config: PathBuf,
    /// Write output here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print rates at full precision instead of 6 significant digits.
    #[arg(long)]
    precise: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the configured problem and print a TOML report.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Also write both strategy cdfs as CSV.
        #[arg(long)]
        cdf_csv: Option<PathBuf>,
        /// Also write the discretized payoff matrix as CSV (LP route only).
        #[arg(long)]
        matrix_csv: Option<PathBuf>,
    },
    /// Run the `[sweep]` table and print one CSV row per point.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Worker threads.
        #[arg(short, long, env = relaygame_cli::JOBS_ENV)]
        jobs: Option<usize>,
    },
    /// Solve, then replay the equilibrium block by block and audit deviations.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Simulated blocks; defaults to `mc_blocks` from the config, else 10^5.
        #[arg(long)]
        blocks: Option<u64>,
        /// Probe rates per player in the deviation audit.
        #[arg(long, default_value_t = 1000)]
        probes: usize,
    },
    /// Write both decodability-region boundaries as CSV polylines.
    DumpRegions {
        #[command(flatten)]
        common: Common,
    },
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { common, cdf_csv, matrix_csv } => {
            let cfg = RunConfig::from_path(&common.config)?;
            let sol = relaygame_cli::solve(&cfg)?;
            let validation = match cfg.mc_blocks {
                Some(b) => Some(relaygame_cli::validate(&sol, cfg.network.p_s, b, 1000, cfg.seed)),
                None => None,
            };
            sink(&common.output)?.write_all(report::render(&cfg, &sol, validation.as_ref(), common.precise).as_bytes())?;
            if let Some(p) = cdf_csv {
                report::write_cdf_csv(&sol, 201, File::create(p)?)?;
            }
            if let Some(p) = matrix_csv {
                let Solution::Uninformed { corners, .. } = &sol else {
                    return Err(CliError::Config("payoff matrix exists only for p1".into()));
                };
                let rg = relaygame::reduction::reduce(corners)?;
                let game = relaygame::matrixgame::discretize(&rg, cfg.lp_t)?;
                game.write_csv(File::create(p)?)?;
            }
        }
        Command::Sweep { common, jobs } => {
            let cfg = RunConfig::from_path(&common.config)?;
            let pool = relaygame_cli::pool(jobs)?;
            let rows = sweep::run_sweep(&cfg, &pool)?;
            sweep::write_csv(&cfg, &rows, common.precise, sink(&common.output)?)?;
        }
        Command::Validate { common, blocks, probes } => {
            let cfg = RunConfig::from_path(&common.config)?;
            let sol = relaygame_cli::solve(&cfg)?;
            let blocks = blocks.or(cfg.mc_blocks).unwrap_or(100_000);
            let v = relaygame_cli::validate(&sol, cfg.network.p_s, blocks, probes, cfg.seed);
            sink(&common.output)?.write_all(report::render(&cfg, &sol, Some(&v), common.precise).as_bytes())?;
            if !v.passed() {
                return Err(CliError::Validation("equilibrium did not pass the simulation and deviation audit".into()));
            }
        }
        Command::DumpRegions { common } => {
            let cfg = RunConfig::from_path(&common.config)?;
            let cp = relaygame_cli::corners_of(&cfg.network)?;
            report::write_regions_csv(&cp, sink(&common.output)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

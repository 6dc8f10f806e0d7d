//! `lorentz-cmc`: solve, classify and check rotational spacelike CMC surfaces.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success (also `--help`, `--version`) |
//! | 1    | any other failure: numerical, I/O, bad config or parameter |
//! | 2    | the rings admit no spacelike annulus (`|a − b| ≥ R − r`) |
//! | 64   | command-line usage error |

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lorentz_cmc::Execution;

use commands::{resolve_tolerance, CliError, Context};
use config::{FigureArgs, FluxArgs, Job, JobConfig, MeshArgs, Options, RingsArgs, VerifyArgs};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "lorentz-cmc", version, about = "Rotational spacelike CMC surfaces in Lorentz-Minkowski space")]
struct Cli {
    /// Print tables instead of JSON lines.
    #[arg(long, global = true)]
    human: bool,
    /// Worker threads (1 = sequential). Output does not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Absolute quadrature tolerance (overrides LORENTZ_CMC_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the job as a TOML config before running it.
    #[arg(long, global = true, value_name = "PATH")]
    save_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the two-ring problem for the first-integral constant c.
    Solve(RingsArgs),
    /// Predict the regime of the solution without solving.
    Classify(RingsArgs),
    /// Flux of the circle Γ(r), closed form against numeric.
    Flux(FluxArgs),
    /// Recompute the mean curvature of a sampled graph.
    Verify(VerifyArgs),
    /// Sample a surface and write it as OBJ.
    Mesh(MeshArgs),
    /// Reproduce reference figure 1 to 4 as profile CSV and OBJ.
    Figure(FigureArgs),
    /// Run a job from a TOML config file.
    Run { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let human = cli.human;
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if human {
                eprintln!("error: {e}");
            } else {
                eprintln!("{}", serde_json::json!({ "error": e.kind(), "message": e.to_string() }));
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let flags = Options { tol: cli.tol, threads: cli.threads, human: cli.human };
    let config = match cli.command {
        Command::Run { config } => {
            let mut cfg = JobConfig::load(&config).map_err(CliError::Config)?;
            cfg.options.tol = flags.tol.or(cfg.options.tol);
            cfg.options.threads = flags.threads.or(cfg.options.threads);
            cfg.options.human |= flags.human;
            cfg
        }
        Command::Solve(a) => JobConfig { options: flags, job: Job::Solve(a) },
        Command::Classify(a) => JobConfig { options: flags, job: Job::Classify(a) },
        Command::Flux(a) => JobConfig { options: flags, job: Job::Flux(a) },
        Command::Verify(a) => JobConfig { options: flags, job: Job::Verify(a) },
        Command::Mesh(a) => JobConfig { options: flags, job: Job::Mesh(a) },
        Command::Figure(a) => JobConfig { options: flags, job: Job::Figure(a) },
    };
    if let Some(path) = &cli.save_config {
        let text = config.to_toml().map_err(CliError::Config)?;
        std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }

    let exec = match config.options.threads {
        Some(1) => Execution::Sequential,
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Config(e.to_string()))?;
            Execution::Parallel
        }
        None => Execution::Parallel,
    };
    let ctx = Context { quad: resolve_tolerance(config.options.tol)?, exec };
    let records = commands::run(&config.job, &ctx)?;

    let stdout = std::io::stdout().lock();
    let written = if config.options.human {
        output::write_tables(&records, stdout)
    } else {
        output::write_json_lines(&records, stdout)
    };
    written.map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ncg::equilibrium::Schedule;
use ncg::harness::{exit_code, run, ExperimentConfig, Mode};
use ncg::rational::{parse_rational, Rational};

/// Max-distance network creation game experiments.
#[derive(Parser)]
#[command(name = "ncg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Number of agents.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Edge price, e.g. `5` or `19/2`.
    #[arg(long, global = true, value_parser = alpha_arg)]
    alpha: Option<Rational>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Profile file (`ncg v1`).
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// CSV output path; stdout when omitted.
    #[arg(long = "out", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Nash check of the `--in` profile.
    Verify,
    /// Exact best response of one agent.
    BestResponse {
        #[arg(long)]
        agent: usize,
    },
    /// Best-response dynamics from `--in` or the empty profile.
    Dynamics {
        #[arg(long, value_enum, default_value_t = ScheduleArg::Rr)]
        schedule: ScheduleArg,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Every equilibrium for n ≤ 6.
    Enumerate,
    /// Randomized search for equilibria containing a cycle.
    Search {
        #[arg(long, default_value_t = 1000)]
        iters: usize,
    },
    /// Structural checks on `--in`, or on every enumerated equilibrium.
    Audit,
    /// Exhaustive price of anarchy.
    Poa,
    /// Social optimum, closed form and brute force.
    Optimum,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Rr,
    Rand,
}

fn alpha_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational p/q"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = match cli.command {
        Command::Verify => Mode::Verify,
        Command::BestResponse { agent } => Mode::BestResponse { agent },
        Command::Dynamics { schedule, budget } => Mode::Dynamics {
            schedule: match schedule {
                ScheduleArg::Rr => Schedule::RoundRobin,
                ScheduleArg::Rand => Schedule::UniformRandom,
            },
            budget,
        },
        Command::Enumerate => Mode::Enumerate,
        Command::Search { iters } => Mode::Search { iterations: iters },
        Command::Audit => Mode::Audit,
        Command::Poa => Mode::Poa,
        Command::Optimum => Mode::Optimum,
    };
    let c = cli.common;
    let config = ExperimentConfig {
        mode,
        n: c.n,
        alpha: c.alpha,
        seed: c.seed,
        input: c.input,
        output: c.output,
        workers: c.workers,
    };
    match run(&config) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ncg: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use experiments::{Config, Experiment, emit_report};

#[derive(Parser)]
#[command(name = "shockline", about = "TASEP shock experiments with pass/fail reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Law of the tagged particle at the shock
    ShockLaw(Common),
    /// Shock system equals the minimum of its two parts
    MinIdentity(Common),
    /// Fluctuations decorrelate slowly along the characteristic
    SlowDecorrelation(Common),
    /// Backward index path stays in a t^{2/3} band
    Localization(Common),
    /// Step, flat and half-flat tail bounds
    Tails(Common),
    /// Half-flat particle against GOE Tracy-Widom
    SystemALimit(Common),
    /// Largest GUE eigenvalue by three methods
    GueCdf(Common),
    /// Rescaled finite-time kernel against the GUE kernel
    KernelLimit(Common),
    /// Direct shock formula against simulation
    DirectCdf(Common),
    /// Finite-time Fredholm determinant against simulation
    FiniteKernel(Common),
}

#[derive(Args)]
struct Common {
    /// Flat key = value config file
    #[arg(long)]
    config: PathBuf,
    /// Overrides the seed in the config
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: out/<subcommand>)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the trial count in the config
    #[arg(long)]
    trials: Option<usize>,
    /// Worker threads (0 = all cores)
    #[arg(long)]
    threads: Option<usize>,
}

impl Command {
    fn split(self) -> (Experiment, Common) {
        match self {
            Command::ShockLaw(c) => (Experiment::ShockLaw, c),
            Command::MinIdentity(c) => (Experiment::MinIdentity, c),
            Command::SlowDecorrelation(c) => (Experiment::SlowDecorrelation, c),
            Command::Localization(c) => (Experiment::Localization, c),
            Command::Tails(c) => (Experiment::Tails, c),
            Command::SystemALimit(c) => (Experiment::SystemALimit, c),
            Command::GueCdf(c) => (Experiment::GueCdf, c),
            Command::KernelLimit(c) => (Experiment::KernelLimit, c),
            Command::DirectCdf(c) => (Experiment::DirectCdf, c),
            Command::FiniteKernel(c) => (Experiment::FiniteKernel, c),
        }
    }
}

fn main() -> ExitCode {
    let (experiment, args) = Cli::parse().command.split();
    let mut config = match Config::from_file(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(s) = args.seed {
        config.set("seed", s);
    }
    if let Some(n) = args.trials {
        // gue-cdf counts matrices rather than trials.
        config.set(if experiment == Experiment::GueCdf { "samples" } else { "trials" }, n);
    }
    if let Some(n) = args.threads {
        config.set("threads", n);
    }
    let out = args.out.unwrap_or_else(|| PathBuf::from("out").join(experiment.name()));
    let report = match experiment.run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit_report(&report, &out) {
        eprintln!("error writing {}: {e}", out.display());
        return ExitCode::from(2);
    }
    for c in &report.checks {
        println!("{} {}: {} (threshold {}) {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.value, c.threshold, c.detail);
    }
    for n in &report.notes {
        println!("note: {n}");
    }
    println!("{}: {} in {:.1} s, report in {}", report.experiment, if report.verdict { "PASS" } else { "FAIL" }, report.runtime_seconds, out.display());
    if report.verdict { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

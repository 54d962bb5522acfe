//! Simulation and numerical experiments for TASEP with slow particles, one
//! runner per claim. Each runner takes a flat config and returns a
//! [`report::Report`] with checks, tables and plots.

pub mod common;
pub mod config;
pub mod error;
pub mod plot;
pub mod report;
pub mod runners;
pub mod stats;
pub mod trials;

pub use config::Config;
pub use error::{ExperimentError, Result};
pub use report::{Report, emit_report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    ShockLaw,
    MinIdentity,
    SlowDecorrelation,
    Localization,
    Tails,
    SystemALimit,
    GueCdf,
    KernelLimit,
    DirectCdf,
    FiniteKernel,
}

impl Experiment {
    pub const ALL: [Experiment; 10] = [
        Experiment::ShockLaw,
        Experiment::MinIdentity,
        Experiment::SlowDecorrelation,
        Experiment::Localization,
        Experiment::Tails,
        Experiment::SystemALimit,
        Experiment::GueCdf,
        Experiment::KernelLimit,
        Experiment::DirectCdf,
        Experiment::FiniteKernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::ShockLaw => "shock-law",
            Experiment::MinIdentity => "min-identity",
            Experiment::SlowDecorrelation => "slow-decorrelation",
            Experiment::Localization => "localization",
            Experiment::Tails => "tails",
            Experiment::SystemALimit => "system-a-limit",
            Experiment::GueCdf => "gue-cdf",
            Experiment::KernelLimit => "kernel-limit",
            Experiment::DirectCdf => "direct-cdf",
            Experiment::FiniteKernel => "finite-kernel",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == name)
    }

    pub fn run(self, config: &Config) -> Result<Report> {
        use runners::*;
        match self {
            Experiment::ShockLaw => shock_law::run(config),
            Experiment::MinIdentity => min_identity::run(config),
            Experiment::SlowDecorrelation => slow_decorrelation::run(config),
            Experiment::Localization => localization::run(config),
            Experiment::Tails => tails::run(config),
            Experiment::SystemALimit => system_a::run(config),
            Experiment::GueCdf => gue_cdf::run(config),
            Experiment::KernelLimit => kernel_limit::run(config),
            Experiment::DirectCdf => direct_cdf::run(config),
            Experiment::FiniteKernel => finite_kernel::run(config),
        }
    }
}

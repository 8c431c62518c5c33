//! Command implementations behind the `qzeta` binary. Everything returns the
//! rendered text so the commands can be tested without spawning a process.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use config::{Command, RunConfig};
use qzeta::Result;

/// Rendered output and whether every row or check succeeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    pub success: bool,
}

pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    match cfg.command {
        Command::Cf => commands::run_cf(cfg),
        Command::Zeta => commands::run_zeta(cfg),
        Command::Family => commands::run_family(cfg),
        Command::Verify => verify::run_verify(cfg),
    }
}

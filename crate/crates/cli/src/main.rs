//! `scm`: warmth/competence analysis of stereotype word data.

mod args;
mod commands;
mod manifest;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::Cli;

/// Why a run stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or missing input files; nothing heavy was loaded.
    Config(String),
    Module(scm_core::Error),
    Output(String),
}

impl From<scm_core::Error> for Failure {
    fn from(e: scm_core::Error) -> Self {
        Failure::Module(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Module(_) | Failure::Output(_) => 1,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let (kind, message) = match self {
            Failure::Config(m) => ("config", m.clone()),
            Failure::Module(e) => (e.kind(), e.to_string()),
            Failure::Output(m) => ("output", m.clone()),
        };
        json!({ "error": { "kind": kind, "message": message, "exit_code": self.exit_code() } })
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit_code())
        }
    }
}

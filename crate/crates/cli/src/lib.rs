//! Library side of the `dualdelay` binary, so integration tests can drive
//! whole runs in-process.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::time::{SystemTime, UNIX_EPOCH};

use cli::{Cli, Command, CorruptionCommand, SimulateCommand, Threads};
use config::{Format, RunConfig};
use error::CliError;
use output::Report;

pub const SEED_ENV: &str = "DUALDELAY_SEED";

/// A finished run: the report plus everything needed to render it.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub config: RunConfig,
    pub base_seed: u64,
    pub format: Format,
}

/// Layers defaults < preset < config file < flags and validates the result.
pub fn resolve(cli: &Cli) -> Result<(RunConfig, Vec<String>), CliError> {
    let mut cfg = RunConfig::default();
    let mut notes = Vec::new();
    if let Some(p) = cli.preset {
        cfg.overlay(&config::preset(p));
        notes.extend(config::preset_note(p).map(str::to_owned));
    }
    if let Some(path) = &cli.config {
        cfg.overlay(&RunConfig::load(path)?);
    }
    cfg.overlay(&cli.flag_layer());
    cfg.check()?;
    Ok((cfg, notes))
}

fn env_seed() -> Result<Option<u64>, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| {
            CliError::Config(format!(
                "{SEED_ENV}=`{s}` is not an unsigned 64-bit integer"
            ))
        }),
        Err(_) => Ok(None),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let (mut cfg, preset_notes) = resolve(cli)?;
    let seed = match cfg.sim.base_seed {
        Some(s) => s,
        None => env_seed()?.unwrap_or(0),
    };
    let mut report = match &cli.command {
        Command::ThresholdStatic(_) => commands::threshold_static(&mut cfg),
        Command::ThresholdDynamic(_) => commands::threshold_dynamic(&mut cfg),
        Command::SecurityProb { explore, .. } => commands::security_prob(&mut cfg, *explore),
        Command::Simulate(SimulateCommand::Growth(_)) => commands::simulate_growth(&mut cfg, seed),
        Command::Simulate(SimulateCommand::Race(_)) => commands::simulate_race(&mut cfg, seed),
        Command::Simulate(SimulateCommand::Threshold(_)) => {
            commands::simulate_threshold(&mut cfg, seed)
        }
        Command::Corruption(CorruptionCommand::Mc(_)) => commands::corruption_mc(&mut cfg, seed),
        Command::Corruption(CorruptionCommand::Sweep(_)) => {
            commands::corruption_sweep(&mut cfg, seed)
        }
    }?;
    let mut notes = preset_notes;
    notes.append(&mut report.notes);
    report.notes = notes;
    let format = *cfg.output.format.get_or_insert(Format::Csv);
    Ok(Outcome {
        report,
        config: cfg,
        base_seed: seed,
        format,
    })
}

pub fn configure_threads(threads: Threads) -> Result<(), CliError> {
    if let Threads::Fixed(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot configure {n} threads: {e}")))?;
    }
    Ok(())
}

/// Runs one invocation and writes its output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads(cli.threads)?;
    let outcome = execute(cli)?;
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let text = output::render(
        &outcome.report,
        &outcome.config,
        outcome.base_seed,
        outcome.format,
        timestamp,
    );
    match &outcome.config.output.path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write stdout: {e}")))
        }
    }
}

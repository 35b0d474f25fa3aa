//! Flag definitions. Every subcommand takes the same model, simulation and
//! sweep flags; each flag maps onto one config key and overrides it.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dualdelay_core::AdvSyncMode;

use crate::config::{
    BetaRule, Format, ModelSection, OneOrMany, OutputSection, Preset, RunConfig, Scale, Side,
    SimSection, SweepSection,
};

#[derive(Debug, Parser)]
#[command(
    name = "dualdelay",
    version,
    about = "Dual-delay longest-chain security toolkit"
)]
pub struct Cli {
    /// JSON run configuration (sections: model, sim, sweep, output).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Base seed; falls back to the config file, then DUALDELAY_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    /// Worker threads, or `auto`.
    #[arg(long, global = true, default_value = "auto")]
    pub threads: Threads,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Threads::Fixed(n)),
            _ => Err(format!("expected a positive integer or `auto`, got `{s}`")),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Static threshold: exact root and linear approximation.
    ThresholdStatic(CommonArgs),
    /// Scale-dependent threshold: exact root and asymptotic form.
    ThresholdDynamic(CommonArgs),
    /// Standardized threshold and security probability along an n axis.
    SecurityProb {
        #[command(flatten)]
        common: CommonArgs,
        /// Search (corr_c, sync_c, delay_coeff) for a dip-then-rise curve.
        #[arg(long)]
        explore: bool,
    },
    #[command(subcommand)]
    Simulate(SimulateCommand),
    #[command(subcommand)]
    Corruption(CorruptionCommand),
}

#[derive(Debug, Subcommand)]
pub enum SimulateCommand {
    /// Long-horizon growth rate of one chain.
    Growth(CommonArgs),
    /// Private-attack race to the confirmation depth.
    Race(CommonArgs),
    /// Threshold located by bisection on simulated growth rates.
    Threshold(CommonArgs),
}

#[derive(Debug, Subcommand)]
pub enum CorruptionCommand {
    /// Monte Carlo exceedance against exact and Gaussian tails.
    Mc(CommonArgs),
    /// Exceedance along an n grid with p* = corr_c / sqrt(n).
    Sweep(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Default, Args)]
#[command(next_help_heading = "Model")]
pub struct ModelArgs {
    /// Total block production rate.
    #[arg(long = "lambda")]
    pub lambda_total: Option<f64>,
    /// One curve per listed total rate.
    #[arg(long, value_delimiter = ',')]
    pub lambda_curves: Option<Vec<f64>>,
    /// Adversarial share of the production rate.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Honest propagation delay.
    #[arg(long = "delta")]
    pub delta_honest: Option<f64>,
    /// Adversarial synchronization delay.
    #[arg(long = "delta-a")]
    pub delta_adv: Option<f64>,
    #[arg(long = "lambda-h")]
    pub lambda_h: Option<f64>,
    #[arg(long = "lambda-a")]
    pub lambda_a: Option<f64>,
    /// Sets both node counts.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub n_total: Option<u64>,
    #[arg(long)]
    pub n_val: Option<u64>,
    #[arg(long)]
    pub delay_coeff: Option<f64>,
    #[arg(long)]
    pub topo_k: Option<f64>,
    #[arg(long)]
    pub sync_c: Option<f64>,
    #[arg(long)]
    pub corr_c: Option<f64>,
    /// Per-validator corruption probability.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub beta_star: Option<f64>,
    #[arg(long = "rule", value_enum)]
    pub beta_rule: Option<BetaRule>,
}

#[derive(Debug, Clone, Default, Args)]
#[command(next_help_heading = "Simulation")]
pub struct SimArgs {
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Confirmation depth(s), comma-separated.
    #[arg(long = "kconf", value_delimiter = ',')]
    pub confirm_depth: Option<Vec<u32>>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// serial_sync or pipelined_queue.
    #[arg(long = "mode")]
    pub adv_sync_mode: Option<AdvSyncMode>,
    #[arg(long, value_enum)]
    pub side: Option<Side>,
}

#[derive(Debug, Clone, Default, Args)]
#[command(next_help_heading = "Sweep")]
pub struct SweepArgs {
    /// Model key to sweep.
    #[arg(long)]
    pub axis: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<f64>>,
    #[arg(long)]
    pub min: Option<f64>,
    #[arg(long)]
    pub max: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, value_enum)]
    pub scale: Option<Scale>,
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::ThresholdStatic(c) | Command::ThresholdDynamic(c) => c,
            Command::SecurityProb { common, .. } => common,
            Command::Simulate(SimulateCommand::Growth(c))
            | Command::Simulate(SimulateCommand::Race(c))
            | Command::Simulate(SimulateCommand::Threshold(c)) => c,
            Command::Corruption(CorruptionCommand::Mc(c))
            | Command::Corruption(CorruptionCommand::Sweep(c)) => c,
        }
    }
}

impl Cli {
    /// The flag layer as a config, holding only the keys given on the
    /// command line.
    pub fn flag_layer(&self) -> RunConfig {
        let CommonArgs { model, sim, sweep } = self.command.common().clone();
        RunConfig {
            model: ModelSection {
                lambda_total: model.lambda_total,
                lambda_curves: model.lambda_curves,
                beta: model.beta,
                delta_honest: model.delta_honest,
                delta_adv: model.delta_adv,
                lambda_h: model.lambda_h,
                lambda_a: model.lambda_a,
                n: model.n,
                n_total: model.n_total,
                n_val: model.n_val,
                delay_coeff: model.delay_coeff,
                topo_k: model.topo_k,
                sync_c: model.sync_c,
                corr_c: model.corr_c,
                p: model.p,
                beta_star: model.beta_star,
                beta_rule: model.beta_rule,
            },
            sim: SimSection {
                horizon: sim.horizon,
                confirm_depth: sim.confirm_depth.map(|mut v| {
                    if v.len() == 1 {
                        OneOrMany::One(v.remove(0))
                    } else {
                        OneOrMany::Many(v)
                    }
                }),
                trials: sim.trials,
                base_seed: self.seed,
                adv_sync_mode: sim.adv_sync_mode,
                side: sim.side,
            },
            sweep: SweepSection {
                axis: sweep.axis,
                values: sweep.values,
                min: sweep.min,
                max: sweep.max,
                step: sweep.step,
                scale: sweep.scale,
            },
            output: OutputSection {
                path: self.out.clone(),
                format: self.format,
            },
        }
    }
}

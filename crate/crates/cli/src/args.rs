// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "icgate", version, about = "Indirect-control gate synthesis and verification")]
pub struct Cli {
    /// Output directory, created if missing. Defaults to `icgate-out`, or to
    /// the recorded directory for `replay`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Fidelity of a pulse sequence against a target over the ω₁ grid.
    Verify(VerifyArgs),
    /// Genetic-algorithm search for a pulse sequence.
    Optimize(OptimizeArgs),
    /// Simulated circuits, spectra and trajectories.
    Scan(ScanArgs),
    /// Derived quantities of a system configuration.
    Report(ReportArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
    /// Print a published input schema.
    Schema(SchemaArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SystemArgs {
    /// System JSON file, or `paper-params` for the bundled parameters.
    #[arg(long, default_value = "paper-params")]
    pub system: String,

    /// Keep only these carbon labels, e.g. `1` or `1,2,3,4`.
    #[arg(long, value_delimiter = ',')]
    pub carbons: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Sequence JSON file or bundled name (e.g. `ref-hadamard`, `ccrot-n6-b`).
    #[arg(long)]
    pub sequence: String,

    /// `hadamard`, `cnot`, `identity` or `ccrot:<carbon>:<degrees>`.
    #[arg(long)]
    pub target: String,

    /// Rabi-frequency grid `min,max,points` in MHz.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    #[arg(long)]
    pub target: String,

    /// GA configuration JSON; defaults apply when absent.
    #[arg(long)]
    pub ga: Option<PathBuf>,

    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long, default_value_t = 3)]
    pub pulses: usize,

    /// Upper bound on each delay, μs.
    #[arg(long, default_value_t = 4.0)]
    pub tau_max: f64,

    /// Upper bound on each pulse length, μs.
    #[arg(long, default_value_t = 2.0)]
    pub t_max: f64,

    #[arg(long)]
    pub generations: Option<usize>,

    #[arg(long)]
    pub population: Option<usize>,

    #[arg(long)]
    pub restarts: Option<usize>,

    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ScanArgs {
    #[command(subcommand)]
    pub kind: ScanKind,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    /// `|0↑⟩ → U_H → t → U_H`, population of `|0↑⟩` and its spectrum.
    Hadamard(HadamardScan),
    /// `P₀↓(θ)` after `θ_y`, the gate and the readout.
    Theta(ThetaScan),
    /// Detuned electron FID `90_x - t - 90_φ(t)`.
    Fid(FidScan),
    /// Stick and broadened ESR spectrum.
    Spectrum(SpectrumScan),
    /// Bloch vectors along a sequence.
    Trajectory(TrajectoryScan),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct HadamardScan {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Sequence realizing U_H; the ideal gate is used when absent.
    #[arg(long)]
    pub sequence: Option<String>,

    /// Replace the first U_H by NOOP.
    #[arg(long)]
    pub noop_first: bool,

    #[arg(long, default_value_t = 0.5)]
    pub dt: f64,

    #[arg(long, default_value_t = 1024)]
    pub samples: usize,

    #[arg(long, value_enum, default_value_t = CleanupArg::None)]
    pub cleanup: CleanupArg,

    /// Exponential apodization time constant, μs.
    #[arg(long)]
    pub apodize: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CleanupArg {
    None,
    Ideal,
    Simulated,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ThetaScan {
    #[command(flatten)]
    pub system: SystemArgs,

    /// `noop`, `ideal` (ideal CNOT) or a CNOT sequence file / bundled name.
    #[arg(long, default_value = "ideal")]
    pub gate: String,

    #[arg(long, default_value_t = 101)]
    pub points: usize,

    #[arg(long, value_enum, default_value_t = ReadoutArg::MinusOne)]
    pub readout: ReadoutArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadoutArg {
    Zero,
    MinusOne,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FidScan {
    #[command(flatten)]
    pub system: SystemArgs,

    #[arg(long, value_enum, default_value_t = StateArg::Thermal)]
    pub state: StateArg,

    /// Gate applied after state preparation: `noop`, `ideal` (ideal CNOT) or a sequence.
    #[arg(long, default_value = "noop")]
    pub gate: String,

    /// Detuning frequency, MHz.
    #[arg(long, default_value_t = 3.0)]
    pub nu_d: f64,

    #[arg(long, default_value_t = 0.05)]
    pub dt: f64,

    #[arg(long, default_value_t = 1024)]
    pub samples: usize,

    #[arg(long)]
    pub apodize: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateArg {
    /// Electron in `m_S = 0`, carbons unpolarized.
    Thermal,
    /// `|0↑…↑⟩`.
    Up,
    /// `|0↑…↑⟩` after an ideal π on `0 ↔ -1`.
    Flipped,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SpectrumScan {
    #[command(flatten)]
    pub system: SystemArgs,

    #[arg(long, value_enum, default_value_t = ManifoldArg::Minus)]
    pub manifold: ManifoldArg,

    /// Lorentzian FWHM, MHz.
    #[arg(long, default_value_t = 0.0106)]
    pub linewidth: f64,

    #[arg(long, value_enum, default_value_t = WeightingArg::MatrixElement)]
    pub weighting: WeightingArg,

    #[arg(long, default_value_t = 1024)]
    pub points: usize,

    /// Electron transition frequency added to every stick, MHz. With the
    /// default 0 positions are offsets and may be negative.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    #[serde(default)]
    pub carrier: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManifoldArg {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightingArg {
    MatrixElement,
    PopulationDifference,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct TrajectoryScan {
    #[command(flatten)]
    pub system: SystemArgs,

    #[arg(long)]
    pub sequence: String,

    #[arg(long, default_value_t = 0.05)]
    pub dt: f64,

    #[arg(long, value_enum, default_value_t = StateArg::Up)]
    pub state: StateArg,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReportArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Linewidth for the T₂* bound, MHz.
    #[arg(long, default_value_t = icgate_core::report::DEFAULT_LINEWIDTH_MHZ)]
    pub linewidth: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SchemaArgs {
    #[arg(value_enum)]
    pub kind: SchemaKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemaKind {
    System,
    Sequence,
    GaConfig,
}

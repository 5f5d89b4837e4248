// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Simulation and pulse-sequence synthesis for indirectly controlled
//! electron-nuclear spin registers (NV center electron, one ¹⁴N held in
//! `m_N = 1`, and up to four ¹³C spins).
//!
//! Nuclear spins are never driven directly. Gates are built from short
//! microwave pulses on the electron interleaved with free evolution under the
//! hyperfine coupling. The crate is organized as:
//!
//! - [`spin`]: spin operators, Hamiltonians, carbon eigenstructure and the
//!   dipolar-geometry inversion.
//! - [`propagator`]: exact delay/pulse propagators, sequence composition and
//!   the trace fidelity with amplitude-robustness averaging.
//! - [`targets`]: the target gate library.
//! - [`optimizer`]: real-valued genetic algorithm over sequence parameters.
//! - [`experiments`]: simulated circuits, spectra and Bloch trajectories.
//! - [`paper`]: bundled physical parameters and reference sequences.
//! - [`report`]: derived-quantity table.
//!
//! Units: Hamiltonians are stored as `H/2π` in MHz, times are in μs, and
//! every propagator applies the factor `2π` itself.

pub mod error;
pub mod experiments;
pub mod linalg;
pub mod optimizer;
pub mod paper;
pub mod propagator;
pub mod report;
pub mod spin;
pub mod targets;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};

pub use optimizer::{optimize, GaConfig, Genome, OptimizationResult, ParameterBounds};
pub use propagator::{
    gate_fidelity, robust_fidelity, sequence_propagator, OmegaGrid, PulseSegment, PulseSequence, RobustFidelity,
    UnitaryMatrix,
};
pub use spin::{HamiltonianMatrix, HyperfineCoupling, SpinSystemConfig};
pub use targets::{TargetGate, TargetSpec};

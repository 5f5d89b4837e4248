// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Simulated experiments on the register: state preparation, test circuits,
//! spectra and Bloch trajectories. Hard pulses are ideal rotations and
//! readout is an ideal population measurement.

pub mod cleanup;
pub mod delays;
pub mod emit;
pub mod scans;
pub mod spectrum;
pub mod state;
pub mod trajectory;

pub use cleanup::{cleanup_delay, cleanup_propagator, cleanup_readout, CleanupModel};
pub use delays::{analytic_init_delays, init_propagator, simulate_init_delays, InitCheck, InitDelays};
pub use scans::{
    electron_fid_scan, hadamard_circuit_scan, hadamard_law, theta_grid, theta_law, theta_scan, Gate, ReadoutBranch,
    ScanResult, TimeGrid,
};
pub use spectrum::{
    esr_spectrum, fourier_spectrum, min_coherence_time, EsrOptions, FourierOptions, Line, LineWeighting, Spectrum,
};
pub use state::{bloch_vector, partial_trace, BlochPoint, QuantumState};
pub use trajectory::{bloch_trajectory, stepped_states, Trajectory};

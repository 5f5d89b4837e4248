// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Benchmark fixtures shared by the criterion targets.

use icgate_core::paper;
use icgate_core::spin::{build_multiqubit_hamiltonian, HamiltonianMatrix};
use icgate_core::SpinSystemConfig;

/// Working-subspace Hamiltonian with the first `n_carbons` bundled carbons.
pub fn register(n_carbons: usize) -> (SpinSystemConfig, HamiltonianMatrix) {
    let labels: Vec<u32> = (1..=n_carbons as u32).collect();
    let cfg = paper::system_for_carbons(&labels).expect("bundled carbons");
    let h = build_multiqubit_hamiltonian(&cfg).expect("valid system");
    (cfg, h)
}

// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Clean-up `(90_x - τ_c - 90_{-y})` in the `m_S = {0, +1}` manifold, which
//! moves `|0↓⟩` to `|+1↓⟩` and leaves `|0↑⟩` in place.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::propagator::{electron_rotation, free_propagator, UnitaryMatrix};
use crate::spin::{build_manifold_hamiltonian, Manifold, SpinSystemConfig};

/// Phase of the closing 90° rotation.
pub const CLEANUP_CLOSING_PHASE: f64 = -FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CleanupModel {
    /// Ideal rotations around free evolution under the `m_S = {0, +1}`
    /// block Hamiltonian, including the κ₊ tilt.
    #[default]
    Simulated,
    /// Perfect transfer `|0↓⟩ → |+1↓⟩`.
    Ideal,
}

/// `τ_c = 1/(2|A_zz|)`.
pub fn cleanup_delay(config: &SpinSystemConfig) -> Result<f64> {
    let cpl = single(config)?;
    if cpl.a_zz == 0.0 {
        return Err(Error::InvalidConfig("clean-up needs A_zz != 0".into()));
    }
    Ok(1.0 / (2.0 * cpl.a_zz.abs()))
}

fn single(config: &SpinSystemConfig) -> Result<&crate::spin::HyperfineCoupling> {
    match config.carbons.as_slice() {
        [cpl] => Ok(cpl),
        other => Err(Error::InvalidConfig(format!("clean-up needs exactly one carbon, got {}", other.len()))),
    }
}

/// Propagator on `{|0↑⟩, |0↓⟩, |+1↑⟩, |+1↓⟩}`.
pub fn cleanup_propagator(config: &SpinSystemConfig, model: CleanupModel) -> Result<UnitaryMatrix> {
    let tau_c = cleanup_delay(config)?;
    match model {
        CleanupModel::Simulated => {
            let h = build_manifold_hamiltonian(config, Manifold::Plus)?;
            let open = electron_rotation(4, FRAC_PI_2, 0.0);
            let close = electron_rotation(4, FRAC_PI_2, CLEANUP_CLOSING_PHASE);
            Ok(close.compose(&free_propagator(&h, tau_c)?).compose(&open))
        }
        CleanupModel::Ideal => {
            let mut m = CMatrix::zeros(4, 4);
            m[(0, 0)] = c(1.0, 0.0);
            m[(2, 2)] = c(1.0, 0.0);
            m[(3, 1)] = c(1.0, 0.0);
            m[(1, 3)] = c(-1.0, 0.0);
            UnitaryMatrix::new(m)
        }
    }
}

/// Population of `|0↑⟩` after the clean-up, given a working-subspace state.
/// Only the `m_S = 0` block enters: the `m_S = -1` levels are untouched by
/// pulses selective on the `0 ↔ +1` transition.
pub fn cleanup_readout(state: &QuantumState, cleanup: &UnitaryMatrix) -> Result<f64> {
    if state.dim() != 4 || cleanup.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: state.dim().max(cleanup.dim()) });
    }
    let rho = state.density();
    let mut padded = CMatrix::zeros(4, 4);
    padded.view_mut((0, 0), (2, 2)).copy_from(&rho.view((0, 0), (2, 2)));
    let out = cleanup.matrix() * padded * cleanup.matrix().adjoint();
    Ok(out[(0, 0)].re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;

    #[test]
    fn paper_delay() {
        let tau = cleanup_delay(&paper::two_qubit_system()).unwrap();
        assert!((tau - 1.0 / (2.0 * 0.152)).abs() < 1e-12);
        assert!((tau - 3.289).abs() < 5e-4);
    }

    #[test]
    fn transfers_down_and_keeps_up() {
        let u = cleanup_propagator(&paper::two_qubit_system(), CleanupModel::Simulated).unwrap();
        let down = QuantumState::basis(4, 1).unwrap().apply(&u);
        let up = QuantumState::basis(4, 0).unwrap().apply(&u);
        assert!(down.population(3) >= 0.9, "{}", down.population(3));
        assert!(up.population(0) >= 0.9, "{}", up.population(0));
    }

    #[test]
    fn ideal_model_is_exact() {
        let u = cleanup_propagator(&paper::two_qubit_system(), CleanupModel::Ideal).unwrap();
        assert_eq!(QuantumState::basis(4, 1).unwrap().apply(&u).population(3), 1.0);
        assert_eq!(QuantumState::basis(4, 0).unwrap().apply(&u).population(0), 1.0);
    }

    #[test]
    fn zero_secular_coupling_rejected() {
        let cfg = paper::two_qubit_system().with_carbons(vec![crate::spin::HyperfineCoupling::new(0.0, 0.1)]);
        assert!(cleanup_delay(&cfg).is_err());
    }
}

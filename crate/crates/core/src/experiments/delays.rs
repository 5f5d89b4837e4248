// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form delays of the `(180° - τ₁ - 180° - τ₂)` preparation that maps
//! `|0↑⟩` to `|0⟩(|↑⟩ + |↓⟩)/√2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use serde::{Deserialize, Serialize};

use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::propagator::{electron_rotation, free_propagator, UnitaryMatrix};
use crate::spin::{build_subspace_hamiltonian, carbon_eigenstructure, SpinSystemConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitDelays {
    pub tau1_us: f64,
    pub tau2_us: f64,
}

impl InitDelays {
    pub fn total_us(&self) -> f64 {
        self.tau1_us + self.tau2_us
    }
}

/// `τ₁ = arcsin(1/(√2 sin κ₋))/(π ν₋)`, `τ₂ = arccos(cot κ₋)/(2π ν_C)`.
pub fn analytic_init_delays(config: &SpinSystemConfig) -> Result<InitDelays> {
    let eig = carbon_eigenstructure(config)?;
    let s = eig.kappa_minus.sin().abs();
    let arg = FRAC_1_SQRT_2 / s;
    if arg.is_nan() || arg > 1.0 {
        return Err(Error::DomainViolation(format!("|κ₋| = {:.2}° is below 45°", eig.kappa_minus_deg())));
    }
    // cot κ₋ ≤ 1 whenever sin κ₋ ≥ 1/√2, so only the sign of κ₋ can matter here
    let cot = eig.kappa_minus.cos() / s;
    let tau1 = arg.asin() / (PI * eig.nu_minus);
    let tau2 = cot.clamp(-1.0, 1.0).acos() / (TAU * config.nu_c);
    Ok(InitDelays { tau1_us: tau1, tau2_us: tau2 })
}

/// Outcome of simulating the preparation with ideal π pulses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InitCheck {
    pub p0_up: f64,
    pub p0_down: f64,
    /// `⟨0↑|ρ|0↓⟩`.
    pub coherence: C64,
}

/// `U_{τ₂} R_π U_{τ₁} R_π` with ideal instantaneous `180_x` rotations.
pub fn init_propagator(config: &SpinSystemConfig, delays: &InitDelays) -> Result<UnitaryMatrix> {
    let h = build_subspace_hamiltonian(config)?;
    let pi = electron_rotation(h.dim(), PI, 0.0);
    let u1 = free_propagator(&h, delays.tau1_us)?;
    let u2 = free_propagator(&h, delays.tau2_us)?;
    Ok(u2.compose(&pi).compose(&u1).compose(&pi))
}

/// Applies [`init_propagator`] to `|0↑⟩`.
pub fn simulate_init_delays(config: &SpinSystemConfig, delays: &InitDelays) -> Result<InitCheck> {
    let u = init_propagator(config, delays)?;
    let out = QuantumState::basis(u.dim(), 0)?.apply(&u);
    Ok(InitCheck { p0_up: out.population(0), p0_down: out.population(1), coherence: out.coherence(0, 1) })
}

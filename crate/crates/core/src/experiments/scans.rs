// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Simulated test circuits: Hadamard interferometry on the carbon, the
//! detuned electron FID and the θ-scan of the CNOT.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cleanup::cleanup_readout;
use super::spectrum::{esr_spectrum, fourier_spectrum, EsrOptions, FourierOptions, Spectrum};
use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::propagator::{drive_operators, electron_rotation, PulseSequence, SequenceEvaluator, UnitaryMatrix};
use crate::spin::HamiltonianMatrix;

/// Uniform grid `start + k·step`, `k = 0..samples`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start_us: f64,
    pub step_us: f64,
    pub samples: usize,
}

impl TimeGrid {
    pub fn new(start_us: f64, step_us: f64, samples: usize) -> Result<Self> {
        let g = Self { start_us, step_us, samples };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start_us.is_finite() && self.start_us >= 0.0 && self.step_us.is_finite() && self.step_us > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "time grid start {} / step {} must be >= 0 / > 0",
                self.start_us, self.step_us
            )));
        }
        if self.samples < 2 {
            return Err(Error::InvalidArgument("time grid needs at least two samples".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.samples).map(|k| self.start_us + k as f64 * self.step_us).collect()
    }
}

/// Gate slot in a test circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Noop,
    Unitary(UnitaryMatrix),
    /// Simulated at the sequence's own Rabi frequency.
    Sequence(PulseSequence),
}

impl Gate {
    pub fn resolve(&self, h: &HamiltonianMatrix) -> Result<UnitaryMatrix> {
        let u = match self {
            Gate::Noop => UnitaryMatrix::identity(h.dim()),
            Gate::Unitary(u) => u.clone(),
            Gate::Sequence(seq) => {
                seq.validate()?;
                SequenceEvaluator::new(h)?.propagator(seq)
            }
        };
        if u.dim() != h.dim() {
            return Err(Error::DimensionMismatch { expected: h.dim(), found: u.dim() });
        }
        Ok(u)
    }
}

/// Signal over a time grid and its Fourier spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub times_us: Vec<f64>,
    pub signal: Vec<f64>,
    pub spectrum: Spectrum,
}

impl ScanResult {
    /// `time_us,signal`.
    pub fn signal_csv(&self) -> Result<String> {
        super::emit::csv_columns(&["time_us", "signal"], &[&self.times_us, &self.signal])
    }
}

fn require_two_qubit(h: &HamiltonianMatrix) -> Result<()> {
    if h.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: h.dim() });
    }
    Ok(())
}

/// `|0↑⟩ → first → free(t) → second`, then the population of `|0↑⟩`,
/// optionally read after a clean-up propagator on the `m_S = {0, +1}`
/// manifold.
pub fn hadamard_circuit_scan(
    h: &HamiltonianMatrix,
    first: &Gate,
    second: &Gate,
    grid: &TimeGrid,
    cleanup: Option<&UnitaryMatrix>,
    fourier: &FourierOptions,
) -> Result<ScanResult> {
    require_two_qubit(h)?;
    grid.validate()?;
    let u1 = first.resolve(h)?;
    let u2 = second.resolve(h)?;
    let (values, vectors) = linalg::eigh(&h.matrix);
    let prepared = QuantumState::basis(4, 0)?.apply(&u1);
    let times = grid.values();
    let signal = times
        .par_iter()
        .map(|&t| {
            let free = expm_from(&values, &vectors, t);
            let out = prepared.evolve(&(u2.matrix() * free));
            match cleanup {
                Some(c) => cleanup_readout(&out, c),
                None => Ok(out.population(0)),
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let spectrum = fourier_spectrum(&signal, grid.step_us, fourier)?;
    Ok(ScanResult { times_us: times, signal, spectrum })
}

fn expm_from(values: &[f64], vectors: &CMatrix, t: f64) -> CMatrix {
    let mut scaled = vectors.clone();
    for (k, &lambda) in values.iter().enumerate() {
        let phase = linalg::c(0.0, -TAU * lambda * t).exp();
        scaled.column_mut(k).iter_mut().for_each(|z| *z *= phase);
    }
    scaled * vectors.adjoint()
}

/// Largest `|E_b - E_a|` over electron transitions of `h`.
pub fn max_transition_offset(h: &HamiltonianMatrix) -> Result<f64> {
    let opts = EsrOptions { points: 2, ..EsrOptions::default() };
    let sp = esr_spectrum(h, &drive_operators(h.dim()).0, &opts)?;
    Ok(sp.lines.iter().map(|l| l.position_mhz.abs()).fold(0.0, f64::max))
}

/// Ramsey-type FID `90_x - t - 90_φ(t)` with `φ(t) = -2π ν_d t` and ideal
/// rotations, recording the total `m_S = 0` population.
pub fn electron_fid_scan(
    h: &HamiltonianMatrix,
    state: &QuantumState,
    nu_d_mhz: f64,
    grid: &TimeGrid,
    fourier: &FourierOptions,
) -> Result<ScanResult> {
    grid.validate()?;
    if state.dim() != h.dim() || !h.dim().is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: state.dim() });
    }
    state.validate()?;
    let needed = 2.0 * (nu_d_mhz.abs() + max_transition_offset(h)?);
    let rate = 1.0 / grid.step_us;
    if rate <= needed {
        return Err(Error::Nyquist { rate, needed });
    }
    let dim = h.dim();
    let half = dim / 2;
    let (values, vectors) = linalg::eigh(&h.matrix);
    let opened = state.apply(&electron_rotation(dim, FRAC_PI_2, 0.0));
    let times = grid.values();
    let signal: Vec<f64> = times
        .par_iter()
        .map(|&t| {
            let close = electron_rotation(dim, FRAC_PI_2, -TAU * nu_d_mhz * t);
            let out = opened.evolve(&(close.matrix() * expm_from(&values, &vectors, t)));
            (0..half).map(|k| out.population(k)).sum()
        })
        .collect();
    let spectrum = fourier_spectrum(&signal, grid.step_us, fourier)?;
    Ok(ScanResult { times_us: times, signal, spectrum })
}

/// Which electron level the θ-scan reads out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadoutBranch {
    /// Direct readout of `|0↓⟩`.
    Zero,
    /// A `180_y` first swaps `m_S = -1` into `m_S = 0`.
    MinusOne,
}

/// `P₀↓(θ)` after `θ_y` on `|0↑⟩`, the gate and the readout.
pub fn theta_scan(h: &HamiltonianMatrix, gate: &Gate, thetas: &[f64], readout: ReadoutBranch) -> Result<Vec<f64>> {
    require_two_qubit(h)?;
    if let Some(bad) = thetas.iter().find(|t| !(0.0..=TAU).contains(*t)) {
        return Err(Error::InvalidArgument(format!("θ = {bad} outside [0, 2π]")));
    }
    let u = gate.resolve(h)?;
    let flip = electron_rotation(4, PI, FRAC_PI_2);
    let start = QuantumState::basis(4, 0)?;
    Ok(thetas
        .par_iter()
        .map(|&theta| {
            let mut s = start.apply(&electron_rotation(4, theta, FRAC_PI_2)).apply(&u);
            if readout == ReadoutBranch::MinusOne {
                s = s.apply(&flip);
            }
            s.population(1)
        })
        .collect())
}

/// `[1 - cos θ]/2`.
pub fn theta_law(theta: f64) -> f64 {
    (1.0 - theta.cos()) / 2.0
}

/// `[1 + cos(2π ν t)]/2`.
pub fn hadamard_law(nu_mhz: f64, t_us: f64) -> f64 {
    (1.0 + (TAU * nu_mhz * t_us).cos()) / 2.0
}

/// `θ_k = 2π k / (points - 1)`.
pub fn theta_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|k| TAU * k as f64 / (n - 1) as f64).collect(),
    }
}

/// `theta_rad,<column>` for a θ-scan.
pub fn theta_csv(thetas: &[f64], columns: &[(&str, &[f64])]) -> Result<String> {
    let mut headers = vec!["theta_rad"];
    let mut cols: Vec<&[f64]> = vec![thetas];
    for (name, col) in columns {
        headers.push(name);
        cols.push(col);
    }
    super::emit::csv_columns(&headers, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;
    use crate::spin::build_subspace_hamiltonian;
    use crate::targets::{target_library, TargetSpec};

    fn setup() -> (crate::spin::SpinSystemConfig, HamiltonianMatrix) {
        let cfg = paper::two_qubit_system();
        let h = build_subspace_hamiltonian(&cfg).unwrap();
        (cfg, h)
    }

    #[test]
    fn ideal_hadamard_follows_cosine_law() {
        let (cfg, h) = setup();
        let uh = Gate::Unitary(target_library(&TargetSpec::Hadamard, &cfg).unwrap().matrix);
        let grid = TimeGrid::new(0.0, 0.5, 1024).unwrap();
        let r = hadamard_circuit_scan(&h, &uh, &uh, &grid, None, &FourierOptions::default()).unwrap();
        assert!((r.signal[0] - 1.0).abs() < 1e-12);
        let err =
            r.times_us.iter().zip(&r.signal).map(|(&t, &s)| (s - hadamard_law(cfg.nu_c, t)).abs()).fold(0.0, f64::max);
        assert!(err < 1e-9, "{err}");
        assert!((r.spectrum.peak_frequency().unwrap() - 0.158).abs() < 1e-3);
    }

    #[test]
    fn noop_first_gives_flat_signal() {
        let (cfg, h) = setup();
        let uh = Gate::Unitary(target_library(&TargetSpec::Hadamard, &cfg).unwrap().matrix);
        let grid = TimeGrid::new(0.0, 0.5, 256).unwrap();
        let r = hadamard_circuit_scan(&h, &Gate::Noop, &uh, &grid, None, &FourierOptions::default()).unwrap();
        assert!(r.spectrum.max_amplitude() < 1e-9);
    }

    #[test]
    fn theta_scan_ideal_cnot() {
        let (cfg, h) = setup();
        let cnot = Gate::Unitary(target_library(&TargetSpec::Cnot, &cfg).unwrap().matrix);
        let th = theta_grid(101);
        let p = theta_scan(&h, &cnot, &th, ReadoutBranch::MinusOne).unwrap();
        let err = th.iter().zip(&p).map(|(&t, &v)| (v - theta_law(t)).abs()).fold(0.0, f64::max);
        assert!(err < 1e-9);
        let noop = theta_scan(&h, &Gate::Noop, &th, ReadoutBranch::MinusOne).unwrap();
        assert!(noop.iter().all(|v| v.abs() < 1e-12));
        let z0 = theta_scan(&h, &Gate::Noop, &th, ReadoutBranch::Zero).unwrap();
        let z1 = theta_scan(&h, &cnot, &th, ReadoutBranch::Zero).unwrap();
        assert!(z0.iter().zip(&z1).all(|(a, b)| (a - b).abs() < 1e-9));
        assert!(theta_scan(&h, &cnot, &[7.0], ReadoutBranch::Zero).is_err());
    }

    #[test]
    fn fid_nyquist_enforced() {
        let (_, h) = setup();
        let s = QuantumState::thermal(4).unwrap();
        let grid = TimeGrid::new(0.0, 0.2, 64).unwrap();
        assert!(matches!(
            electron_fid_scan(&h, &s, 3.0, &grid, &FourierOptions::default()),
            Err(Error::Nyquist { .. })
        ));
    }
}

// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Delay and pulse propagators, time-ordered sequence composition and the
//! trace fidelity.
//!
//! Pulses are resonant with the `0 ↔ -1` transition, so in the rotating frame
//! a pulse segment evolves under
//! `H_s + ω₁ [cos φ (s_x ⊗ E) + sin φ (s_y ⊗ E)]`, with `s` the spin-1/2
//! operators of the electron pseudo-qubit.

use std::f64::consts::TAU;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, hermiticity_residual, identity, kron, max_abs, re, unitarity_residual, CMatrix};
use crate::spin::{spin_half, HamiltonianMatrix, HERMITIAN_RTOL};

/// Tolerance on `‖U†U - I‖_max` for anything wrapped as a [`UnitaryMatrix`].
pub const UNITARITY_TOL: f64 = 1e-10;

/// A dense unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        let r = unitarity_residual(&m);
        if r.is_nan() || r > UNITARITY_TOL {
            return Err(Error::InvalidArgument(format!("matrix is not unitary (residual {r:.3e})")));
        }
        Ok(Self(m))
    }

    /// Wraps a product of unitaries without re-checking.
    pub(crate) fn trusted(m: CMatrix) -> Self {
        debug_assert!(unitarity_residual(&m) < 1e-8);
        Self(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self(identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.0)
    }

    /// `self · rhs`
    pub fn compose(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        Self(&self.0 * &rhs.0)
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        Self(self.0.adjoint())
    }
}

impl AsRef<CMatrix> for UnitaryMatrix {
    fn as_ref(&self) -> &CMatrix {
        &self.0
    }
}

/// `exp(-i 2π H t)` from the eigendecomposition of a Hermitian `H` (MHz, μs).
pub fn expm_hermitian(h: &CMatrix, t: f64) -> Result<UnitaryMatrix> {
    let residual = hermiticity_residual(h);
    if residual > HERMITIAN_RTOL * max_abs(h).max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite evolution time {t}")));
    }
    Ok(UnitaryMatrix(expm_from_eigh(&linalg::eigh(h), t)))
}

fn expm_from_eigh((values, vectors): &(Vec<f64>, CMatrix), t: f64) -> CMatrix {
    let mut scaled = vectors.clone();
    for (k, &lambda) in values.iter().enumerate() {
        let phase = c(0.0, -TAU * lambda * t).exp();
        for z in scaled.column_mut(k).iter_mut() {
            *z *= phase;
        }
    }
    scaled * vectors.adjoint()
}

/// One element of a piecewise-constant control sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum PulseSegment {
    /// Free evolution, μs.
    Delay {
        #[serde(rename = "delay_us")]
        tau: f64,
    },
    /// Resonant pulse of duration `t` (μs) and phase `phi` (rad).
    Pulse {
        #[serde(rename = "pulse_us")]
        t: f64,
        #[serde(rename = "phase_rad")]
        phi: f64,
    },
}

impl PulseSegment {
    pub fn duration(&self) -> f64 {
        match *self {
            PulseSegment::Delay { tau } => tau,
            PulseSegment::Pulse { t, .. } => t,
        }
    }
}

/// Delays and pulses in temporal order, driven at Rabi frequency `omega1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseSequence {
    /// `ω₁/2π`, MHz.
    #[serde(rename = "omega1_MHz")]
    pub omega1: f64,
    pub segments: Vec<PulseSegment>,
}

impl PulseSequence {
    pub fn new(omega1: f64, segments: Vec<PulseSegment>) -> Result<Self> {
        let seq = Self { omega1, segments };
        seq.validate()?;
        Ok(seq)
    }

    pub fn empty(omega1: f64) -> Self {
        Self { omega1, segments: Vec::new() }
    }

    /// Builds `τ₁ t₁ τ₂ t₂ … t_n τ_{n+1}` from delays, durations and phases.
    pub fn interleaved(omega1: f64, delays: &[f64], durations: &[f64], phases: &[f64]) -> Result<Self> {
        if durations.len() != phases.len() || delays.len() != durations.len() + 1 {
            return Err(Error::InvalidSequence(format!(
                "need n+1 delays for n pulses, got {} delays, {} durations, {} phases",
                delays.len(),
                durations.len(),
                phases.len()
            )));
        }
        let mut segments = Vec::with_capacity(2 * durations.len() + 1);
        for i in 0..durations.len() {
            segments.push(PulseSegment::Delay { tau: delays[i] });
            segments.push(PulseSegment::Pulse { t: durations[i], phi: phases[i].rem_euclid(TAU) });
        }
        segments.push(PulseSegment::Delay { tau: delays[durations.len()] });
        Self::new(omega1, segments)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut seq: PulseSequence = serde_json::from_str(text)?;
        for seg in &mut seq.segments {
            if let PulseSegment::Pulse { phi, .. } = seg {
                *phi = phi.rem_euclid(TAU);
            }
        }
        seq.validate()?;
        Ok(seq)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.omega1.is_finite() || self.omega1 < 0.0 {
            return Err(Error::InvalidSequence(format!("omega1 must be >= 0, got {}", self.omega1)));
        }
        for (i, seg) in self.segments.iter().enumerate() {
            match *seg {
                PulseSegment::Delay { tau } if !(tau.is_finite() && tau >= 0.0) => {
                    return Err(Error::InvalidSequence(format!("segment {i}: delay {tau} must be >= 0")));
                }
                PulseSegment::Pulse { t, .. } if !(t.is_finite() && t >= 0.0) => {
                    return Err(Error::InvalidSequence(format!("segment {i}: pulse length {t} must be >= 0")));
                }
                PulseSegment::Pulse { phi, .. } if !(0.0..TAU).contains(&phi) => {
                    return Err(Error::InvalidSequence(format!("segment {i}: phase {phi} outside [0, 2π)")));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(PulseSegment::duration).sum()
    }

    pub fn pulse_count(&self) -> usize {
        self.segments.iter().filter(|s| matches!(s, PulseSegment::Pulse { .. })).count()
    }

    pub fn with_omega1(&self, omega1: f64) -> Self {
        Self { omega1, segments: self.segments.clone() }
    }
}

/// `(s_x ⊗ E, s_y ⊗ E)` on a pseudo-qubit register of dimension `dim`.
pub fn drive_operators(dim: usize) -> (CMatrix, CMatrix) {
    let s = spin_half();
    let rest = identity(dim / 2);
    (kron(&s.x, &rest), kron(&s.y, &rest))
}

fn check_even(h: &HamiltonianMatrix) -> Result<()> {
    if h.dim() < 2 || !h.dim().is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: 2 * (h.dim() / 2).max(1), found: h.dim() });
    }
    Ok(())
}

/// `exp(-i 2π H_s τ)`.
pub fn free_propagator(h: &HamiltonianMatrix, tau: f64) -> Result<UnitaryMatrix> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::InvalidArgument(format!("delay {tau} must be >= 0")));
    }
    expm_hermitian(&h.matrix, tau)
}

/// Propagator of a resonant pulse with Rabi frequency `omega1` (MHz), phase
/// `phi` and length `t` (μs).
pub fn pulse_propagator(h: &HamiltonianMatrix, omega1: f64, phi: f64, t: f64) -> Result<UnitaryMatrix> {
    check_even(h)?;
    if !(omega1.is_finite() && omega1 >= 0.0) {
        return Err(Error::InvalidArgument(format!("omega1 {omega1} must be >= 0")));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidArgument(format!("pulse length {t} must be >= 0")));
    }
    let (sx, sy) = drive_operators(h.dim());
    let (s, co) = phi.sin_cos();
    let total = &h.matrix + (sx * re(co) + sy * re(s)) * re(omega1);
    expm_hermitian(&total, t)
}

/// Reusable evaluator for many sequences under one Hamiltonian. The free
/// evolution eigendecomposition is computed once.
#[derive(Debug, Clone)]
pub struct SequenceEvaluator {
    h: CMatrix,
    free_eig: (Vec<f64>, CMatrix),
    sx: CMatrix,
    sy: CMatrix,
}

impl SequenceEvaluator {
    pub fn new(h: &HamiltonianMatrix) -> Result<Self> {
        check_even(h)?;
        let (sx, sy) = drive_operators(h.dim());
        Ok(Self { h: h.matrix.clone(), free_eig: linalg::eigh(&h.matrix), sx, sy })
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.h
    }

    /// Hamiltonian (MHz) acting during `seg`.
    pub fn segment_hamiltonian(&self, seg: &PulseSegment, omega1: f64) -> CMatrix {
        match *seg {
            PulseSegment::Delay { .. } => self.h.clone(),
            PulseSegment::Pulse { phi, .. } => {
                let (s, co) = phi.sin_cos();
                &self.h + &self.sx * re(omega1 * co) + &self.sy * re(omega1 * s)
            }
        }
    }

    pub fn segment(&self, seg: &PulseSegment, omega1: f64) -> CMatrix {
        match *seg {
            PulseSegment::Delay { tau } => expm_from_eigh(&self.free_eig, tau),
            PulseSegment::Pulse { t, phi } => {
                if omega1 == 0.0 {
                    return expm_from_eigh(&self.free_eig, t);
                }
                let (s, co) = phi.sin_cos();
                let mut total = self.h.clone();
                total += &self.sx * re(omega1 * co);
                total += &self.sy * re(omega1 * s);
                expm_from_eigh(&linalg::eigh(&total), t)
            }
        }
    }

    /// Time-ordered product `U_K ⋯ U_2 U_1` at the given Rabi frequency.
    pub fn propagator_at(&self, seq: &PulseSequence, omega1: f64) -> UnitaryMatrix {
        let mut u = identity(self.dim());
        for seg in &seq.segments {
            if seg.duration() == 0.0 {
                continue;
            }
            u = self.segment(seg, omega1) * u;
        }
        UnitaryMatrix::trusted(u)
    }

    pub fn propagator(&self, seq: &PulseSequence) -> UnitaryMatrix {
        self.propagator_at(seq, seq.omega1)
    }

    pub fn robust_fidelity(
        &self,
        seq: &PulseSequence,
        target: &UnitaryMatrix,
        grid: &OmegaGrid,
    ) -> Result<RobustFidelity> {
        if target.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: target.dim() });
        }
        let points: Vec<(f64, f64)> = grid
            .values()?
            .into_iter()
            .map(|w| (w, fidelity_unchecked(self.propagator_at(seq, w).matrix(), target.matrix())))
            .collect();
        Ok(RobustFidelity::from_points(points))
    }
}

/// Right-to-left product of the segment propagators of `seq`.
pub fn sequence_propagator(seq: &PulseSequence, h: &HamiltonianMatrix) -> Result<UnitaryMatrix> {
    seq.validate()?;
    Ok(SequenceEvaluator::new(h)?.propagator(seq))
}

fn fidelity_unchecked(u: &CMatrix, target: &CMatrix) -> f64 {
    let d = u.nrows() as f64;
    (linalg::trace_adjoint_product(u, target).norm() / d).min(1.0)
}

/// `F = |Tr(U† U_T)| / d`.
pub fn gate_fidelity(u: &UnitaryMatrix, target: &UnitaryMatrix) -> Result<f64> {
    if u.dim() != target.dim() {
        return Err(Error::DimensionMismatch { expected: target.dim(), found: u.dim() });
    }
    Ok(fidelity_unchecked(u.matrix(), target.matrix()))
}

/// Equispaced grid of Rabi frequencies for robustness averaging.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaGrid {
    #[serde(rename = "min_MHz")]
    pub min: f64,
    #[serde(rename = "max_MHz")]
    pub max: f64,
    pub points: usize,
}

impl Default for OmegaGrid {
    fn default() -> Self {
        Self { min: 0.48, max: 0.52, points: 5 }
    }
}

impl OmegaGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        let g = Self { min, max, points };
        g.values()?;
        Ok(g)
    }

    pub fn single(omega1: f64) -> Self {
        Self { min: omega1, max: omega1, points: 1 }
    }

    /// Grid values; a single point sits at the midpoint of the range.
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points == 0 {
            return Err(Error::EmptyRange("grid needs at least one point".into()));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max || self.min < 0.0 {
            return Err(Error::EmptyRange(format!("[{}, {}]", self.min, self.max)));
        }
        if self.points == 1 {
            return Ok(vec![0.5 * (self.min + self.max)]);
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        Ok((0..self.points).map(|k| if k + 1 == self.points { self.max } else { self.min + step * k as f64 }).collect())
    }
}

/// Fidelity statistics over an `ω₁` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustFidelity {
    pub mean: f64,
    pub min: f64,
    /// `(ω₁/2π in MHz, F)` per grid point.
    pub points: Vec<(f64, f64)>,
}

impl RobustFidelity {
    fn from_points(points: Vec<(f64, f64)>) -> Self {
        let mean = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
        let min = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        Self { mean, min, points }
    }
}

/// Fidelity of `seq` against `target` with `ω₁` swept over `grid`.
pub fn robust_fidelity(
    seq: &PulseSequence,
    target: &UnitaryMatrix,
    h: &HamiltonianMatrix,
    grid: &OmegaGrid,
) -> Result<RobustFidelity> {
    seq.validate()?;
    SequenceEvaluator::new(h)?.robust_fidelity(seq, target, grid)
}

/// Ideal rotation by `angle` about the in-plane axis at `phase` on the
/// electron pseudo-qubit, identity on the carbons.
pub fn electron_rotation(dim: usize, angle: f64, phase: f64) -> UnitaryMatrix {
    let (sx, sy) = drive_operators(dim);
    let (s, co) = phase.sin_cos();
    let gen = sx * re(co) + sy * re(s);
    // exp(-i angle n·s) = cos(angle/2) - 2i sin(angle/2) n·s
    let m = identity(dim) * re((angle / 2.0).cos()) - gen * c(0.0, 2.0 * (angle / 2.0).sin());
    UnitaryMatrix::trusted(m)
}

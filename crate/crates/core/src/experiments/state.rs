// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Pure and mixed states on the working basis, partial traces and Bloch
//! vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, CVector, C64};
use crate::propagator::UnitaryMatrix;

/// Tolerance for the norm/trace/positivity checks.
pub const STATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(CVector),
    Mixed(CMatrix),
}

impl QuantumState {
    /// Validated pure state.
    pub fn pure(v: CVector) -> Result<Self> {
        let s = QuantumState::Pure(v);
        s.validate()?;
        Ok(s)
    }

    /// Validated density matrix.
    pub fn mixed(rho: CMatrix) -> Result<Self> {
        let s = QuantumState::Mixed(rho);
        s.validate()?;
        Ok(s)
    }

    /// Computational basis state `k`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidState(format!("basis index {k} out of range for dimension {dim}")));
        }
        let mut v = CVector::zeros(dim);
        v[k] = c(1.0, 0.0);
        Ok(QuantumState::Pure(v))
    }

    /// `|0⟩⟨0| ⊗ E/2^n`: electron polarized, carbons unpolarized.
    pub fn thermal(dim: usize) -> Result<Self> {
        if dim < 2 || !dim.is_multiple_of(2) {
            return Err(Error::BadFactorization(format!("dimension {dim} has no pseudo-qubit factor")));
        }
        let half = dim / 2;
        let rho = linalg::kron(&linalg::projector(2, 0), &linalg::identity(half)) / c(half as f64, 0.0);
        Ok(QuantumState::Mixed(rho))
    }

    pub fn dim(&self) -> usize {
        match self {
            QuantumState::Pure(v) => v.len(),
            QuantumState::Mixed(m) => m.nrows(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            QuantumState::Pure(v) => {
                let norm = v.norm();
                if (norm - 1.0).abs() > STATE_TOL {
                    return Err(Error::InvalidState(format!("norm {norm} differs from 1")));
                }
            }
            QuantumState::Mixed(m) => {
                if !m.is_square() {
                    return Err(Error::InvalidState("density matrix is not square".into()));
                }
                let herm = linalg::hermiticity_residual(m);
                if herm > STATE_TOL {
                    return Err(Error::InvalidState(format!("density matrix not Hermitian ({herm:.2e})")));
                }
                let tr = m.trace();
                if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
                    return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
                }
                let min = linalg::eigh(m).0.first().copied().unwrap_or(0.0);
                if min < -STATE_TOL {
                    return Err(Error::InvalidState(format!("negative eigenvalue {min:.2e}")));
                }
            }
        }
        Ok(())
    }

    pub fn density(&self) -> CMatrix {
        match self {
            QuantumState::Pure(v) => v * v.adjoint(),
            QuantumState::Mixed(m) => m.clone(),
        }
    }

    pub fn evolve(&self, u: &CMatrix) -> QuantumState {
        match self {
            QuantumState::Pure(v) => QuantumState::Pure(u * v),
            QuantumState::Mixed(m) => QuantumState::Mixed(u * m * u.adjoint()),
        }
    }

    pub fn apply(&self, u: &UnitaryMatrix) -> QuantumState {
        self.evolve(u.matrix())
    }

    /// Population of basis state `k`.
    pub fn population(&self, k: usize) -> f64 {
        match self {
            QuantumState::Pure(v) => v[k].norm_sqr(),
            QuantumState::Mixed(m) => m[(k, k)].re,
        }
    }

    /// `⟨j|ρ|k⟩`.
    pub fn coherence(&self, j: usize, k: usize) -> C64 {
        match self {
            QuantumState::Pure(v) => v[j] * v[k].conj(),
            QuantumState::Mixed(m) => m[(j, k)],
        }
    }

    /// `Tr(ρ_a ρ_b)`; for pure states `|⟨a|b⟩|²`.
    pub fn overlap(&self, other: &QuantumState) -> f64 {
        (self.density() * other.density()).trace().re
    }
}

/// Reduced density matrix of subsystem `keep` for the factorization `dims`.
pub fn partial_trace(state: &QuantumState, keep: usize, dims: &[usize]) -> Result<CMatrix> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || total != state.dim() {
        return Err(Error::BadFactorization(format!("{dims:?} does not factor dimension {}", state.dim())));
    }
    if keep >= dims.len() {
        return Err(Error::BadFactorization(format!("subsystem {keep} out of range for {} factors", dims.len())));
    }
    let rho = state.density();
    let dk = dims[keep];
    let inner: usize = dims[keep + 1..].iter().product();
    let outer: usize = dims[..keep].iter().product();
    let mut out = CMatrix::zeros(dk, dk);
    for a in 0..dk {
        for b in 0..dk {
            let mut acc = C64::new(0.0, 0.0);
            for o in 0..outer {
                for i in 0..inner {
                    let r = (o * dk + a) * inner + i;
                    let s = (o * dk + b) * inner + i;
                    acc += rho[(r, s)];
                }
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// Bloch vector `(⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩)` of a qubit density matrix, with the
/// first basis state at `z = +1`.
pub fn bloch_vector(rho: &CMatrix) -> Result<[f64; 3]> {
    if rho.nrows() != 2 || rho.ncols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: rho.nrows() });
    }
    let r01 = rho[(0, 1)];
    Ok([2.0 * r01.re, -2.0 * r01.im, rho[(0, 0)].re - rho[(1, 1)].re])
}

/// Qubit dimensions `[2; n]` of a `2^n` register.
pub fn qubit_dims(dim: usize) -> Result<Vec<usize>> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::BadFactorization(format!("dimension {dim} is not a power of two")));
    }
    Ok(vec![2; dim.trailing_zeros() as usize])
}

/// Serializable view of a reduced qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 3]> for BlochPoint {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Self { x, y, z }
    }
}

impl BlochPoint {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

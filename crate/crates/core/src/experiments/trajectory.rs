// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Sampled evolution through a pulse sequence with per-qubit Bloch vectors.

use serde::{Deserialize, Serialize};

use super::state::{bloch_vector, partial_trace, qubit_dims, BlochPoint, QuantumState};
use crate::error::{Error, Result};
use crate::propagator::{expm_hermitian, PulseSequence, SequenceEvaluator};
use crate::spin::HamiltonianMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times_us: Vec<f64>,
    pub electron: Vec<BlochPoint>,
    /// `carbons[j][k]` is carbon `j` at sample `k`.
    pub carbons: Vec<Vec<BlochPoint>>,
}

impl Trajectory {
    pub fn from_states(samples: &[(f64, QuantumState)]) -> Result<Self> {
        let dim = samples.first().map_or(2, |(_, s)| s.dim());
        let dims = qubit_dims(dim)?;
        let mut out = Trajectory {
            times_us: Vec::with_capacity(samples.len()),
            electron: Vec::with_capacity(samples.len()),
            carbons: vec![Vec::with_capacity(samples.len()); dims.len() - 1],
        };
        for (t, s) in samples {
            out.times_us.push(*t);
            out.electron.push(bloch_vector(&partial_trace(s, 0, &dims)?)?.into());
            for (j, track) in out.carbons.iter_mut().enumerate() {
                track.push(bloch_vector(&partial_trace(s, j + 1, &dims)?)?.into());
            }
        }
        Ok(out)
    }

    /// `time_us,ex,ey,ez,cx,cy,cz`; carbons are numbered `c1x, c2x, …` when
    /// there is more than one.
    pub fn to_csv(&self) -> Result<String> {
        let mut headers = vec!["time_us".to_string(), "ex".into(), "ey".into(), "ez".into()];
        let many = self.carbons.len() > 1;
        for j in 0..self.carbons.len() {
            let prefix = if many { format!("c{}", j + 1) } else { "c".into() };
            headers.extend(["x", "y", "z"].iter().map(|a| format!("{prefix}{a}")));
        }
        let split = |pts: &[BlochPoint]| -> [Vec<f64>; 3] {
            [pts.iter().map(|p| p.x).collect(), pts.iter().map(|p| p.y).collect(), pts.iter().map(|p| p.z).collect()]
        };
        let mut cols: Vec<Vec<f64>> = vec![self.times_us.clone()];
        cols.extend(split(&self.electron));
        for track in &self.carbons {
            cols.extend(split(track));
        }
        let h: Vec<&str> = headers.iter().map(String::as_str).collect();
        let c: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
        super::emit::csv_columns(&h, &c)
    }
}

/// States at `t = 0, dt, 2dt, …` and at the end of the sequence.
pub fn stepped_states(
    seq: &PulseSequence,
    h: &HamiltonianMatrix,
    initial: &QuantumState,
    dt_us: f64,
) -> Result<Vec<(f64, QuantumState)>> {
    if !(dt_us.is_finite() && dt_us > 0.0) {
        return Err(Error::InvalidArgument(format!("time step {dt_us} must be positive")));
    }
    seq.validate()?;
    initial.validate()?;
    if initial.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: initial.dim() });
    }
    let ev = SequenceEvaluator::new(h)?;
    let total = seq.total_duration();
    let mut out = vec![(0.0, initial.clone())];
    let mut next_k = 1usize;
    let mut seg_start = 0.0;
    let mut at_start = initial.clone();
    for seg in &seq.segments {
        let d = seg.duration();
        if d == 0.0 {
            continue;
        }
        let hs = ev.segment_hamiltonian(seg, seq.omega1);
        let seg_end = seg_start + d;
        while (next_k as f64) * dt_us < seg_end.min(total) {
            let t = next_k as f64 * dt_us;
            out.push((t, at_start.apply(&expm_hermitian(&hs, t - seg_start)?)));
            next_k += 1;
        }
        at_start = at_start.evolve(&ev.segment(seg, seq.omega1));
        seg_start = seg_end;
    }
    if total > 0.0 {
        out.push((total, at_start));
    }
    Ok(out)
}

/// Bloch vectors of the electron pseudo-qubit and every carbon along the
/// sequence, sampled every `dt_us`.
pub fn bloch_trajectory(
    seq: &PulseSequence,
    h: &HamiltonianMatrix,
    initial: &QuantumState,
    dt_us: f64,
) -> Result<Trajectory> {
    Trajectory::from_states(&stepped_states(seq, h, initial, dt_us)?)
}

// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Stick spectra from eigenvalue differences, Lorentzian broadening and
//! magnitude Fourier spectra of sampled signals.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::spin::HamiltonianMatrix;

/// Eigenvalues closer than this (MHz) are treated as one level.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Relative weight below which a line is not counted as resolvable.
pub const RESOLVABLE_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    /// Lab frequency for ESR sticks with a carrier, otherwise the offset from
    /// the electron transition; may be negative.
    pub position_mhz: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Spectrum {
    pub frequencies_mhz: Vec<f64>,
    pub amplitudes: Vec<f64>,
    /// Stick list; empty for spectra computed from sampled signals.
    pub lines: Vec<Line>,
}

impl Spectrum {
    /// Frequency of the largest amplitude, refined by a parabola through the
    /// neighbouring samples.
    pub fn peak_frequency(&self) -> Option<f64> {
        let (k, _) = self.amplitudes.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
        Some(self.refine(k))
    }

    fn refine(&self, k: usize) -> f64 {
        let f = &self.frequencies_mhz;
        if k == 0 || k + 1 >= f.len() {
            return f[k];
        }
        let (a, b, c) = (self.amplitudes[k - 1], self.amplitudes[k], self.amplitudes[k + 1]);
        let den = a - 2.0 * b + c;
        if den == 0.0 {
            return f[k];
        }
        let shift = 0.5 * (a - c) / den;
        f[k] + shift.clamp(-0.5, 0.5) * (f[k + 1] - f[k])
    }

    /// Local maxima with amplitude at least `rel` times the global maximum,
    /// as refined frequencies in ascending order.
    pub fn peaks(&self, rel: f64) -> Vec<f64> {
        let max = self.max_amplitude();
        if max <= 0.0 {
            return Vec::new();
        }
        let a = &self.amplitudes;
        (0..a.len())
            .filter(|&k| {
                let left = k == 0 || a[k] > a[k - 1];
                let right = k + 1 == a.len() || a[k] >= a[k + 1];
                left && right && a[k] >= rel * max
            })
            .map(|k| self.refine(k))
            .collect()
    }

    pub fn max_amplitude(&self) -> f64 {
        self.amplitudes.iter().copied().fold(0.0, f64::max)
    }

    /// Largest amplitude within `half_width` of `freq`.
    pub fn amplitude_near(&self, freq: f64, half_width: f64) -> f64 {
        self.frequencies_mhz
            .iter()
            .zip(&self.amplitudes)
            .filter(|(f, _)| (**f - freq).abs() <= half_width)
            .map(|(_, a)| *a)
            .fold(0.0, f64::max)
    }

    /// Lines whose weight is at least [`RESOLVABLE_FRACTION`] of the
    /// strongest one.
    pub fn resolvable_lines(&self) -> Vec<Line> {
        let max = self.lines.iter().map(|l| l.weight).fold(0.0, f64::max);
        self.lines.iter().copied().filter(|l| l.weight >= RESOLVABLE_FRACTION * max).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.lines.iter().map(|l| l.weight).sum()
    }

    /// `frequency_MHz,amplitude`, one row per grid point.
    pub fn to_csv(&self) -> Result<String> {
        super::emit::csv_columns(&["frequency_MHz", "amplitude"], &[&self.frequencies_mhz, &self.amplitudes])
    }

    pub fn lines_csv(&self) -> Result<String> {
        let pos: Vec<f64> = self.lines.iter().map(|l| l.position_mhz).collect();
        let w: Vec<f64> = self.lines.iter().map(|l| l.weight).collect();
        super::emit::csv_columns(&["position_MHz", "weight"], &[&pos, &w])
    }
}

/// Processing applied before the discrete Fourier transform.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourierOptions {
    /// Exponential apodization `exp(-t/T₂*)`, μs.
    pub apodization_t2_us: Option<f64>,
    /// Zero-fill to this many samples (rounded up to the signal length).
    pub zero_fill: Option<usize>,
}

/// One-sided DFT magnitude of a uniformly sampled real signal after mean
/// subtraction, normalized by the sample count.
pub fn fourier_spectrum(signal: &[f64], dt_us: f64, opts: &FourierOptions) -> Result<Spectrum> {
    if signal.len() < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    if !(dt_us.is_finite() && dt_us > 0.0) {
        return Err(Error::InvalidArgument(format!("sample spacing {dt_us} must be positive")));
    }
    let n0 = signal.len();
    let mean = signal.iter().sum::<f64>() / n0 as f64;
    let n = opts.zero_fill.unwrap_or(n0).max(n0);
    let mut buf: Vec<Complex<f64>> = signal
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let w = opts.apodization_t2_us.map_or(1.0, |t2| (-(k as f64) * dt_us / t2).exp());
            Complex::new((s - mean) * w, 0.0)
        })
        .collect();
    buf.resize(n, Complex::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let half = n / 2;
    let df = 1.0 / (n as f64 * dt_us);
    Ok(Spectrum {
        frequencies_mhz: (0..=half).map(|k| k as f64 * df).collect(),
        amplitudes: buf[..=half].iter().map(|z| z.norm() / n0 as f64).collect(),
        lines: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineWeighting {
    /// `|⟨b|X|a⟩|²`.
    #[default]
    MatrixElement,
    /// `|⟨b|X|a⟩|² · |p_a - p_b|` with populations of the supplied state.
    PopulationDifference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EsrOptions {
    /// Lorentzian full width at half maximum, MHz.
    pub linewidth_mhz: f64,
    pub weighting: LineWeighting,
    /// Populations for [`LineWeighting::PopulationDifference`]; defaults to
    /// the electron-polarized, carbon-unpolarized state.
    pub state: Option<QuantumState>,
    pub points: usize,
    /// Electron transition frequency the offsets are measured from, MHz.
    pub carrier_mhz: f64,
}

impl Default for EsrOptions {
    fn default() -> Self {
        Self {
            linewidth_mhz: 0.0106,
            weighting: LineWeighting::MatrixElement,
            state: None,
            points: 1024,
            carrier_mhz: 0.0,
        }
    }
}

fn level_clusters(values: &[f64]) -> Vec<(f64, Vec<usize>)> {
    let mut clusters: Vec<(f64, Vec<usize>)> = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        match clusters.last_mut() {
            Some((e, idx)) if (v - *e).abs() <= DEGENERACY_TOL => idx.push(k),
            _ => clusters.push((v, vec![k])),
        }
    }
    for (e, idx) in &mut clusters {
        *e = idx.iter().map(|&k| values[k]).sum::<f64>() / idx.len() as f64;
    }
    clusters
}

/// Eigen-decomposition of one diagonal block, eigenvectors embedded in the
/// full space.
fn block_eigh(m: &CMatrix, offset: usize, len: usize) -> (Vec<f64>, CMatrix) {
    let (values, vectors) = linalg::eigh(&m.view((offset, offset), (len, len)).into_owned());
    let mut full = CMatrix::zeros(m.nrows(), len);
    full.view_mut((offset, 0), (len, len)).copy_from(&vectors);
    (values, full)
}

/// Stick spectrum of the transition operator `flip` under `h`, broadened by
/// Lorentzians of the given linewidth.
///
/// `h` must be block diagonal in the electron pseudo-qubit (first half of the
/// basis is `m_S = 0`). A line from `m_S = 0` level `a` to the other electron
/// level `b` sits at `carrier + E_b - E_a`. Degenerate levels are grouped so
/// that weights do not depend on the eigenbasis chosen inside a level, and
/// coincident transitions are merged into one stick.
pub fn esr_spectrum(h: &HamiltonianMatrix, flip: &CMatrix, opts: &EsrOptions) -> Result<Spectrum> {
    if !(opts.linewidth_mhz.is_finite() && opts.linewidth_mhz > 0.0) {
        return Err(Error::InvalidArgument(format!("linewidth {} must be positive", opts.linewidth_mhz)));
    }
    if !opts.carrier_mhz.is_finite() {
        return Err(Error::InvalidArgument("carrier must be finite".into()));
    }
    let dim = h.dim();
    if flip.nrows() != dim || flip.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: flip.nrows() });
    }
    if opts.points < 2 {
        return Err(Error::InvalidArgument("need at least two grid points".into()));
    }
    if !dim.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("odd dimension {dim} has no electron pseudo-qubit")));
    }
    let half = dim / 2;
    let tol = 1e-12 * linalg::max_abs(&h.matrix).max(1.0);
    if h.matrix.view((0, half), (half, half)).iter().any(|z| z.norm() > tol) {
        return Err(Error::InvalidArgument("Hamiltonian mixes electron levels".into()));
    }
    let (v0, u0) = block_eigh(&h.matrix, 0, half);
    let (v1, u1) = block_eigh(&h.matrix, half, half);
    // x[(j, i)] = ⟨b_j|X|a_i⟩
    let x = u1.adjoint() * flip * &u0;
    let pops: Option<(Vec<f64>, Vec<f64>)> = match opts.weighting {
        LineWeighting::MatrixElement => None,
        LineWeighting::PopulationDifference => {
            let state = match &opts.state {
                Some(s) => s.clone(),
                None => QuantumState::thermal(dim)?,
            };
            if state.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: state.dim() });
            }
            let rho = state.density();
            let diag = |u: &CMatrix| -> Vec<f64> {
                let r = u.adjoint() * &rho * u;
                (0..half).map(|k| r[(k, k)].re).collect()
            };
            Some((diag(&u0), diag(&u1)))
        }
    };
    let scale = linalg::max_abs(flip).max(f64::MIN_POSITIVE);
    let lower = level_clusters(&v0);
    let upper = level_clusters(&v1);
    let mut lines = Vec::new();
    for (ea, a) in &lower {
        for (eb, b) in &upper {
            let mut w = 0.0;
            for &i in a {
                for &j in b {
                    let m = x[(j, i)].norm_sqr();
                    w += match &pops {
                        None => m,
                        Some((p0, p1)) => m * (p0[i] - p1[j]).abs(),
                    };
                }
            }
            if w > 1e-12 * scale * scale {
                lines.push(Line { position_mhz: opts.carrier_mhz + eb - ea, weight: w });
            }
        }
    }
    lines.sort_by(|l, r| l.position_mhz.total_cmp(&r.position_mhz));
    let mut merged: Vec<Line> = Vec::with_capacity(lines.len());
    for l in lines {
        match merged.last_mut() {
            Some(m) if l.position_mhz - m.position_mhz <= DEGENERACY_TOL => m.weight += l.weight,
            _ => merged.push(l),
        }
    }
    let lines = merged;

    let gamma = opts.linewidth_mhz / 2.0;
    let pad = 10.0 * opts.linewidth_mhz;
    let lo = lines.first().map_or(opts.carrier_mhz, |l| l.position_mhz) - pad;
    let hi = lines.last().map_or(opts.carrier_mhz, |l| l.position_mhz) + pad;
    let step = (hi - lo) / (opts.points - 1) as f64;
    let frequencies_mhz: Vec<f64> = (0..opts.points).map(|k| lo + k as f64 * step).collect();
    let amplitudes = frequencies_mhz
        .iter()
        .map(|&f| lines.iter().map(|l| l.weight * gamma * gamma / ((f - l.position_mhz).powi(2) + gamma * gamma)).sum())
        .collect();
    Ok(Spectrum { frequencies_mhz, amplitudes, lines })
}

/// `T₂* = 1/(π δν)` in μs for a linewidth in MHz.
pub fn min_coherence_time(linewidth_mhz: f64) -> Result<f64> {
    if !(linewidth_mhz.is_finite() && linewidth_mhz > 0.0) {
        return Err(Error::InvalidArgument(format!("linewidth {linewidth_mhz} must be positive")));
    }
    Ok(1.0 / (std::f64::consts::PI * linewidth_mhz))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;
    use crate::propagator::drive_operators;
    use crate::spin::{build_manifold_hamiltonian, build_subspace_hamiltonian, Manifold};
    use std::f64::consts::PI;

    #[test]
    fn coherence_time_laws() {
        assert!((min_coherence_time(1.0 / PI).unwrap() - 1.0).abs() < 1e-15);
        let a = min_coherence_time(0.0106).unwrap();
        assert!((a - 30.0).abs() < 0.1);
        assert!((min_coherence_time(0.0212).unwrap() - a / 2.0).abs() < 1e-12);
        assert!(min_coherence_time(0.0).is_err());
        assert!(min_coherence_time(-1.0).is_err());
    }

    #[test]
    fn cosine_peak_and_flat_signal() {
        let dt = 0.5;
        let s: Vec<f64> = (0..1024).map(|k| 0.5 * (1.0 + (2.0 * PI * 0.158 * k as f64 * dt).cos())).collect();
        let sp = fourier_spectrum(&s, dt, &FourierOptions::default()).unwrap();
        assert!((sp.peak_frequency().unwrap() - 0.158).abs() < 0.5 / (1024.0 * dt));
        let flat = fourier_spectrum(&[0.5; 64], dt, &FourierOptions::default()).unwrap();
        assert!(flat.max_amplitude() < 1e-15);
    }

    #[test]
    fn two_qubit_working_subspace_has_four_lines() {
        let h = build_subspace_hamiltonian(&paper::two_qubit_system()).unwrap();
        let sp = esr_spectrum(&h, &drive_operators(4).0, &EsrOptions::default()).unwrap();
        assert_eq!(sp.lines.len(), 4);
        assert_eq!(sp.resolvable_lines().len(), 4);
        // ‖s_x ⊗ E‖²_F / 2
        assert!((sp.total_weight() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn plus_manifold_has_two_resolvable_lines() {
        let h = build_manifold_hamiltonian(&paper::two_qubit_system(), Manifold::Plus).unwrap();
        let sp = esr_spectrum(&h, &drive_operators(4).0, &EsrOptions::default()).unwrap();
        assert_eq!(sp.resolvable_lines().len(), 2);
    }

    #[test]
    fn population_weighting_uses_state() {
        let h = build_subspace_hamiltonian(&paper::two_qubit_system()).unwrap();
        let opts = EsrOptions { weighting: LineWeighting::PopulationDifference, ..EsrOptions::default() };
        let sp = esr_spectrum(&h, &drive_operators(4).0, &opts).unwrap();
        assert_eq!(sp.lines.len(), 4);
        assert!((sp.total_weight() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn carrier_shifts_every_stick() {
        let h = build_subspace_hamiltonian(&paper::two_qubit_system()).unwrap();
        let base = esr_spectrum(&h, &drive_operators(4).0, &EsrOptions::default()).unwrap();
        let opts = EsrOptions { carrier_mhz: 2000.0, ..EsrOptions::default() };
        let shifted = esr_spectrum(&h, &drive_operators(4).0, &opts).unwrap();
        for (a, b) in base.lines.iter().zip(&shifted.lines) {
            assert!((b.position_mhz - a.position_mhz - 2000.0).abs() < 1e-9);
        }
        assert!(shifted.lines.iter().all(|l| l.position_mhz > 0.0));
    }

    #[test]
    fn rejects_mixed_blocks() {
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 2)] = crate::linalg::re(0.1);
        m[(2, 0)] = crate::linalg::re(0.1);
        let h = HamiltonianMatrix::new(m, vec![String::new(); 4]).unwrap();
        assert!(esr_spectrum(&h, &drive_operators(4).0, &EsrOptions::default()).is_err());
    }

    #[test]
    fn rejects_bad_linewidth() {
        let h = build_subspace_hamiltonian(&paper::two_qubit_system()).unwrap();
        let opts = EsrOptions { linewidth_mhz: 0.0, ..EsrOptions::default() };
        assert!(esr_spectrum(&h, &drive_operators(4).0, &opts).is_err());
    }
}

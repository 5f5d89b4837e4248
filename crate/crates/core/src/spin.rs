// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Spin operators, register Hamiltonians, the ¹³C eigenstructure and the
//! dipolar-geometry inversion.
//!
//! All Hamiltonians are `H/2π` in MHz. The electron is restricted to a
//! two-level manifold `{m_S = 0, m_S = ±1}` and treated as a pseudo-qubit with
//! `|0⟩` as its first basis state; carbons follow in ascending label order.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, embed, hermiticity_residual, identity, kron, max_abs, re, CMatrix};

/// Relative Hermiticity tolerance enforced on every constructed Hamiltonian.
pub const HERMITIAN_RTOL: f64 = 1e-12;

/// Electron gyromagnetic ratio, rad s⁻¹ T⁻¹.
pub const GAMMA_E: f64 = -1.761e11;
/// ¹³C gyromagnetic ratio, rad s⁻¹ T⁻¹.
pub const GAMMA_C: f64 = 6.728e7;
/// Planck constant, J s.
pub const PLANCK: f64 = 6.626e-34;
/// `μ₀ / 4π`, H m⁻¹.
pub const MU0_OVER_4PI: f64 = 1e-7;

/// Cartesian spin operators for a single spin.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub x: CMatrix,
    pub y: CMatrix,
    pub z: CMatrix,
}

/// Spin matrices for `S = 1/2` or `S = 1`, basis ordered by descending `m`.
pub fn spin_operators(spin: f64) -> Result<SpinOperators> {
    if spin == 0.5 {
        Ok(SpinOperators {
            x: CMatrix::from_row_slice(2, 2, &[re(0.0), re(0.5), re(0.5), re(0.0)]),
            y: CMatrix::from_row_slice(2, 2, &[re(0.0), c(0.0, -0.5), c(0.0, 0.5), re(0.0)]),
            z: CMatrix::from_row_slice(2, 2, &[re(0.5), re(0.0), re(0.0), re(-0.5)]),
        })
    } else if spin == 1.0 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = re(0.0);
        Ok(SpinOperators {
            x: CMatrix::from_row_slice(3, 3, &[z, re(s), z, re(s), z, re(s), z, re(s), z]),
            y: CMatrix::from_row_slice(3, 3, &[z, c(0.0, -s), z, c(0.0, s), z, c(0.0, -s), z, c(0.0, s), z]),
            z: CMatrix::from_row_slice(3, 3, &[re(1.0), z, z, z, z, z, z, z, re(-1.0)]),
        })
    } else {
        Err(Error::UnsupportedSpin(spin))
    }
}

pub(crate) fn spin_half() -> SpinOperators {
    spin_operators(0.5).expect("spin 1/2 is supported")
}

/// Secular hyperfine coupling of one ¹³C to the electron, MHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperfineCoupling {
    #[serde(rename = "A_zz_MHz")]
    pub a_zz: f64,
    #[serde(rename = "A_zx_MHz")]
    pub a_zx: f64,
    /// Carbon index `j` (1-based). Defaults to the position in the list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u32>,
}

impl HyperfineCoupling {
    pub fn new(a_zz: f64, a_zx: f64) -> Self {
        Self { a_zz, a_zx, label: None }
    }

    pub fn labeled(a_zz: f64, a_zx: f64, label: u32) -> Self {
        Self { a_zz, a_zx, label: Some(label) }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { a_zz: self.a_zz * factor, a_zx: self.a_zx * factor, label: self.label }
    }
}

/// Physical parameters of an electron + ¹⁴N + ¹³C register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinSystemConfig {
    /// Zero-field splitting, MHz.
    #[serde(rename = "D_MHz")]
    pub d: f64,
    /// Electron Larmor frequency, MHz.
    #[serde(rename = "nu_e_MHz")]
    pub nu_e: f64,
    /// ¹³C Larmor frequency, MHz.
    #[serde(rename = "nu_C_MHz")]
    pub nu_c: f64,
    /// ¹⁴N hyperfine coupling, MHz.
    #[serde(rename = "A_N_MHz")]
    pub a_n: f64,
    /// Static field, mT. Informational only.
    #[serde(rename = "B0_mT")]
    pub b0: f64,
    pub carbons: Vec<HyperfineCoupling>,
}

impl SpinSystemConfig {
    /// Parses and validates a JSON document. A negative `nu_C_MHz` is
    /// normalized to its magnitude.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SpinSystemConfig = serde_json::from_str(text)?;
        cfg.normalized()
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Applies the sign convention for `nu_C` and checks every invariant.
    pub fn normalized(mut self) -> Result<Self> {
        self.nu_c = self.nu_c.abs();
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.d, self.nu_e, self.nu_c, self.a_n, self.b0];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("non-finite parameter".into()));
        }
        if self.nu_c <= 0.0 {
            return Err(Error::InvalidConfig("nu_C must be positive".into()));
        }
        if self.carbons.is_empty() || self.carbons.len() > 4 {
            return Err(Error::InvalidConfig(format!("expected 1 to 4 carbons, found {}", self.carbons.len())));
        }
        for (i, cpl) in self.carbons.iter().enumerate() {
            if !cpl.a_zz.is_finite() || !cpl.a_zx.is_finite() {
                return Err(Error::InvalidConfig(format!("carbon {} has a non-finite coupling", i + 1)));
            }
            if cpl.a_zz == 0.0 && cpl.a_zx == 0.0 {
                return Err(Error::InvalidConfig(format!("carbon {} is uncoupled", i + 1)));
            }
        }
        Ok(())
    }

    pub fn n_carbons(&self) -> usize {
        self.carbons.len()
    }

    /// Register size counting electron, ¹⁴N and carbons.
    pub fn n_qubits(&self) -> usize {
        self.carbons.len() + 2
    }

    /// Dimension of the working subspace (`m_N = 1` factored out).
    pub fn subspace_dim(&self) -> usize {
        2usize << self.carbons.len()
    }

    pub fn carbon_label(&self, index: usize) -> u32 {
        self.carbons[index].label.unwrap_or(index as u32 + 1)
    }

    /// Copy with the carbon list replaced.
    pub fn with_carbons(&self, carbons: Vec<HyperfineCoupling>) -> Self {
        Self { carbons, ..self.clone() }
    }

    /// Copy keeping only the carbons at the given list positions.
    pub fn select_carbons(&self, indices: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(indices.len());
        for &i in indices {
            let cpl = self.carbons.get(i).ok_or(Error::CarbonIndex { index: i + 1, count: self.carbons.len() })?;
            out.push(HyperfineCoupling { label: Some(self.carbon_label(i)), ..*cpl });
        }
        Ok(self.with_carbons(out))
    }

    fn require_single_carbon(&self) -> Result<&HyperfineCoupling> {
        match self.carbons.as_slice() {
            [one] => Ok(one),
            other => {
                Err(Error::InvalidConfig(format!("two-qubit builders need exactly one carbon, found {}", other.len())))
            }
        }
    }
}

/// A Hermitian matrix in frequency units with its basis labels.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    pub matrix: CMatrix,
    pub basis: Vec<String>,
}

impl HamiltonianMatrix {
    pub fn new(matrix: CMatrix, basis: Vec<String>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), found: matrix.ncols() });
        }
        if basis.len() != matrix.nrows() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), found: basis.len() });
        }
        let residual = hermiticity_residual(&matrix);
        let scale = max_abs(&matrix).max(1.0);
        if residual > HERMITIAN_RTOL * scale {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self { matrix, basis })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigh(&self.matrix).0
    }
}

/// Which electron level pairs with `m_S = 0` in the pseudo-qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Manifold {
    /// `m_S = {0, -1}`, the working subspace.
    Minus,
    /// `m_S = {0, +1}`, used by the clean-up operation.
    Plus,
}

impl Manifold {
    pub fn ms(self) -> i8 {
        match self {
            Manifold::Minus => -1,
            Manifold::Plus => 1,
        }
    }
}

/// Carbon-register Hamiltonian conditioned on the electron level `m_S`:
/// `Σ_j [-ν_C I_z^j + m_S (A_zz^j I_z^j + A_zx^j I_x^j)]`.
pub fn carbon_block(config: &SpinSystemConfig, ms: i8) -> CMatrix {
    let n = config.carbons.len();
    let dims = vec![2usize; n];
    let ops = spin_half();
    let m = f64::from(ms);
    let mut h = CMatrix::zeros(1 << n, 1 << n);
    for (j, cpl) in config.carbons.iter().enumerate() {
        let iz = embed(&ops.z, j, &dims);
        let ix = embed(&ops.x, j, &dims);
        h += iz * re(-config.nu_c + m * cpl.a_zz) + ix * re(m * cpl.a_zx);
    }
    h
}

fn carbon_labels(n: usize) -> Vec<String> {
    (0..1usize << n).map(|k| (0..n).map(|j| if k >> (n - 1 - j) & 1 == 0 { '↑' } else { '↓' }).collect()).collect()
}

fn pseudo_qubit_basis(config: &SpinSystemConfig, manifold: Manifold) -> Vec<String> {
    let other = match manifold {
        Manifold::Minus => "-1",
        Manifold::Plus => "+1",
    };
    let carbons = carbon_labels(config.carbons.len());
    ["0", other].iter().flat_map(|e| carbons.iter().map(move |cs| format!("|{e}{cs}⟩"))).collect()
}

/// `|0⟩⟨0| ⊗ H_0 + |m⟩⟨m| ⊗ H_m` for the chosen manifold, all carbons.
pub fn build_manifold_hamiltonian(config: &SpinSystemConfig, manifold: Manifold) -> Result<HamiltonianMatrix> {
    config.validate()?;
    let h0 = carbon_block(config, 0);
    let hm = carbon_block(config, manifold.ms());
    let m = kron(&linalg::projector(2, 0), &h0) + kron(&linalg::projector(2, 1), &hm);
    HamiltonianMatrix::new(m, pseudo_qubit_basis(config, manifold))
}

/// 4×4 working-subspace Hamiltonian in the basis `{|0↑⟩, |0↓⟩, |-1↑⟩, |-1↓⟩}`.
pub fn build_subspace_hamiltonian(config: &SpinSystemConfig) -> Result<HamiltonianMatrix> {
    config.require_single_carbon()?;
    build_manifold_hamiltonian(config, Manifold::Minus)
}

/// `2^(n-1)`-dimensional working-subspace Hamiltonian for `n - 2` carbons.
pub fn build_multiqubit_hamiltonian(config: &SpinSystemConfig) -> Result<HamiltonianMatrix> {
    build_manifold_hamiltonian(config, Manifold::Minus)
}

/// 6×6 secular lab-frame Hamiltonian of the electron spin-1 and one carbon
/// with the ¹⁴N fixed in `m_N = 1`. Electron basis `m_S = +1, 0, -1`.
pub fn build_lab_hamiltonian(config: &SpinSystemConfig) -> Result<HamiltonianMatrix> {
    config.validate()?;
    let cpl = config.require_single_carbon()?;
    let s = spin_operators(1.0)?;
    let i = spin_half();
    let e2 = identity(2);
    let e3 = identity(3);
    let sz2 = &s.z * &s.z;
    let m = kron(&sz2, &e2) * re(config.d)
        - kron(&s.z, &e2) * re(config.nu_e - config.a_n)
        - kron(&e3, &i.z) * re(config.nu_c)
        + kron(&s.z, &i.z) * re(cpl.a_zz)
        + kron(&s.z, &i.x) * re(cpl.a_zx);
    let basis =
        ["+1", "0", "-1"].iter().flat_map(|e| ["↑", "↓"].into_iter().map(move |cs| format!("|{e}{cs}⟩"))).collect();
    HamiltonianMatrix::new(m, basis)
}

/// Tilt angles, transition frequencies and eigenvectors of one carbon in the
/// `m_S = ±1` manifolds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarbonEigenstructure {
    /// Signed principal-branch angle, radians.
    pub kappa_minus: f64,
    /// Signed principal-branch angle, radians.
    pub kappa_plus: f64,
    /// Carbon transition frequency in `m_S = -1`, MHz.
    pub nu_minus: f64,
    /// Carbon transition frequency in `m_S = +1`, MHz.
    pub nu_plus: f64,
    /// `cos(κ/2)|↑⟩ + sin(κ/2)|↓⟩` in `m_S = -1`.
    pub phi_minus: [f64; 2],
    /// `-sin(κ/2)|↑⟩ + cos(κ/2)|↓⟩` in `m_S = -1`.
    pub psi_minus: [f64; 2],
    pub phi_plus: [f64; 2],
    pub psi_plus: [f64; 2],
}

impl CarbonEigenstructure {
    /// `|κ₋|` in degrees, folded into `[0°, 90°]`.
    pub fn kappa_minus_deg(&self) -> f64 {
        self.kappa_minus.to_degrees().abs()
    }

    pub fn kappa_plus_deg(&self) -> f64 {
        self.kappa_plus.to_degrees().abs()
    }
}

fn tilt_pair(kappa: f64) -> ([f64; 2], [f64; 2]) {
    let (s, c) = (kappa / 2.0).sin_cos();
    ([c, s], [-s, c])
}

/// `κ± = arctan[A_zx / (A_zz ∓ ν_C)]`, `ν₋ = sqrt(A_zx² + (ν_C + A_zz)²)`.
pub fn carbon_eigenstructure(config: &SpinSystemConfig) -> Result<CarbonEigenstructure> {
    let cpl = config.require_single_carbon()?;
    let nu_c = config.nu_c;
    let dm = cpl.a_zz + nu_c;
    let dp = cpl.a_zz - nu_c;
    if dm == 0.0 && cpl.a_zx == 0.0 {
        return Err(Error::DegenerateBlock { manifold: -1 });
    }
    if dp == 0.0 && cpl.a_zx == 0.0 {
        return Err(Error::DegenerateBlock { manifold: 1 });
    }
    let kappa = |den: f64| if den == 0.0 { PI / 2.0 * cpl.a_zx.signum() } else { (cpl.a_zx / den).atan() };
    let kappa_minus = kappa(dm);
    let kappa_plus = kappa(dp);
    let nu_minus = (cpl.a_zx * cpl.a_zx + dm * dm).sqrt();
    let nu_plus = (cpl.a_zx * cpl.a_zx + dp * dp).sqrt();
    let (phi_minus, psi_minus) = tilt_pair(kappa_minus);
    let (phi_plus, psi_plus) = tilt_pair(kappa_plus);
    Ok(CarbonEigenstructure { kappa_minus, kappa_plus, nu_minus, nu_plus, phi_minus, psi_minus, phi_plus, psi_plus })
}

/// Position of a ¹³C relative to the electron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipolarGeometry {
    /// Electron-carbon distance, nm.
    pub r_nm: f64,
    /// Polar angle from the NV axis, degrees in `[0, 180)`.
    pub theta_deg: f64,
}

/// Gyromagnetic ratios in rad s⁻¹ T⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gyromagnetic {
    pub electron: f64,
    pub carbon: f64,
}

impl Default for Gyromagnetic {
    fn default() -> Self {
        Self { electron: GAMMA_E, carbon: GAMMA_C }
    }
}

impl Gyromagnetic {
    /// `-(μ₀/4π) γ_e γ_C h`, so that `b(r) = coefficient / r³`.
    fn coefficient(&self) -> f64 {
        -MU0_OVER_4PI * self.electron * self.carbon * PLANCK
    }

    /// `b(r)/2π` in MHz for `r` in nm.
    pub fn dipolar_mhz(&self, r_nm: f64) -> f64 {
        let r = r_nm * 1e-9;
        self.coefficient() / (r * r * r) / (2.0 * PI) * 1e-6
    }

    fn distance_nm(&self, dipolar_mhz: f64) -> f64 {
        let b = dipolar_mhz * 1e6 * 2.0 * PI;
        (self.coefficient() / b).cbrt() * 1e9
    }
}

/// Secular couplings produced by a carbon at `geometry`:
/// `A_zz = (b/2π)(3cos²θ - 1)`, `A_zx = (b/2π) 3 sinθ cosθ`.
pub fn dipolar_couplings(geometry: &DipolarGeometry, gamma: &Gyromagnetic) -> HyperfineCoupling {
    let b = gamma.dipolar_mhz(geometry.r_nm);
    let (s, c) = geometry.theta_deg.to_radians().sin_cos();
    HyperfineCoupling::new(b * (3.0 * c * c - 1.0), b * 3.0 * s * c)
}

/// Inverts [`dipolar_couplings`].
///
/// Writing `A_zz - b/2 = (3b/2) cos 2θ` and `A_zx = (3b/2) sin 2θ` gives the
/// quadratic `2b² + A_zz b - (A_zz² + A_zx²) = 0` for the dipolar strength,
/// which has exactly one root with the sign of the gyromagnetic product.
pub fn dipolar_geometry(coupling: &HyperfineCoupling, gamma: &Gyromagnetic) -> Result<DipolarGeometry> {
    let (azz, azx) = (coupling.a_zz, coupling.a_zx);
    if !(azz.is_finite() && azx.is_finite()) || (azz == 0.0 && azx == 0.0) {
        return Err(Error::NoSolution("coupling must be finite and non-zero".into()));
    }
    let sign = gamma.coefficient().signum();
    if sign == 0.0 {
        return Err(Error::NoSolution("vanishing gyromagnetic product".into()));
    }
    let norm2 = azz * azz + azx * azx;
    let disc = (azz * azz + 8.0 * norm2).sqrt();
    let b = if sign > 0.0 { (-azz + disc) / 4.0 } else { (-azz - disc) / 4.0 };
    if b == 0.0 || b.signum() != sign {
        return Err(Error::NoSolution(format!("inconsistent sign pattern ({azz}, {azx})")));
    }
    let amp = 1.5 * b;
    let two_theta = (azx / amp).atan2((azz - b / 2.0) / amp);
    let mut theta = two_theta.to_degrees() / 2.0;
    if theta < 0.0 {
        theta += 180.0;
    }
    Ok(DipolarGeometry { r_nm: gamma.distance_nm(b), theta_deg: theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;

    fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a * b - b * a
    }

    #[test]
    fn spin_half_sz_and_commutator() {
        let s = spin_operators(0.5).unwrap();
        assert_eq!(s.z[(0, 0)], re(0.5));
        assert_eq!(s.z[(1, 1)], re(-0.5));
        let r = commutator(&s.x, &s.y) - &s.z * c(0.0, 1.0);
        assert!(max_abs(&r) == 0.0);
    }

    #[test]
    fn spin_one_sz_and_commutator() {
        let s = spin_operators(1.0).unwrap();
        let diag: Vec<f64> = (0..3).map(|k| s.z[(k, k)].re).collect();
        assert_eq!(diag, vec![1.0, 0.0, -1.0]);
        let r = commutator(&s.x, &s.y) - &s.z * c(0.0, 1.0);
        assert!(max_abs(&r) < 1e-15);
        for op in [&s.x, &s.y, &s.z] {
            assert_eq!(hermiticity_residual(op), 0.0);
        }
    }

    #[test]
    fn unsupported_spin_is_rejected() {
        assert!(matches!(spin_operators(1.5), Err(Error::UnsupportedSpin(_))));
    }

    #[test]
    fn lab_hamiltonian_minus_one_block_splitting() {
        let cfg = paper::two_qubit_system();
        let h = build_lab_hamiltonian(&cfg).unwrap();
        assert!(hermiticity_residual(&h.matrix) < 1e-12);
        let block = h.matrix.view((4, 4), (2, 2)).into_owned();
        let (vals, _) = linalg::eigh(&block);
        assert!((vals[1] - vals[0] - 0.11).abs() < 1e-3);
    }

    #[test]
    fn lab_hamiltonian_decoupled_limit() {
        let mut cfg = paper::two_qubit_system();
        cfg.carbons[0] = HyperfineCoupling::new(0.0, 0.0);
        // validate() rejects uncoupled carbons, so build the matrix by hand.
        let s = spin_operators(1.0).unwrap();
        let i = spin_half();
        let m = kron(&(&s.z * &s.z), &identity(2)) * re(cfg.d)
            - kron(&s.z, &identity(2)) * re(cfg.nu_e - cfg.a_n)
            - kron(&identity(3), &i.z) * re(cfg.nu_c);
        for (k, ms) in [1.0, 0.0, -1.0].iter().enumerate() {
            for (l, sign) in [1.0, -1.0].iter().enumerate() {
                let expected = cfg.d * ms * ms - (cfg.nu_e - cfg.a_n) * ms - sign * cfg.nu_c / 2.0;
                assert!((m[(2 * k + l, 2 * k + l)].re - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn subspace_without_transverse_term_is_diagonal() {
        let cfg = paper::two_qubit_system().with_carbons(vec![HyperfineCoupling::new(-0.152, 0.0)]);
        let h = build_subspace_hamiltonian(&cfg).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(h.matrix[(i, j)], re(0.0));
                }
            }
        }
    }

    #[test]
    fn subspace_minus_block_gap() {
        let h = build_subspace_hamiltonian(&paper::two_qubit_system()).unwrap();
        let block = h.matrix.view((2, 2), (2, 2)).into_owned();
        let (vals, _) = linalg::eigh(&block);
        let expected = (0.110f64.powi(2) + 0.006f64.powi(2)).sqrt();
        assert!((vals[1] - vals[0] - expected).abs() < 1e-12);
        assert!((vals[1] - vals[0] - 0.1102).abs() < 1e-4);
    }

    #[test]
    fn two_qubit_builders_reject_multiple_carbons() {
        let cfg = paper::system_for_carbons(&[1, 2]).unwrap();
        assert!(build_subspace_hamiltonian(&cfg).is_err());
        assert!(build_lab_hamiltonian(&cfg).is_err());
        assert!(carbon_eigenstructure(&cfg).is_err());
    }

    #[test]
    fn eigenstructure_zero_transverse_coupling() {
        let cfg = paper::two_qubit_system().with_carbons(vec![HyperfineCoupling::new(-0.152, 0.0)]);
        let e = carbon_eigenstructure(&cfg).unwrap();
        assert_eq!(e.kappa_minus, 0.0);
        assert_eq!(e.phi_minus, [1.0, 0.0]);
        assert_eq!(e.psi_minus, [-0.0, 1.0]);
    }

    #[test]
    fn eigenstructure_degenerate_block() {
        let cfg = paper::two_qubit_system().with_carbons(vec![HyperfineCoupling::new(-0.158, 0.0)]);
        assert!(matches!(carbon_eigenstructure(&cfg), Err(Error::DegenerateBlock { manifold: -1 })));
    }

    #[test]
    fn dipolar_transverse_zero_gives_ninety_degrees() {
        let g = Gyromagnetic::default();
        let geo = dipolar_geometry(&HyperfineCoupling::new(-0.1, 0.0), &g).unwrap();
        assert!((geo.theta_deg - 90.0).abs() < 1e-12);
        assert!((g.dipolar_mhz(geo.r_nm) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn dipolar_rejects_zero_coupling() {
        let g = Gyromagnetic::default();
        assert!(dipolar_geometry(&HyperfineCoupling::new(0.0, 0.0), &g).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = paper::two_qubit_system();
        cfg.carbons.clear();
        assert!(cfg.validate().is_err());
        let cfg = paper::two_qubit_system().with_carbons(vec![HyperfineCoupling::new(0.0, 0.0)]);
        assert!(cfg.validate().is_err());
        let mut cfg = paper::two_qubit_system();
        cfg.nu_c = -0.158;
        let cfg = cfg.normalized().unwrap();
        assert_eq!(cfg.nu_c, 0.158);
    }
}

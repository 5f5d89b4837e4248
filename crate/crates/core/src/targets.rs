// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Target gates in the working subspace.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, embed, identity, kron, projector, re, CMatrix};
use crate::propagator::UnitaryMatrix;
use crate::spin::SpinSystemConfig;

/// Named target, parsed from `hadamard`, `cnot`, `identity` or
/// `ccrot:<carbon>:<theta in degrees>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetSpec {
    /// `E₂ ⊗ H` on the single carbon.
    Hadamard,
    /// `|0⟩⟨0| ⊗ E₂ + |-1⟩⟨-1| ⊗ exp(-iπ I_x)`.
    Cnot,
    /// `exp(-iθ I_x)` on carbon `carbon` (label) when the electron is in `|-1⟩`.
    CcRotation {
        carbon: u32,
        theta: f64,
    },
    Identity,
}

impl TargetSpec {
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpec::Hadamard => write!(f, "hadamard"),
            TargetSpec::Cnot => write!(f, "cnot"),
            TargetSpec::Identity => write!(f, "identity"),
            TargetSpec::CcRotation { carbon, theta } => write!(f, "ccrot:{carbon}:{}", theta.to_degrees()),
        }
    }
}

impl FromStr for TargetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let mut parts = lower.split(':');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        match (head, rest.as_slice()) {
            ("hadamard" | "h", []) => Ok(TargetSpec::Hadamard),
            ("cnot", []) => Ok(TargetSpec::Cnot),
            ("identity" | "noop", []) => Ok(TargetSpec::Identity),
            ("ccrot", [j, theta]) => {
                let carbon = j.parse().map_err(|_| Error::UnknownTarget(s.to_string()))?;
                let deg: f64 = theta.parse().map_err(|_| Error::UnknownTarget(s.to_string()))?;
                if !deg.is_finite() {
                    return Err(Error::UnknownTarget(s.to_string()));
                }
                Ok(TargetSpec::CcRotation { carbon, theta: deg.to_radians() })
            }
            _ => Err(Error::UnknownTarget(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TargetGate {
    pub name: String,
    pub matrix: UnitaryMatrix,
}

impl TargetGate {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

fn rotation_x(theta: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    CMatrix::from_row_slice(2, 2, &[re(co), c(0.0, -s), c(0.0, -s), re(co)])
}

fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[re(h), re(h), re(h), re(-h)])
}

fn conditioned_on_minus_one(carbon_op: &CMatrix) -> CMatrix {
    let dim = carbon_op.nrows();
    kron(&projector(2, 0), &identity(dim)) + kron(&projector(2, 1), carbon_op)
}

fn carbon_position(config: &SpinSystemConfig, label: u32) -> Result<usize> {
    let count = config.n_carbons();
    (0..count).find(|&i| config.carbon_label(i) == label).ok_or(Error::CarbonIndex { index: label as usize, count })
}

/// Resolves `spec` to a unitary on the working subspace of `config`.
pub fn target_library(spec: &TargetSpec, config: &SpinSystemConfig) -> Result<TargetGate> {
    let n = config.n_carbons();
    let single = |what: &str| {
        if n == 1 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{what} is defined for a single carbon, system has {n}")))
        }
    };
    let m = match *spec {
        TargetSpec::Hadamard => {
            single("hadamard")?;
            kron(&identity(2), &hadamard())
        }
        TargetSpec::Cnot => {
            single("cnot")?;
            conditioned_on_minus_one(&rotation_x(PI))
        }
        TargetSpec::Identity => identity(config.subspace_dim()),
        TargetSpec::CcRotation { carbon, theta } => {
            let pos = carbon_position(config, carbon)?;
            let op = embed(&rotation_x(theta), pos, &vec![2; n]);
            conditioned_on_minus_one(&op)
        }
    };
    Ok(TargetGate { name: spec.name(), matrix: UnitaryMatrix::new(m)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CVector;
    use crate::paper;
    use crate::propagator::gate_fidelity;

    #[test]
    fn cnot_maps_minus_one_up_to_minus_i_minus_one_down() {
        let g = target_library(&TargetSpec::Cnot, &paper::two_qubit_system()).unwrap();
        let out = g.matrix.matrix() * CVector::from_vec(vec![re(0.0), re(0.0), re(1.0), re(0.0)]);
        assert!((out[3] - c(0.0, -1.0)).norm() < 1e-15);
        assert!(out[2].norm() < 1e-15);
        let out = g.matrix.matrix() * CVector::from_vec(vec![re(1.0), re(0.0), re(0.0), re(0.0)]);
        assert_eq!(out[0], re(1.0));
    }

    #[test]
    fn zero_angle_rotation_is_identity() {
        let cfg = paper::system_for_carbons(&[1, 2, 3, 4]).unwrap();
        let g = target_library(&TargetSpec::CcRotation { carbon: 1, theta: 0.0 }, &cfg).unwrap();
        let id = UnitaryMatrix::identity(32);
        assert_eq!(gate_fidelity(&g.matrix, &id).unwrap(), 1.0);
    }

    #[test]
    fn full_turn_rotation_flips_sign_of_conditioned_block() {
        let cfg = paper::two_qubit_system();
        let g = target_library(&TargetSpec::CcRotation { carbon: 1, theta: 2.0 * PI }, &cfg).unwrap();
        let m = g.matrix.matrix();
        assert!((m[(2, 2)] + re(1.0)).norm() < 1e-15);
        assert_eq!(m[(0, 0)], re(1.0));
    }

    #[test]
    fn ccrotation_on_labeled_carbon() {
        let cfg = paper::system_for_carbons(&[1, 3]).unwrap();
        let g = target_library(&TargetSpec::CcRotation { carbon: 3, theta: PI }, &cfg).unwrap();
        // |-1, ↑↑⟩ → -i |-1, ↑↓⟩ (second carbon flipped)
        let m = g.matrix.matrix();
        assert!((m[(5, 4)] - c(0.0, -1.0)).norm() < 1e-15);
        assert!(matches!(
            target_library(&TargetSpec::CcRotation { carbon: 2, theta: PI }, &cfg),
            Err(Error::CarbonIndex { .. })
        ));
    }

    #[test]
    fn cnot_equals_ccrotation_pi_on_single_carbon() {
        let cfg = paper::two_qubit_system();
        let a = target_library(&TargetSpec::Cnot, &cfg).unwrap();
        let b = target_library(&TargetSpec::CcRotation { carbon: 1, theta: PI }, &cfg).unwrap();
        assert_eq!(a.matrix, b.matrix);
    }

    #[test]
    fn hadamard_requires_single_carbon() {
        let cfg = paper::system_for_carbons(&[1, 2]).unwrap();
        assert!(target_library(&TargetSpec::Hadamard, &cfg).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!("hadamard".parse::<TargetSpec>().unwrap(), TargetSpec::Hadamard);
        assert_eq!("CNOT".parse::<TargetSpec>().unwrap(), TargetSpec::Cnot);
        match "ccrot:2:45".parse::<TargetSpec>().unwrap() {
            TargetSpec::CcRotation { carbon, theta } => {
                assert_eq!(carbon, 2);
                assert!((theta - PI / 4.0).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        assert!("toffoli".parse::<TargetSpec>().is_err());
        assert!("ccrot:x:45".parse::<TargetSpec>().is_err());
    }
}

// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Bundled physical parameters and reference pulse sequences.
//!
//! `data/paper-params.json` is the single source of the physical constants:
//! register values plus the four-carbon couplings (carbons 2-4 are
//! 1.5, 2/3 and 2.5 times carbon 1). Everything else derives from it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::propagator::PulseSequence;
use crate::spin::SpinSystemConfig;
use crate::targets::TargetSpec;

pub const PAPER_PARAMS_JSON: &str = include_str!("../data/paper-params.json");

/// Name accepted wherever a system config path is expected.
pub const PAPER_PARAMS_NAME: &str = "paper-params";

/// Rabi frequency used for every published sequence, MHz.
pub const OMEGA1: f64 = 0.5;

/// The full four-carbon configuration.
pub fn paper_params() -> SpinSystemConfig {
    SpinSystemConfig::from_json(PAPER_PARAMS_JSON).expect("bundled parameters are valid")
}

/// Electron plus carbon 1, the experimentally studied register.
pub fn two_qubit_system() -> SpinSystemConfig {
    system_for_carbons(&[1]).expect("carbon 1 exists")
}

/// Subset of the bundled carbons by label.
pub fn system_for_carbons(labels: &[u32]) -> Result<SpinSystemConfig> {
    let full = paper_params();
    let positions = labels
        .iter()
        .map(|&l| {
            (0..full.n_carbons())
                .find(|&i| full.carbon_label(i) == l)
                .ok_or(Error::CarbonIndex { index: l as usize, count: full.n_carbons() })
        })
        .collect::<Result<Vec<_>>>()?;
    full.select_carbons(&positions)
}

macro_rules! bundled {
    ($name:literal) => {
        include_str!(concat!("../data/sequences/", $name, ".json"))
    };
}

pub const REF_HADAMARD_JSON: &str = bundled!("ref-hadamard");
pub const REF_CNOT_JSON: &str = bundled!("ref-cnot");

pub fn reference_hadamard() -> PulseSequence {
    PulseSequence::from_json(REF_HADAMARD_JSON).expect("bundled sequence is valid")
}

pub fn reference_cnot() -> PulseSequence {
    PulseSequence::from_json(REF_CNOT_JSON).expect("bundled sequence is valid")
}

/// One row of the multiqubit controlled-controlled rotation table.
#[derive(Debug, Clone, Serialize)]
pub struct MultiqubitRow {
    pub id: &'static str,
    /// Register size including electron and ¹⁴N.
    pub n: usize,
    pub carbons: &'static [u32],
    pub target: TargetSpec,
    pub listed_fidelity: f64,
    /// μs, as printed (one decimal).
    pub listed_duration: f64,
    #[serde(skip)]
    json: &'static str,
}

impl MultiqubitRow {
    pub fn sequence(&self) -> PulseSequence {
        PulseSequence::from_json(self.json).expect("bundled sequence is valid")
    }

    pub fn system(&self) -> SpinSystemConfig {
        system_for_carbons(self.carbons).expect("bundled carbons exist")
    }

    pub fn sequence_json(&self) -> &'static str {
        self.json
    }
}

const HALF_TURN: f64 = std::f64::consts::PI;
const EIGHTH_TURN: f64 = std::f64::consts::FRAC_PI_4;

/// The seven bundled multiqubit sequences. The four n = 6 rows target
/// carbons 1-4 in order.
pub fn multiqubit_rows() -> Vec<MultiqubitRow> {
    let row = |id, n, carbons, carbon, theta, listed_fidelity, listed_duration, json| MultiqubitRow {
        id,
        n,
        carbons,
        target: TargetSpec::CcRotation { carbon, theta },
        listed_fidelity,
        listed_duration,
        json,
    };
    vec![
        row("n4-a", 4, &[1, 2], 1, HALF_TURN, 0.991, 14.4, bundled!("ccrot-n4-a")),
        row("n4-b", 4, &[1, 3], 1, HALF_TURN, 0.996, 12.4, bundled!("ccrot-n4-b")),
        row("n5-c", 5, &[1, 2, 3], 1, HALF_TURN, 0.983, 14.5, bundled!("ccrot-n5-c")),
        row("n6-a", 6, &[1, 2, 3, 4], 1, HALF_TURN, 0.989, 22.5, bundled!("ccrot-n6-a")),
        row("n6-b", 6, &[1, 2, 3, 4], 2, HALF_TURN, 0.939, 24.8, bundled!("ccrot-n6-b")),
        row("n6-c", 6, &[1, 2, 3, 4], 3, EIGHTH_TURN, 0.970, 22.3, bundled!("ccrot-n6-c")),
        row("n6-d", 6, &[1, 2, 3, 4], 4, EIGHTH_TURN, 0.976, 27.9, bundled!("ccrot-n6-d")),
    ]
}

/// Looks up a bundled sequence by file stem (`ref-hadamard`, `ccrot-n6-a`, ...).
pub fn bundled_sequence(name: &str) -> Option<PulseSequence> {
    let json = match name {
        "ref-hadamard" => REF_HADAMARD_JSON,
        "ref-cnot" => REF_CNOT_JSON,
        other => {
            let id = other.strip_prefix("ccrot-")?;
            return multiqubit_rows().into_iter().find(|r| r.id == id).map(|r| r.sequence());
        }
    };
    PulseSequence::from_json(json).ok()
}

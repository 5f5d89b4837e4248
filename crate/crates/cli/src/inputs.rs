// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Loading and validating command inputs.

use std::path::Path;

use anyhow::{bail, Context, Result};
use icgate_core::experiments::Gate;
use icgate_core::paper;
use icgate_core::spin::{build_multiqubit_hamiltonian, HamiltonianMatrix};
use icgate_core::targets::{target_library, TargetGate};
use icgate_core::{OmegaGrid, PulseSequence, SpinSystemConfig, TargetSpec};

use crate::args::SystemArgs;

pub struct System {
    pub config: SpinSystemConfig,
    pub hamiltonian: HamiltonianMatrix,
}

pub fn system(args: &SystemArgs) -> Result<System> {
    let full = if args.system == paper::PAPER_PARAMS_NAME {
        paper::paper_params()
    } else {
        SpinSystemConfig::from_path(&args.system).with_context(|| format!("loading system `{}`", args.system))?
    };
    let config = match &args.carbons {
        None => full,
        Some(labels) => {
            let indices = labels
                .iter()
                .map(|&l| {
                    (0..full.n_carbons())
                        .find(|&i| full.carbon_label(i) == l)
                        .with_context(|| format!("system has no carbon labeled {l}"))
                })
                .collect::<Result<Vec<_>>>()?;
            full.select_carbons(&indices)?
        }
    };
    let hamiltonian = build_multiqubit_hamiltonian(&config)?;
    Ok(System { config, hamiltonian })
}

pub fn sequence(spec: &str) -> Result<PulseSequence> {
    if let Some(seq) = paper::bundled_sequence(spec) {
        return Ok(seq);
    }
    if !Path::new(spec).exists() {
        bail!("`{spec}` is neither a bundled sequence nor an existing file");
    }
    PulseSequence::from_path(spec).with_context(|| format!("loading sequence `{spec}`"))
}

pub fn target(spec: &str, config: &SpinSystemConfig) -> Result<TargetGate> {
    let parsed: TargetSpec = spec.parse()?;
    Ok(target_library(&parsed, config)?)
}

/// `min,max,points`.
pub fn grid(spec: Option<&str>) -> Result<OmegaGrid> {
    let Some(spec) = spec else {
        return Ok(OmegaGrid::default());
    };
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [min, max, points] = parts.as_slice() else {
        bail!("grid `{spec}` must be min,max,points");
    };
    let grid = OmegaGrid::new(
        min.parse().with_context(|| format!("grid minimum `{min}`"))?,
        max.parse().with_context(|| format!("grid maximum `{max}`"))?,
        points.parse().with_context(|| format!("grid points `{points}`"))?,
    )?;
    Ok(grid)
}

/// `noop`, `ideal` (the ideal form of `ideal_target`) or a sequence.
pub fn gate(spec: &str, ideal_target: &TargetSpec, config: &SpinSystemConfig) -> Result<Gate> {
    Ok(match spec {
        "noop" => Gate::Noop,
        "ideal" => Gate::Unitary(target_library(ideal_target, config)?.matrix),
        other => Gate::Sequence(sequence(other)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = grid(Some("0.4, 0.6, 3")).unwrap();
        assert_eq!(g.values().unwrap(), vec![0.4, 0.5, 0.6]);
        assert!(grid(Some("0.4,0.6")).is_err());
        assert!(grid(Some("a,b,c")).is_err());
        assert_eq!(grid(None).unwrap(), OmegaGrid::default());
    }

    #[test]
    fn carbon_selection_by_label() {
        let args = SystemArgs { system: "paper-params".into(), carbons: Some(vec![2, 4]) };
        let s = system(&args).unwrap();
        assert_eq!(s.config.n_carbons(), 2);
        assert_eq!(s.hamiltonian.dim(), 8);
        let bad = SystemArgs { system: "paper-params".into(), carbons: Some(vec![9]) };
        assert!(system(&bad).is_err());
    }
}

// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_PI_2, PI};

use anyhow::{bail, Result};
use icgate_core::experiments::scans::{hadamard_law, theta_csv, theta_grid, theta_law};
use icgate_core::experiments::{
    bloch_trajectory, cleanup_propagator, electron_fid_scan, esr_spectrum, hadamard_circuit_scan, theta_scan,
    CleanupModel, EsrOptions, FourierOptions, Gate, LineWeighting, QuantumState, ReadoutBranch, TimeGrid,
};
use icgate_core::propagator::{drive_operators, electron_rotation, SequenceEvaluator};
use icgate_core::report::derived_report;
use icgate_core::spin::{build_manifold_hamiltonian, Manifold};
use icgate_core::{optimize, GaConfig, ParameterBounds, RobustFidelity, TargetSpec};
use serde::Serialize;

use crate::args::*;
use crate::inputs;

/// Tolerance for the post-run unitarity check.
const INTERNAL_UNITARITY_TOL: f64 = 1e-8;

/// A violated internal invariant (exit code 2).
#[derive(Debug)]
pub struct Internal(pub String);

impl std::fmt::Display for Internal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "internal invariant violated: {}", self.0)
    }
}

impl std::error::Error for Internal {}

/// Files and provenance produced by one command.
#[derive(Default)]
pub struct Outcome {
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub files: Vec<(String, Vec<u8>)>,
}

impl Outcome {
    fn file(&mut self, name: &str, body: impl Into<Vec<u8>>) {
        self.files.push((name.to_string(), body.into()));
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.file(name, text);
        Ok(())
    }
}

fn system_inputs(args: &SystemArgs) -> Vec<String> {
    vec![args.system.clone()]
}

fn state(kind: StateArg, dim: usize) -> Result<QuantumState> {
    Ok(match kind {
        StateArg::Thermal => QuantumState::thermal(dim)?,
        StateArg::Up => QuantumState::basis(dim, 0)?,
        StateArg::Flipped => QuantumState::basis(dim, 0)?.apply(&electron_rotation(dim, PI, FRAC_PI_2)),
    })
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    target: &'a str,
    carbons: Vec<u32>,
    dim: usize,
    sequence: &'a str,
    pulses: usize,
    total_duration_us: f64,
    robustness: &'a RobustFidelity,
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let sys = inputs::system(&args.system)?;
    let seq = inputs::sequence(&args.sequence)?;
    let target = inputs::target(&args.target, &sys.config)?;
    let grid = inputs::grid(args.grid.as_deref())?;
    if target.dim() != sys.hamiltonian.dim() {
        bail!(
            "target `{}` acts on dimension {} but the system has dimension {}",
            target.name,
            target.dim(),
            sys.hamiltonian.dim()
        );
    }
    let ev = SequenceEvaluator::new(&sys.hamiltonian)?;
    let nominal = ev.propagator(&seq);
    if nominal.unitarity_residual() > INTERNAL_UNITARITY_TOL {
        return Err(Internal(format!("propagator unitarity residual {:.2e}", nominal.unitarity_residual())).into());
    }
    let rob = ev.robust_fidelity(&seq, &target.matrix, &grid)?;
    let carbons: Vec<u32> = (0..sys.config.n_carbons()).map(|i| sys.config.carbon_label(i)).collect();
    let report = VerifyReport {
        target: &target.name,
        carbons: carbons.clone(),
        dim: sys.hamiltonian.dim(),
        sequence: &args.sequence,
        pulses: seq.pulse_count(),
        total_duration_us: seq.total_duration(),
        robustness: &rob,
    };

    println!("target      {}", target.name);
    println!("carbons     {carbons:?} (dimension {})", report.dim);
    println!("sequence    {} ({} pulses, {:.2} us)", args.sequence, report.pulses, report.total_duration_us);
    println!("omega1_MHz  fidelity");
    for (w, f) in &rob.points {
        println!("{w:<11.4} {f:.4}");
    }
    println!("mean        {:.4}", rob.mean);
    println!("min         {:.4}", rob.min);

    let mut out = Outcome { inputs: system_inputs(&args.system), ..Outcome::default() };
    out.inputs.push(args.sequence.clone());
    out.json("verify.json", &report)?;
    Ok(out)
}

pub fn optimize_cmd(args: &OptimizeArgs) -> Result<Outcome> {
    let sys = inputs::system(&args.system)?;
    let target = inputs::target(&args.target, &sys.config)?;
    let mut cfg = match &args.ga {
        Some(path) => GaConfig::from_json(&std::fs::read_to_string(path)?)?,
        None => GaConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.rng_seed = seed;
    }
    if let Some(g) = args.generations {
        cfg.generations = g;
    }
    if let Some(p) = args.population {
        cfg.population_size = p;
    }
    if let Some(r) = args.restarts {
        cfg.restarts = r;
    }
    if args.grid.is_some() {
        cfg.omega1_grid = inputs::grid(args.grid.as_deref())?;
    }
    let bounds = ParameterBounds::uniform(args.pulses, args.tau_max, args.t_max)?;
    let res = optimize(&target, &sys.hamiltonian, &bounds, &cfg)?;
    if res.history.windows(2).any(|w| w[1] < w[0]) {
        return Err(Internal("best-fitness history decreased".into()).into());
    }

    println!("target      {}", res.target);
    println!("seed        {}", res.seed);
    println!("generations {}", res.history.len() - 1);
    println!("fitness     {:.4} (min over grid {:.4})", res.best_fitness, res.robustness.min);
    println!("duration    {:.3} us", res.total_duration_us);

    let mut out = Outcome { inputs: system_inputs(&args.system), seed: Some(cfg.rng_seed), ..Outcome::default() };
    if let Some(p) = &args.ga {
        out.inputs.push(p.display().to_string());
    }
    let mut seq = res.sequence.to_json()?;
    seq.push('\n');
    out.file("sequence.json", seq);
    let gens: Vec<f64> = (0..res.history.len()).map(|g| g as f64).collect();
    out.file(
        "history.csv",
        icgate_core::experiments::emit::csv_columns(&["generation", "best_fitness"], &[&gens, &res.history])?,
    );
    out.json("result.json", &res)?;
    Ok(out)
}

#[derive(Serialize)]
struct SpectrumSummary<'a> {
    peak_mhz: Option<f64>,
    result: &'a icgate_core::experiments::ScanResult,
}

pub fn scan(args: &ScanArgs) -> Result<Outcome> {
    match &args.kind {
        ScanKind::Hadamard(a) => scan_hadamard(a),
        ScanKind::Theta(a) => scan_theta(a),
        ScanKind::Fid(a) => scan_fid(a),
        ScanKind::Spectrum(a) => scan_spectrum(a),
        ScanKind::Trajectory(a) => scan_trajectory(a),
    }
}

fn fourier(apodize: Option<f64>) -> FourierOptions {
    FourierOptions { apodization_t2_us: apodize, zero_fill: None }
}

fn scan_hadamard(a: &HadamardScan) -> Result<Outcome> {
    let sys = inputs::system(&a.system)?;
    let uh = match &a.sequence {
        Some(s) => Gate::Sequence(inputs::sequence(s)?),
        None => inputs::gate("ideal", &TargetSpec::Hadamard, &sys.config)?,
    };
    let first = if a.noop_first { Gate::Noop } else { uh.clone() };
    let cleanup = match a.cleanup {
        CleanupArg::None => None,
        CleanupArg::Ideal => Some(cleanup_propagator(&sys.config, CleanupModel::Ideal)?),
        CleanupArg::Simulated => Some(cleanup_propagator(&sys.config, CleanupModel::Simulated)?),
    };
    let grid = TimeGrid::new(0.0, a.dt, a.samples)?;
    let r = hadamard_circuit_scan(&sys.hamiltonian, &first, &uh, &grid, cleanup.as_ref(), &fourier(a.apodize))?;
    let law_err = r
        .times_us
        .iter()
        .zip(&r.signal)
        .map(|(&t, &s)| (s - hadamard_law(sys.config.nu_c, t)).abs())
        .fold(0.0, f64::max);
    let peak = r.spectrum.peak_frequency();
    println!("samples     {}", r.signal.len());
    println!("peak        {} MHz", peak.map_or("none".into(), |p| format!("{p:.4}")));
    println!("max |S - (1 + cos 2 pi nu_C t)/2| = {law_err:.3e}");

    let mut out = Outcome { inputs: system_inputs(&a.system), ..Outcome::default() };
    out.inputs.extend(a.sequence.clone());
    out.file("hadamard_signal.csv", r.signal_csv()?);
    out.file("hadamard_spectrum.csv", r.spectrum.to_csv()?);
    out.json("hadamard.json", &SpectrumSummary { peak_mhz: peak, result: &r })?;
    Ok(out)
}

#[derive(Serialize)]
struct ThetaOutput<'a> {
    gate: &'a str,
    readout: ReadoutArg,
    theta_rad: &'a [f64],
    p0_down: &'a [f64],
}

fn scan_theta(a: &ThetaScan) -> Result<Outcome> {
    let sys = inputs::system(&a.system)?;
    let gate = inputs::gate(&a.gate, &TargetSpec::Cnot, &sys.config)?;
    let readout = match a.readout {
        ReadoutArg::Zero => ReadoutBranch::Zero,
        ReadoutArg::MinusOne => ReadoutBranch::MinusOne,
    };
    let thetas = theta_grid(a.points);
    let p = theta_scan(&sys.hamiltonian, &gate, &thetas, readout)?;
    let law: Vec<f64> = thetas.iter().map(|&t| theta_law(t)).collect();
    let err = p.iter().zip(&law).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    println!("points      {}", p.len());
    println!("max |P - (1 - cos theta)/2| = {err:.3e}");

    let mut out = Outcome { inputs: system_inputs(&a.system), ..Outcome::default() };
    if !matches!(a.gate.as_str(), "noop" | "ideal") {
        out.inputs.push(a.gate.clone());
    }
    out.file("theta.csv", theta_csv(&thetas, &[("p0_down", &p), ("ideal_law", &law)])?);
    out.json("theta.json", &ThetaOutput { gate: &a.gate, readout: a.readout, theta_rad: &thetas, p0_down: &p })?;
    Ok(out)
}

fn scan_fid(a: &FidScan) -> Result<Outcome> {
    let sys = inputs::system(&a.system)?;
    let dim = sys.hamiltonian.dim();
    let gate = inputs::gate(&a.gate, &TargetSpec::Cnot, &sys.config)?;
    let prepared = state(a.state, dim)?.apply(&gate.resolve(&sys.hamiltonian)?);
    let grid = TimeGrid::new(0.0, a.dt, a.samples)?;
    let r = electron_fid_scan(&sys.hamiltonian, &prepared, a.nu_d, &grid, &fourier(a.apodize))?;
    let peaks = r.spectrum.peaks(0.05);
    println!("samples     {}", r.signal.len());
    println!("peaks       {}", peaks.iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>().join(" "));

    let mut out = Outcome { inputs: system_inputs(&a.system), ..Outcome::default() };
    out.file("fid_signal.csv", r.signal_csv()?);
    out.file("fid_spectrum.csv", r.spectrum.to_csv()?);
    out.json("fid.json", &SpectrumSummary { peak_mhz: r.spectrum.peak_frequency(), result: &r })?;
    Ok(out)
}

#[derive(Serialize)]
struct EsrOutput<'a> {
    manifold: ManifoldArg,
    linewidth_mhz: f64,
    resolvable: Vec<icgate_core::experiments::Line>,
    spectrum: &'a icgate_core::experiments::Spectrum,
}

fn scan_spectrum(a: &SpectrumScan) -> Result<Outcome> {
    let sys = inputs::system(&a.system)?;
    let manifold = match a.manifold {
        ManifoldArg::Minus => Manifold::Minus,
        ManifoldArg::Plus => Manifold::Plus,
    };
    let h = build_manifold_hamiltonian(&sys.config, manifold)?;
    let opts = EsrOptions {
        linewidth_mhz: a.linewidth,
        weighting: match a.weighting {
            WeightingArg::MatrixElement => LineWeighting::MatrixElement,
            WeightingArg::PopulationDifference => LineWeighting::PopulationDifference,
        },
        state: None,
        points: a.points,
        carrier_mhz: a.carrier,
    };
    let sp = esr_spectrum(&h, &drive_operators(h.dim()).0, &opts)?;
    let resolvable = sp.resolvable_lines();
    println!("lines       {}", sp.lines.len());
    println!("resolvable  {}", resolvable.len());
    for l in &sp.lines {
        println!("  {:>10.6} MHz  weight {:.6}", l.position_mhz, l.weight);
    }

    let mut out = Outcome { inputs: system_inputs(&a.system), ..Outcome::default() };
    out.file("spectrum.csv", sp.to_csv()?);
    out.file("lines.csv", sp.lines_csv()?);
    out.json(
        "spectrum.json",
        &EsrOutput { manifold: a.manifold, linewidth_mhz: a.linewidth, resolvable, spectrum: &sp },
    )?;
    Ok(out)
}

fn scan_trajectory(a: &TrajectoryScan) -> Result<Outcome> {
    let sys = inputs::system(&a.system)?;
    let seq = inputs::sequence(&a.sequence)?;
    let init = state(a.state, sys.hamiltonian.dim())?;
    let tr = bloch_trajectory(&seq, &sys.hamiltonian, &init, a.dt)?;
    if let Some(p) = tr.electron.iter().chain(tr.carbons.iter().flatten()).find(|p| p.norm() > 1.0 + 1e-10) {
        return Err(Internal(format!("Bloch vector of length {}", p.norm())).into());
    }
    println!("samples     {}", tr.times_us.len());
    if let (Some(e), Some(t)) = (tr.electron.last(), tr.times_us.last()) {
        println!("end         t = {t:.3} us, electron ({:.4}, {:.4}, {:.4})", e.x, e.y, e.z);
    }

    let mut out = Outcome { inputs: system_inputs(&a.system), ..Outcome::default() };
    out.inputs.push(a.sequence.clone());
    out.file("trajectory.csv", tr.to_csv()?);
    out.json("trajectory.json", &tr)?;
    Ok(out)
}

pub fn report(args: &ReportArgs) -> Result<Outcome> {
    let sys = inputs::system(&args.system)?;
    let r = derived_report(&sys.config, args.linewidth)?;
    let text = r.to_string();
    print!("{text}");
    let mut out = Outcome { inputs: system_inputs(&args.system), ..Outcome::default() };
    out.file("report.txt", text);
    out.json("report.json", &r)?;
    Ok(out)
}

pub fn schema(args: &SchemaArgs) -> &'static str {
    match args.kind {
        SchemaKind::System => include_str!("../schemas/system.schema.json"),
        SchemaKind::Sequence => include_str!("../schemas/sequence.schema.json"),
        SchemaKind::GaConfig => include_str!("../schemas/ga-config.schema.json"),
    }
}

// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Real-valued genetic algorithm over `(τ_i, t_i, φ_i)`.
//!
//! Genomes are flat vectors `[τ₁..τ_{n+1}, t₁..t_n, φ₁..φ_n]` describing the
//! sequence `τ₁ t₁ τ₂ … t_n τ_{n+1}`. The fitness is the mean trace fidelity
//! over the configured `ω₁` grid.
//!
//! Every random draw happens in the serial generation loop; only fitness
//! evaluation runs in parallel, and its results are collected in population
//! order, so a fixed seed reproduces the run bit for bit.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagator::{OmegaGrid, PulseSegment, PulseSequence, RobustFidelity, SequenceEvaluator, UnitaryMatrix};
use crate::spin::HamiltonianMatrix;
use crate::targets::TargetGate;

/// Box bounds for every gene.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterBounds {
    pub n_pulses: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl ParameterBounds {
    /// `τ ∈ [0, tau_max]`, `t ∈ [0, t_max]`, `φ ∈ [0, 2π)`.
    pub fn uniform(n_pulses: usize, tau_max: f64, t_max: f64) -> Result<Self> {
        if n_pulses == 0 {
            return Err(Error::InvalidBounds("need at least one pulse".into()));
        }
        if !(tau_max.is_finite() && tau_max > 0.0 && t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidBounds(format!("tau_max = {tau_max}, t_max = {t_max} must be positive")));
        }
        let mut upper = vec![tau_max; n_pulses + 1];
        upper.extend(std::iter::repeat_n(t_max, n_pulses));
        upper.extend(std::iter::repeat_n(TAU, n_pulses));
        Ok(Self { n_pulses, lower: vec![0.0; 3 * n_pulses + 1], upper })
    }

    /// Degenerate bounds containing only `genome`.
    pub fn fixed(genome: &Genome) -> Self {
        Self { n_pulses: genome.n_pulses(), lower: genome.0.clone(), upper: genome.0.clone() }
    }

    pub fn len(&self) -> usize {
        3 * self.n_pulses + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_pulses == 0 {
            return Err(Error::InvalidBounds("need at least one pulse".into()));
        }
        if self.lower.len() != self.len() || self.upper.len() != self.len() {
            return Err(Error::InvalidBounds(format!(
                "expected {} genes, got {} lower / {} upper",
                self.len(),
                self.lower.len(),
                self.upper.len()
            )));
        }
        for (i, (&lo, &hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || lo > hi {
                return Err(Error::InvalidBounds(format!("gene {i}: [{lo}, {hi}]")));
            }
            if self.is_phase(i) && hi > TAU {
                return Err(Error::InvalidBounds(format!("phase gene {i} exceeds 2π")));
            }
        }
        Ok(())
    }

    fn is_phase(&self, i: usize) -> bool {
        i > 2 * self.n_pulses
    }

    fn full_circle(&self, i: usize) -> bool {
        self.is_phase(i) && self.lower[i] == 0.0 && self.upper[i] == TAU
    }

    /// Clamps times into bounds; phases spanning the full circle wrap.
    pub fn repair(&self, genes: &mut [f64]) {
        for (i, g) in genes.iter_mut().enumerate() {
            if self.full_circle(i) {
                *g = g.rem_euclid(TAU);
            } else {
                *g = g.clamp(self.lower[i], self.upper[i]);
            }
        }
    }

    pub fn contains(&self, genes: &[f64]) -> bool {
        genes.len() == self.len()
            && genes.iter().enumerate().all(|(i, &g)| {
                if self.full_circle(i) {
                    (0.0..TAU).contains(&g)
                } else {
                    g >= self.lower[i] && g <= self.upper[i]
                }
            })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut genes: Vec<f64> =
            self.lower.iter().zip(&self.upper).map(|(&lo, &hi)| lo + (hi - lo) * rng.random::<f64>()).collect();
        self.repair(&mut genes);
        genes
    }
}

/// Flat parameter vector `[τ₁..τ_{n+1}, t₁..t_n, φ₁..φ_n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Genome(pub Vec<f64>);

impl Genome {
    pub fn n_pulses(&self) -> usize {
        (self.0.len().saturating_sub(1)) / 3
    }

    pub fn delays(&self) -> &[f64] {
        &self.0[..=self.n_pulses()]
    }

    pub fn durations(&self) -> &[f64] {
        let n = self.n_pulses();
        &self.0[n + 1..2 * n + 1]
    }

    pub fn phases(&self) -> &[f64] {
        let n = self.n_pulses();
        &self.0[2 * n + 1..]
    }

    pub fn total_duration(&self) -> f64 {
        self.delays().iter().chain(self.durations()).sum()
    }

    pub fn to_sequence(&self, omega1: f64) -> Result<PulseSequence> {
        if self.0.len() % 3 != 1 {
            return Err(Error::InvalidSequence(format!("genome length {} is not 3n+1", self.0.len())));
        }
        PulseSequence::interleaved(omega1, self.delays(), self.durations(), self.phases())
    }

    /// Inverse of [`Genome::to_sequence`]; the sequence must alternate
    /// delay, pulse, …, delay.
    pub fn from_sequence(seq: &PulseSequence) -> Result<Self> {
        let mut delays = Vec::new();
        let mut durations = Vec::new();
        let mut phases = Vec::new();
        for (i, seg) in seq.segments.iter().enumerate() {
            match (i % 2, *seg) {
                (0, PulseSegment::Delay { tau }) => delays.push(tau),
                (1, PulseSegment::Pulse { t, phi }) => {
                    durations.push(t);
                    phases.push(phi);
                }
                _ => {
                    return Err(Error::InvalidSequence(format!("segment {i} breaks the delay/pulse alternation")));
                }
            }
        }
        if delays.len() != durations.len() + 1 {
            return Err(Error::InvalidSequence("sequence must start and end with a delay".into()));
        }
        delays.extend(durations);
        delays.extend(phases);
        Ok(Genome(delays))
    }
}

fn default_tournament() -> usize {
    3
}

fn default_omega1() -> f64 {
    crate::paper::OMEGA1
}

/// Genetic-algorithm settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    #[serde(rename = "population")]
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    /// Per-gene mutation probability.
    pub mutation_rate: f64,
    /// Gaussian mutation width as a fraction of each gene's range.
    pub mutation_scale: f64,
    #[serde(rename = "elites")]
    pub elite_count: usize,
    #[serde(rename = "seed")]
    pub rng_seed: u64,
    pub omega1_grid: OmegaGrid,
    #[serde(default = "default_tournament")]
    pub tournament_size: usize,
    /// Stop once the best fitness reaches this value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub early_stop: Option<f64>,
    /// Extra independent runs with seeds `seed + i`; the best is reported.
    #[serde(default)]
    pub restarts: usize,
    /// Nominal Rabi frequency written into the output sequence, MHz.
    #[serde(default = "default_omega1", rename = "omega1_MHz")]
    pub omega1: f64,
    /// Caps the fitness-evaluation thread pool. Not part of the file format.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 300,
            crossover_rate: 0.9,
            mutation_rate: 0.5,
            mutation_scale: 0.05,
            elite_count: 2,
            rng_seed: 1,
            omega1_grid: OmegaGrid::default(),
            tournament_size: 3,
            early_stop: None,
            restarts: 0,
            omega1: default_omega1(),
            threads: None,
        }
    }
}

impl GaConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: GaConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGaConfig(m));
        if self.population_size < 2 {
            return bad(format!("population {} must be at least 2", self.population_size));
        }
        if self.elite_count == 0 || self.elite_count > self.population_size {
            return bad(format!("elites must be in 1..={}", self.population_size));
        }
        for (name, v) in [("crossover_rate", self.crossover_rate), ("mutation_rate", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} = {v} outside [0, 1]"));
            }
        }
        if !(self.mutation_scale.is_finite() && self.mutation_scale >= 0.0) {
            return bad(format!("mutation_scale = {}", self.mutation_scale));
        }
        if self.tournament_size == 0 {
            return bad("tournament_size must be positive".into());
        }
        if !(self.omega1.is_finite() && self.omega1 >= 0.0) {
            return bad(format!("omega1 = {}", self.omega1));
        }
        if self.threads == Some(0) {
            return bad("threads must be positive".into());
        }
        self.omega1_grid.values()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub target: String,
    pub best: Genome,
    pub best_fitness: f64,
    /// Best fitness after each generation; entry 0 is the initial population.
    pub history: Vec<f64>,
    pub robustness: RobustFidelity,
    pub sequence: PulseSequence,
    pub total_duration_us: f64,
    /// Seed of the run that produced `best`.
    pub seed: u64,
    pub evaluations: usize,
}

/// Mean robust fidelity of `genome` against `target`.
pub fn fitness(
    genome: &Genome,
    target: &UnitaryMatrix,
    evaluator: &SequenceEvaluator,
    grid: &OmegaGrid,
) -> Result<f64> {
    let seq = genome.to_sequence(grid.values()?[0])?;
    Ok(evaluator.robust_fidelity(&seq, target, grid)?.mean)
}

struct Individual {
    genes: Vec<f64>,
    fitness: f64,
    duration: f64,
}

/// Higher fitness first, then shorter sequence, then lexicographically
/// smaller genome.
fn rank(a: &Individual, b: &Individual) -> Ordering {
    b.fitness.total_cmp(&a.fitness).then(a.duration.total_cmp(&b.duration)).then_with(|| {
        a.genes.iter().zip(&b.genes).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    })
}

struct Problem<'a> {
    target: &'a UnitaryMatrix,
    evaluator: SequenceEvaluator,
    grid: OmegaGrid,
    omegas: Vec<f64>,
    bounds: &'a ParameterBounds,
}

impl Problem<'_> {
    fn evaluate(&self, genes: Vec<f64>) -> Individual {
        let genome = Genome(genes);
        let seq = genome.to_sequence(self.omegas[0]).expect("repaired genomes form valid sequences");
        let mean = self
            .omegas
            .iter()
            .map(|&w| {
                let u = self.evaluator.propagator_at(&seq, w);
                crate::propagator::gate_fidelity(&u, self.target).expect("dimensions checked")
            })
            .sum::<f64>()
            / self.omegas.len() as f64;
        let duration = genome.total_duration();
        Individual { genes: genome.0, fitness: mean, duration }
    }

    fn evaluate_all(&self, batch: Vec<Vec<f64>>) -> Vec<Individual> {
        batch.into_par_iter().map(|g| self.evaluate(g)).collect()
    }
}

struct RunOutcome {
    best: Individual,
    history: Vec<f64>,
    evaluations: usize,
    seed: u64,
}

fn tournament<'p>(pop: &'p [Individual], k: usize, rng: &mut ChaCha8Rng) -> &'p Individual {
    let mut best = &pop[rng.random_range(0..pop.len())];
    for _ in 1..k {
        let cand = &pop[rng.random_range(0..pop.len())];
        if rank(cand, best) == Ordering::Less {
            best = cand;
        }
    }
    best
}

fn run_once(problem: &Problem<'_>, cfg: &GaConfig, seed: u64) -> RunOutcome {
    let bounds = problem.bounds;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let widths: Vec<f64> =
        bounds.lower.iter().zip(&bounds.upper).map(|(lo, hi)| (hi - lo) * cfg.mutation_scale).collect();

    let initial: Vec<Vec<f64>> = (0..cfg.population_size).map(|_| bounds.sample(&mut rng)).collect();
    let mut pop = problem.evaluate_all(initial);
    let mut evaluations = pop.len();
    pop.sort_by(rank);
    let mut history = vec![pop[0].fitness];

    for _ in 0..cfg.generations {
        if cfg.early_stop.is_some_and(|thr| pop[0].fitness >= thr) {
            break;
        }
        let mut children = Vec::with_capacity(cfg.population_size - cfg.elite_count);
        while children.len() < cfg.population_size - cfg.elite_count {
            let a = tournament(&pop, cfg.tournament_size, &mut rng);
            let b = tournament(&pop, cfg.tournament_size, &mut rng);
            let mut child: Vec<f64> = if rng.random::<f64>() < cfg.crossover_rate {
                a.genes.iter().zip(&b.genes).map(|(&x, &y)| if rng.random::<bool>() { x } else { y }).collect()
            } else {
                a.genes.clone()
            };
            for (g, &w) in child.iter_mut().zip(&widths) {
                if rng.random::<f64>() < cfg.mutation_rate {
                    let z: f64 = rng.sample(StandardNormal);
                    *g += w * z;
                }
            }
            bounds.repair(&mut child);
            children.push(child);
        }
        evaluations += children.len();
        let mut next: Vec<Individual> = pop.drain(..cfg.elite_count).collect();
        next.extend(problem.evaluate_all(children));
        next.sort_by(rank);
        pop = next;
        history.push(pop[0].fitness);
    }

    let best = pop.swap_remove(0);
    RunOutcome { best, history, evaluations, seed }
}

/// Maximizes the mean robust fidelity of an `n`-pulse sequence to `target`.
pub fn optimize(
    target: &TargetGate,
    h: &HamiltonianMatrix,
    bounds: &ParameterBounds,
    cfg: &GaConfig,
) -> Result<OptimizationResult> {
    bounds.validate()?;
    cfg.validate()?;
    if target.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: target.dim() });
    }
    let problem = Problem {
        target: &target.matrix,
        evaluator: SequenceEvaluator::new(h)?,
        grid: cfg.omega1_grid,
        omegas: cfg.omega1_grid.values()?,
        bounds,
    };

    let run_all =
        || (0..=cfg.restarts as u64).map(|i| run_once(&problem, cfg, cfg.rng_seed.wrapping_add(i))).collect::<Vec<_>>();
    let runs = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidGaConfig(e.to_string()))?
            .install(run_all),
        None => run_all(),
    };

    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    let winner = runs
        .into_iter()
        .reduce(|a, b| if rank(&b.best, &a.best) == Ordering::Less { b } else { a })
        .expect("at least one run");

    let best = Genome(winner.best.genes);
    let sequence = best.to_sequence(cfg.omega1)?;
    let robustness = problem.evaluator.robust_fidelity(&sequence, &target.matrix, &problem.grid)?;
    Ok(OptimizationResult {
        target: target.name.clone(),
        total_duration_us: best.total_duration(),
        best,
        best_fitness: winner.best.fitness,
        history: winner.history,
        robustness,
        sequence,
        seed: winner.seed,
        evaluations,
    })
}

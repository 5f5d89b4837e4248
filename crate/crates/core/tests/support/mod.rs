// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference computations that share no code path with the library
//! implementations they check.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use icgate_core::{CMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cz(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = cz(rng.random_range(-1.0..1.0), 0.0);
        for j in 0..i {
            let z = cz(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// `exp(-i 2π H t)` by scaling and squaring of a truncated Taylor series.
pub fn taylor_expm(h: &CMatrix, t: f64) -> CMatrix {
    let dim = h.nrows();
    let a = h * cz(0.0, -TAU * t);
    let norm: f64 = a.iter().map(|z| z.norm()).sum::<f64>().max(1e-300);
    let squarings = (norm / 0.25).log2().ceil().max(0.0) as u32;
    let scaled = &a * cz(0.5f64.powi(squarings as i32), 0.0);
    let mut term = CMatrix::identity(dim, dim);
    let mut sum = term.clone();
    for k in 1..=30 {
        term = &term * &scaled * cz(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Closed-form delay propagator of the two-qubit working subspace in the
/// basis `{|0↑⟩, |0↓⟩, |-1↑⟩, |-1↓⟩}`.
pub fn closed_form_delay(nu_c: f64, a_zz: f64, a_zx: f64, tau: f64) -> CMatrix {
    let nu_minus = (a_zx * a_zx + (nu_c + a_zz).powi(2)).sqrt();
    let kappa = a_zx.atan2(a_zz + nu_c);
    let (s, c) = (PI * nu_minus * tau).sin_cos();
    let mut u = CMatrix::zeros(4, 4);
    u[(0, 0)] = cz(0.0, PI * nu_c * tau).exp();
    u[(1, 1)] = cz(0.0, -PI * nu_c * tau).exp();
    u[(2, 2)] = cz(c, kappa.cos() * s);
    u[(2, 3)] = cz(0.0, kappa.sin() * s);
    u[(3, 2)] = cz(0.0, kappa.sin() * s);
    u[(3, 3)] = cz(c, -kappa.cos() * s);
    u
}

fn kron2(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> CMatrix {
    CMatrix::from_fn(4, 4, |r, c| a[r / 2][c / 2] * b[r % 2][c % 2])
}

/// Product-operator expansion
/// `(-ν_C - A_zz/2) E⊗I_z + A_zz I_z⊗I_z + A_zx I_z⊗I_x - (A_zx/2) E⊗I_x`.
pub fn product_operator_hamiltonian(nu_c: f64, a_zz: f64, a_zx: f64) -> CMatrix {
    let o = cz(0.0, 0.0);
    let h = cz(0.5, 0.0);
    let e = [[cz(1.0, 0.0), o], [o, cz(1.0, 0.0)]];
    let iz = [[h, o], [o, -h]];
    let ix = [[o, h], [h, o]];
    kron2(&e, &iz) * cz(-nu_c - a_zz / 2.0, 0.0) + kron2(&iz, &iz) * cz(a_zz, 0.0) + kron2(&iz, &ix) * cz(a_zx, 0.0)
        - kron2(&e, &ix) * cz(a_zx / 2.0, 0.0)
}

/// Eigenvalues of a Hermitian matrix via the real symmetric embedding
/// `[[Re, -Im], [Im, Re]]`, whose spectrum doubles each eigenvalue.
pub fn eigenvalues_by_embedding(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    let real = nalgebra::DMatrix::<f64>::from_fn(2 * n, 2 * n, |r, c| {
        let z = m[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut vals: Vec<f64> = real.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

/// Distinct `E_{-1,b} - E_{0,a}` of a block-diagonal working-subspace
/// Hamiltonian, from separate diagonalizations of the two blocks. Every
/// cross-block pair is counted; for generic couplings all carry weight.
pub fn block_transition_frequencies(h: &CMatrix) -> Vec<f64> {
    let half = h.nrows() / 2;
    let e0 = eigenvalues_by_embedding(&h.view((0, 0), (half, half)).into_owned());
    let e1 = eigenvalues_by_embedding(&h.view((half, half), (half, half)).into_owned());
    let mut out: Vec<f64> = e0.iter().flat_map(|a| e1.iter().map(move |b| b - a)).collect();
    out.sort_by(f64::total_cmp);
    dedup(out, 1e-9)
}

/// FID line positions `ν_d - (E_{-1,b} - E_{0,a})` of a working-subspace
/// Hamiltonian.
pub fn fid_line_positions(h: &CMatrix, nu_d: f64) -> Vec<f64> {
    let half = h.nrows() / 2;
    let e0 = eigenvalues_by_embedding(&h.view((0, 0), (half, half)).into_owned());
    let e1 = eigenvalues_by_embedding(&h.view((half, half), (half, half)).into_owned());
    let mut out: Vec<f64> = e0.iter().flat_map(|a| e1.iter().map(move |b| nu_d - (b - a))).collect();
    out.sort_by(f64::total_cmp);
    dedup(out, 1e-9)
}

pub fn dedup(sorted: Vec<f64>, tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for v in sorted {
        if out.last().is_none_or(|l| (v - l).abs() > tol) {
            out.push(v);
        }
    }
    out
}

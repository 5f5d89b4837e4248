// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Library kernels against independent reference computations.

mod support;

use icgate_core::experiments::{esr_spectrum, EsrOptions};
use icgate_core::linalg::eigh;
use icgate_core::paper;
use icgate_core::propagator::{drive_operators, expm_hermitian, free_propagator};
use icgate_core::spin::{build_multiqubit_hamiltonian, build_subspace_hamiltonian, carbon_eigenstructure};
use rand::Rng;
use support::*;

#[test]
fn expm_matches_series_on_random_hermitian_matrices() {
    let mut r = rng(2024);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let dim = 4 + (k * 28) / 99;
        let h = random_hermitian(dim, &mut r);
        let t = r.random_range(0.05..1.0);
        let u = expm_hermitian(&h, t).unwrap();
        worst = worst.max(max_diff(u.matrix(), &taylor_expm(&h, t)));
    }
    assert!(worst < 1e-10, "max deviation {worst:e}");
}

#[test]
fn delay_propagator_matches_closed_form() {
    let cfg = paper::two_qubit_system();
    let h = build_subspace_hamiltonian(&cfg).unwrap();
    let c = cfg.carbons[0];
    for tau in [0.0, 0.37, 1.53, 2.28, 9.1, 40.0] {
        let u = free_propagator(&h, tau).unwrap();
        let d = max_diff(u.matrix(), &closed_form_delay(cfg.nu_c, c.a_zz, c.a_zx, tau));
        assert!(d < 1e-12, "tau {tau}: {d:e}");
    }
}

#[test]
fn subspace_hamiltonian_matches_product_operator_expansion() {
    for cfg in [paper::two_qubit_system(), paper::system_for_carbons(&[4]).unwrap()] {
        let h = build_subspace_hamiltonian(&cfg).unwrap();
        let c = cfg.carbons[0];
        let d = max_diff(&h.matrix, &product_operator_hamiltonian(cfg.nu_c, c.a_zz, c.a_zx));
        assert!(d < 1e-15, "{d:e}");
    }
}

#[test]
fn eigenstructure_matches_embedding_eigenvalues() {
    let cfg = paper::two_qubit_system();
    let eig = carbon_eigenstructure(&cfg).unwrap();
    let h = build_subspace_hamiltonian(&cfg).unwrap();
    let minus = eigenvalues_by_embedding(&h.matrix.view((2, 2), (2, 2)).into_owned());
    assert!((minus[1] - minus[0] - eig.nu_minus).abs() < 1e-12);
    let lib = eigh(&h.matrix).0;
    let oracle = eigenvalues_by_embedding(&h.matrix);
    for (a, b) in lib.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn n6_sticks_match_block_eigen_differences() {
    let cfg = paper::system_for_carbons(&[1, 2, 3, 4]).unwrap();
    let h = build_multiqubit_hamiltonian(&cfg).unwrap();
    let sp = esr_spectrum(&h, &drive_operators(h.dim()).0, &EsrOptions::default()).unwrap();
    let lib = dedup(sp.lines.iter().map(|l| l.position_mhz).collect(), 1e-9);
    let oracle = block_transition_frequencies(&h.matrix);
    assert_eq!(lib.len(), oracle.len());
    for (a, b) in lib.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear-algebra helpers shared by every module.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all<'a, I>(factors: I) -> CMatrix
where
    I: IntoIterator<Item = &'a CMatrix>,
{
    factors.into_iter().fold(CMatrix::identity(1, 1), |acc, f| acc.kronecker(f))
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |H - H†|`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(m - m.adjoint()))
}

/// `max |U†U - I|`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(u.adjoint() * u - identity(u.nrows())))
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues in ascending
/// order. The caller is responsible for Hermiticity.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// `|0⟩⟨0|`-style projector onto basis index `k` of a `dim`-level system.
pub fn projector(dim: usize, k: usize) -> CMatrix {
    let mut p = CMatrix::zeros(dim, dim);
    p[(k, k)] = re(1.0);
    p
}

/// Embeds `op` acting on factor `index` of a register whose factors all have
/// dimension `dims[i]`.
pub fn embed(op: &CMatrix, index: usize, dims: &[usize]) -> CMatrix {
    let factors: Vec<CMatrix> =
        dims.iter().enumerate().map(|(i, &d)| if i == index { op.clone() } else { identity(d) }).collect();
    kron_all(factors.iter())
}

/// Trace of `a† b` without forming the product.
pub fn trace_adjoint_product(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

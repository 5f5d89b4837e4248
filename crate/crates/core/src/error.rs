// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported spin quantum number {0}; expected 1/2 or 1")]
    UnsupportedSpin(f64),

    #[error("invalid system configuration: {0}")]
    InvalidConfig(String),

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate carbon block: effective field vanishes in the m_S = {manifold} manifold")]
    DegenerateBlock { manifold: i8 },

    #[error("no real solution: {0}")]
    NoSolution(String),

    #[error("no solution for this coupling regime: {0}")]
    DomainViolation(String),

    #[error("invalid pulse sequence: {0}")]
    InvalidSequence(String),

    #[error("empty or invalid Rabi-frequency range: {0}")]
    EmptyRange(String),

    #[error("unknown target gate `{0}`")]
    UnknownTarget(String),

    #[error("carbon index {index} out of range (system has {count} carbons)")]
    CarbonIndex { index: usize, count: usize },

    #[error("invalid parameter bounds: {0}")]
    InvalidBounds(String),

    #[error("invalid optimizer configuration: {0}")]
    InvalidGaConfig(String),

    #[error("Nyquist violation: sampling rate {rate:.4} MHz cannot resolve {needed:.4} MHz")]
    Nyquist { rate: f64, needed: f64 },

    #[error("invalid tensor factorization: {0}")]
    BadFactorization(String),

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

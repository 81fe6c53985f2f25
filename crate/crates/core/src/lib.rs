//! Phase-sensitive non-Hermitian four-wave mixing on Gaussian states.
//!
//! The signal/idler pair `(a_s, a_i†)` evolves along the propagation axis
//! under a 2×2 non-Hermitian generator that anticommutes with `PT` for every
//! pump phase, and whose collective-quadrature form commutes with `PT` when
//! `cos φ = 0`. This crate provides:
//!
//! - [`model`]: parameters, effective Hamiltonians, spectra and the
//!   APT/PT region classification.
//! - [`propagation`]: closed-form transfer matrices that stay regular across
//!   the exceptional point, Gaussian-state propagation and an RK4 oracle.
//! - [`observables`]: single-mode variance, CNP, logarithmic negativity and
//!   the inseparability sums, each computed along two independent routes.
//! - [`sweep`]: parameter sweeps, figure datasets and deterministic CSV.
//! - [`selftest`]: the bundled end-to-end verification checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > y)` also rejects NaN

pub mod model;
pub mod observables;
pub mod propagation;
pub mod selftest;
pub mod sweep;

pub use model::{
    delta_from_mismatch, hamiltonian_single_mode, hamiltonian_two_mode, make_params, spectrum,
    symmetry_defect, Basis, DeltaSign, HamiltonianMatrix, ModelError, SingleModeRegion,
    SpectralData, SymmetryMode, SymmetryRegion, SystemParams, TwoModeRegion, TwoModeSign,
    EP_TOLERANCE,
};
pub use observables::{
    cnp, covariance_analytic, inseparability, inseparability_ep, log_negativity, report,
    single_mode_variance, ComplexCovariance, ObservablesError, ObservablesReport,
};
pub use propagation::{
    ep_safe_kernels, propagate_state, quadrature_transfer, rk4_propagate, transfer_single_mode,
    transfer_two_mode, GaussianState, Kernels, PropagationError, QuadratureTransfer,
    TransferMatrix,
};

/// Mixed absolute/relative comparison: `|a - b| <= tol * max(1, |a|, |b|)`.
///
/// Values of order one and below are compared absolutely; larger values are
/// compared relative to their magnitude.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// Scaled disagreement `|a - b| / max(1, |a|, |b|)`, the quantity bounded by
/// [`approx_eq`].
pub fn scaled_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

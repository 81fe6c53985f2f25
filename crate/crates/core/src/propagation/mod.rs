//! Closed-form propagators, Gaussian-state evolution and the RK4 oracle.
//!
//! Everything is written through the kernels
//! `C(u, L) = cos(√u L)` and `S(u, L) = sin(√u L)/√u` (continued analytically
//! to `u < 0` and to `u = 0`, where `C = 1` and `S = L`), so the transfer
//! matrices stay finite and continuous through the exceptional point.

pub mod wide;

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{
    hamiltonian_single_mode, hamiltonian_two_mode, two_mode_generator, Basis, SystemParams,
    TwoModeSign,
};

/// `|u|·L²` below which the kernels switch to their Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-6;

/// Upper bound on the default RK4 step count.
pub const MAX_RK4_STEPS: usize = 10_000_000;

/// Slack allowed below `1/4` for the smallest symplectic eigenvalue.
pub const PHYSICALITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PropagationError {
    #[error("propagation length must be finite and non-negative, got {0}")]
    InvalidLength(f64),
    #[error("RK4 needs at least one step")]
    ZeroSteps,
    #[error("covariance is not symmetric (max asymmetry {0:e})")]
    Asymmetric(f64),
    #[error("covariance violates the uncertainty principle (smallest symplectic eigenvalue {0})")]
    Unphysical(f64),
    #[error("state contains non-finite entries")]
    NonFinite,
}

fn check_length(l: f64) -> Result<f64, PropagationError> {
    if l.is_finite() && l >= 0.0 {
        Ok(l)
    } else {
        Err(PropagationError::InvalidLength(l))
    }
}

/// The pair `(C, S)` of propagation kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernels {
    pub c: f64,
    pub s: f64,
}

/// `C(u, L)` and `S(u, L)`, regular at `u = 0`.
pub fn ep_safe_kernels(u: f64, l: f64) -> Kernels {
    let y = u * l * l;
    if y.abs() < SERIES_THRESHOLD {
        // Σ(-y)^k/(2k)! and L·Σ(-y)^k/(2k+1)!, k = 0..5, Horner form
        let mut c = 1.0;
        let mut s = 1.0;
        for k in (1..=5u32).rev() {
            let k = f64::from(k);
            c = 1.0 - y * c / ((2.0 * k - 1.0) * (2.0 * k));
            s = 1.0 - y * s / ((2.0 * k) * (2.0 * k + 1.0));
        }
        Kernels { c, s: l * s }
    } else if u > 0.0 {
        let r = u.sqrt();
        let (sin, cos) = (r * l).sin_cos();
        Kernels { c: cos, s: sin / r }
    } else {
        let r = (-u).sqrt();
        Kernels {
            c: (r * l).cosh(),
            s: (r * l).sinh() / r,
        }
    }
}

/// A 2×2 propagator together with its basis and `κL`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub entries: Matrix2<Complex64>,
    pub basis: Basis,
    /// κ-normalized length `κL`.
    pub length: f64,
}

impl TransferMatrix {
    /// `|M₁₁|² - |M₁₂|² - 1` and `|M₂₂|² - |M₂₁|² - 1`.
    pub fn bogoliubov_residuals(&self) -> (f64, f64) {
        let m = &self.entries;
        (
            m[(0, 0)].norm_sqr() - m[(0, 1)].norm_sqr() - 1.0,
            m[(1, 1)].norm_sqr() - m[(1, 0)].norm_sqr() - 1.0,
        )
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &TransferMatrix) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Single-mode propagator `exp(-iHL)` acting on `(a_s, a_i†)`.
pub fn transfer_single_mode(
    params: &SystemParams,
    l: f64,
) -> Result<TransferMatrix, PropagationError> {
    let l = check_length(l)?;
    let Kernels { c, s } = ep_safe_kernels(params.u(), l);
    let d = params.delta();
    let ks = params.kappa() * s;
    let phase = Complex64::from_polar(1.0, params.phi());
    let i = Complex64::i();
    let entries = Matrix2::new(
        Complex64::new(c, -d * s),
        -i * phase.conj() * ks,
        i * phase * ks,
        Complex64::new(c, d * s),
    );
    Ok(TransferMatrix {
        entries,
        basis: Basis::SingleMode,
        length: params.kappa() * l,
    })
}

/// Real collective-quadrature propagator `C·I + S·K`.
pub fn transfer_two_mode(
    params: &SystemParams,
    l: f64,
    sign: TwoModeSign,
) -> Result<TransferMatrix, PropagationError> {
    let l = check_length(l)?;
    let Kernels { c, s } = ep_safe_kernels(params.u(), l);
    let g = two_mode_generator(params, sign);
    let r = |x: f64| Complex64::new(x, 0.0);
    let entries = Matrix2::new(
        r(c + s * g[0][0]),
        r(s * g[0][1]),
        r(s * g[1][0]),
        r(c + s * g[1][1]),
    );
    Ok(TransferMatrix {
        entries,
        basis: sign.basis(),
        length: params.kappa() * l,
    })
}

/// Real 4×4 propagator on `(q_s, p_s, q_i, p_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureTransfer {
    pub entries: Matrix4<f64>,
    pub length: f64,
}

/// Symplectic form of the quadrature convention `[q, p] = i/2`.
pub fn symplectic_form() -> Matrix4<f64> {
    let mut omega = Matrix4::zeros();
    for j in [0, 2] {
        omega[(j, j + 1)] = 0.5;
        omega[(j + 1, j)] = -0.5;
    }
    omega
}

impl QuadratureTransfer {
    /// Largest entry of `|S Ω Sᵀ - Ω|`.
    pub fn symplectic_residual(&self) -> f64 {
        let omega = symplectic_form();
        (self.entries * omega * self.entries.transpose() - omega).amax()
    }
}

/// Change of basis from `(q_s, p_s, q_i, p_i)` to the collective quadratures
/// `(q_s+q_i, p_s+p_i, p_s-p_i, q_s-q_i)`.
pub fn collective_basis() -> Matrix4<f64> {
    Matrix4::new(
        1.0, 0.0, 1.0, 0.0, //
        0.0, 1.0, 0.0, 1.0, //
        0.0, 1.0, 0.0, -1.0, //
        1.0, 0.0, -1.0, 0.0,
    )
}

/// Quadrature form of [`transfer_single_mode`], reassembled through
/// `a_s = q_s + i p_s` and `a_i† = q_i - i p_i`.
pub fn quadrature_transfer(
    params: &SystemParams,
    l: f64,
) -> Result<QuadratureTransfer, PropagationError> {
    let m = transfer_single_mode(params, l)?;
    let e = |r: usize, c: usize| (m.entries[(r, c)].re, m.entries[(r, c)].im);
    let (x11, y11) = e(0, 0);
    let (x12, y12) = e(0, 1);
    let (x21, y21) = e(1, 0);
    let (x22, y22) = e(1, 1);
    let entries = Matrix4::new(
        x11, -y11, x12, y12, //
        y11, x11, y12, -x12, //
        x21, -y21, x22, y22, //
        -y21, -x21, -y22, x22,
    );
    Ok(QuadratureTransfer {
        entries,
        length: m.length,
    })
}

/// Gaussian state: quadrature means and the symmetrized covariance `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    pub mean: Vector4<f64>,
    pub cov: Matrix4<f64>,
}

impl GaussianState {
    pub fn vacuum() -> Self {
        Self {
            mean: Vector4::zeros(),
            cov: Matrix4::identity() * 0.25,
        }
    }

    /// Coherent state `|α_s, α_i⟩`: `⟨q⟩ = Re α`, `⟨p⟩ = Im α`, `V = I/4`.
    pub fn coherent(alpha_s: Complex64, alpha_i: Complex64) -> Self {
        Self {
            mean: Vector4::new(alpha_s.re, alpha_s.im, alpha_i.re, alpha_i.im),
            cov: Matrix4::identity() * 0.25,
        }
    }

    /// Validated constructor.
    pub fn new(mean: Vector4<f64>, cov: Matrix4<f64>) -> Result<Self, PropagationError> {
        let state = Self { mean, cov };
        state.validate()?;
        Ok(state)
    }

    /// Symplectic eigenvalues `ν₋ ≤ ν₊` of `V` (spectrum of `|iΩ'V|`
    /// with `Ω'` the unit symplectic form).
    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        wide::WideMatrix4::from_f64(&self.cov).symplectic_eigenvalues()
    }

    /// Symmetry and uncertainty-principle check.
    ///
    /// Rounding `V` to double precision moves its symplectic spectrum by
    /// about `ε‖V‖²`, so the allowed slack grows with that scale.
    pub fn validate(&self) -> Result<(), PropagationError> {
        if self
            .mean
            .iter()
            .chain(self.cov.iter())
            .any(|x| !x.is_finite())
        {
            return Err(PropagationError::NonFinite);
        }
        let scale = self.cov.amax().max(1.0);
        let asym = (self.cov - self.cov.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(PropagationError::Asymmetric(asym));
        }
        let (nu_min, _) = self.symplectic_eigenvalues();
        let slack = PHYSICALITY_TOLERANCE + 16.0 * f64::EPSILON * scale * scale;
        if !(nu_min >= 0.25 - slack) || self.cov.cholesky().is_none() {
            return Err(PropagationError::Unphysical(nu_min));
        }
        Ok(())
    }

    /// Variance of a linear combination `w·X` of the quadratures.
    pub fn variance_of(&self, w: &Vector4<f64>) -> f64 {
        (w.transpose() * self.cov * w)[(0, 0)]
    }
}

/// `mean' = S·mean`, `V' = S·V·Sᵀ` with `S` from [`quadrature_transfer`].
pub fn propagate_state(
    state: &GaussianState,
    params: &SystemParams,
    l: f64,
) -> Result<GaussianState, PropagationError> {
    state.validate()?;
    let s = quadrature_transfer(params, l)?.entries;
    let cov = s * state.cov * s.transpose();
    // symmetrize away the rounding asymmetry of the triple product
    let cov = (cov + cov.transpose()) * 0.5;
    Ok(GaussianState {
        mean: s * state.mean,
        cov,
    })
}

/// `ceil(1000·κL)`, clamped to `[1, 10⁷]`.
pub fn default_rk4_steps(kappa_l: f64) -> usize {
    let steps = (1000.0 * kappa_l).ceil();
    if steps.is_nan() || steps < 1.0 {
        1
    } else if steps >= MAX_RK4_STEPS as f64 {
        MAX_RK4_STEPS
    } else {
        steps as usize
    }
}

/// Fixed-step classical RK4 for `dM/dz = -iH·M`, `M(0) = I`.
pub fn rk4_propagate(
    params: &SystemParams,
    l: f64,
    steps: usize,
    basis: Basis,
) -> Result<TransferMatrix, PropagationError> {
    if steps == 0 {
        return Err(PropagationError::ZeroSteps);
    }
    let l = check_length(l)?;
    let h = match basis {
        Basis::SingleMode => hamiltonian_single_mode(params),
        Basis::TwoModePlus => hamiltonian_two_mode(params, TwoModeSign::Plus),
        Basis::TwoModeMinus => hamiltonian_two_mode(params, TwoModeSign::Minus),
    };
    let a = h.entries * Complex64::new(0.0, -1.0);
    let mut m = Matrix2::<Complex64>::identity();
    if l > 0.0 {
        let dz = l / steps as f64;
        let half = Complex64::new(dz / 2.0, 0.0);
        let full = Complex64::new(dz, 0.0);
        let sixth = Complex64::new(dz / 6.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        for _ in 0..steps {
            let k1 = a * m;
            let k2 = a * (m + k1 * half);
            let k3 = a * (m + k2 * half);
            let k4 = a * (m + k3 * full);
            m += (k1 + k2 * two + k3 * two + k4) * sixth;
        }
    }
    Ok(TransferMatrix {
        entries: m,
        basis,
        length: params.kappa() * l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_params;
    use std::f64::consts::{FRAC_PI_2, PI};

    const COSH06: f64 = 1.185_465_218_242_267_6;
    const SINH06_OVER_06: f64 = 1.061_089_303_580_402;

    #[test]
    fn kernel_examples() {
        let k = ep_safe_kernels(0.0, 2.5);
        assert_eq!(k, Kernels { c: 1.0, s: 2.5 });

        let lambda = 0.44f64.sqrt();
        let k = ep_safe_kernels(0.44, PI / lambda);
        assert!((k.c + 1.0).abs() < 1e-15);
        assert!(k.s.abs() < 1e-15);

        let k = ep_safe_kernels(-0.36, 1.0);
        assert!((k.c - COSH06).abs() < 1e-15);
        assert!((k.s - SINH06_OVER_06).abs() < 1e-15);
    }

    #[test]
    fn kernels_continuous_at_series_switch() {
        for &l in &[0.5, 1.0, 3.0] {
            for sign in [1.0, -1.0] {
                let u = sign * SERIES_THRESHOLD / (l * l);
                let below = ep_safe_kernels(u * (1.0 - 1e-9), l);
                let above = ep_safe_kernels(u * (1.0 + 1e-9), l);
                assert!((below.c - above.c).abs() < 1e-12);
                assert!((below.s - above.s).abs() < 1e-12 * l);
            }
        }
    }

    #[test]
    fn kernels_satisfy_pythagorean_identity() {
        for &u in &[-2.0, -0.36, -1e-9, 0.0, 1e-9, 0.44, 3.0] {
            for &l in &[0.0, 0.3, 1.0, 2.0] {
                let k = ep_safe_kernels(u, l);
                let lhs = k.c * k.c + u * k.s * k.s;
                assert!((lhs - 1.0).abs() < 1e-13 * lhs.max(1.0), "u={u} l={l}");
            }
        }
    }

    #[test]
    fn single_mode_transfer_examples() {
        let p = make_params(1.0, -1.0, 0.0).unwrap();
        let m = transfer_single_mode(&p, 0.0).unwrap();
        assert_eq!(m.entries, Matrix2::identity());

        let m = transfer_single_mode(&p, 1.0).unwrap();
        let expected = Matrix2::new(
            Complex64::new(1.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, -1.0),
        );
        assert!((m.entries - expected).norm() < 1e-15);
        assert_eq!(m.length, 1.0);

        let p = make_params(1.0, -0.8, 0.0).unwrap();
        let m = transfer_single_mode(&p, 1.0).unwrap();
        assert!((m.entries[(0, 0)] - Complex64::new(COSH06, 0.8 * SINH06_OVER_06)).norm() < 1e-14);
        assert!((m.entries[(0, 1)] - Complex64::new(0.0, -SINH06_OVER_06)).norm() < 1e-14);
        let (r1, r2) = m.bogoliubov_residuals();
        assert!(r1.abs() < 1e-14 && r2.abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_lengths() {
        let p = make_params(1.0, 0.0, 0.0).unwrap();
        assert_eq!(
            transfer_single_mode(&p, -1.0),
            Err(PropagationError::InvalidLength(-1.0))
        );
        assert!(transfer_two_mode(&p, f64::NAN, TwoModeSign::Plus).is_err());
        assert!(quadrature_transfer(&p, f64::INFINITY).is_err());
        assert_eq!(
            rk4_propagate(&p, 1.0, 0, Basis::SingleMode),
            Err(PropagationError::ZeroSteps)
        );
    }

    #[test]
    fn two_mode_transfer_examples() {
        let p = make_params(1.0, -0.8, FRAC_PI_2).unwrap();
        let m = transfer_two_mode(&p, 0.0, TwoModeSign::Plus).unwrap();
        assert_eq!(m.entries, Matrix2::identity());

        let m = transfer_two_mode(&p, 1.0, TwoModeSign::Plus).unwrap();
        let s = SINH06_OVER_06;
        let expected = [[COSH06 - s, -0.8 * s], [0.8 * s, COSH06 + s]];
        for (r, row) in expected.iter().enumerate() {
            for (c, want) in row.iter().enumerate() {
                assert!((m.entries[(r, c)].re - want).abs() < 1e-14);
                assert_eq!(m.entries[(r, c)].im, 0.0);
            }
        }
        assert!((m.entries[(0, 0)].re - 0.124_375_914_661_866).abs() < 1e-12);
        assert!((m.entries[(1, 1)].re - 2.246_554_521_822_67).abs() < 1e-12);
        let det = m.entries.determinant();
        assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quadrature_transfer_matches_generator_form() {
        // C·I + S·G with G the real quadrature generator
        let p = make_params(0.7, 0.3, 1.1).unwrap();
        let l = 1.7;
        let Kernels { c, s } = ep_safe_kernels(p.u(), l);
        let (k, d) = (p.kappa(), p.delta());
        let (sn, cs) = p.phi().sin_cos();
        let g = Matrix4::new(
            0.0,
            d,
            -k * sn,
            -k * cs, //
            -d,
            0.0,
            -k * cs,
            k * sn, //
            -k * sn,
            -k * cs,
            0.0,
            d, //
            -k * cs,
            k * sn,
            -d,
            0.0,
        );
        let expected = Matrix4::identity() * c + g * s;
        let q = quadrature_transfer(&p, l).unwrap();
        assert!((q.entries - expected).amax() < 1e-14);
        assert!(q.symplectic_residual() < 1e-13);
    }

    #[test]
    fn quadrature_transfer_block_diagonalizes() {
        let p = make_params(1.3, -0.4, 2.2).unwrap();
        let l = 0.9;
        let b = collective_basis();
        let q = quadrature_transfer(&p, l).unwrap().entries;
        let t = b * q * b.try_inverse().unwrap();
        let plus = transfer_two_mode(&p, l, TwoModeSign::Plus).unwrap().entries;
        let minus = transfer_two_mode(&p, l, TwoModeSign::Minus)
            .unwrap()
            .entries;
        for r in 0..2 {
            for c in 0..2 {
                assert!((t[(r, c)] - plus[(r, c)].re).abs() < 1e-13);
                assert!((t[(r + 2, c + 2)] - minus[(r, c)].re).abs() < 1e-13);
                assert!(t[(r, c + 2)].abs() < 1e-13);
                assert!(t[(r + 2, c)].abs() < 1e-13);
            }
        }
    }

    #[test]
    fn vacuum_variance_at_zero_detuning() {
        let p = make_params(1.0, 0.0, 0.0).unwrap();
        for &l in &[0.0, 0.5, 1.0, 2.0] {
            let out = propagate_state(&GaussianState::vacuum(), &p, l).unwrap();
            let expected = 0.25 + l.sinh().powi(2) / 2.0;
            assert!((out.cov[(0, 0)] - expected).abs() < 1e-13 * expected);
        }
    }

    #[test]
    fn full_revival_restores_vacuum() {
        let p = make_params(1.0, -1.2, 0.0).unwrap();
        let l = PI / 0.44f64.sqrt();
        let out = propagate_state(&GaussianState::vacuum(), &p, l).unwrap();
        assert!((out.cov - Matrix4::identity() * 0.25).amax() < 1e-14);
    }

    #[test]
    fn covariance_independent_of_mean() {
        let p = make_params(1.0, -0.8, 0.0).unwrap();
        let a = propagate_state(&GaussianState::vacuum(), &p, 1.0).unwrap();
        let coh = GaussianState::coherent(Complex64::new(3.0, -2.0), Complex64::new(0.5, 7.0));
        let b = propagate_state(&coh, &p, 1.0).unwrap();
        assert_eq!(a.cov, b.cov);
        assert!(b.mean.norm() > 0.0);
    }

    #[test]
    fn rejects_unphysical_state() {
        let squeezed_too_much = Matrix4::from_diagonal(&Vector4::new(0.1, 0.1, 0.25, 0.25));
        assert!(matches!(
            GaussianState::new(Vector4::zeros(), squeezed_too_much),
            Err(PropagationError::Unphysical(_))
        ));
        let mut asym = Matrix4::identity() * 0.25;
        asym[(0, 1)] = 0.01;
        assert!(matches!(
            GaussianState::new(Vector4::zeros(), asym),
            Err(PropagationError::Asymmetric(_))
        ));
        let bad = GaussianState {
            mean: Vector4::zeros(),
            cov: squeezed_too_much,
        };
        let p = make_params(1.0, 0.0, 0.0).unwrap();
        assert!(propagate_state(&bad, &p, 1.0).is_err());
    }

    #[test]
    fn rk4_examples() {
        let p = make_params(1.0, -0.8, 0.3).unwrap();
        for basis in [Basis::SingleMode, Basis::TwoModePlus, Basis::TwoModeMinus] {
            let m = rk4_propagate(&p, 0.0, 7, basis).unwrap();
            assert_eq!(m.entries, Matrix2::identity());
        }
        let closed = transfer_single_mode(&p, 2.0).unwrap();
        let numeric = rk4_propagate(&p, 2.0, 2000, Basis::SingleMode).unwrap();
        assert!(closed.max_abs_diff(&numeric) <= 1e-8);
    }

    #[test]
    fn rk4_is_fourth_order() {
        let p = make_params(1.0, -0.8, 0.3).unwrap();
        let closed = transfer_single_mode(&p, 2.0).unwrap();
        let coarse = rk4_propagate(&p, 2.0, 40, Basis::SingleMode).unwrap();
        let fine = rk4_propagate(&p, 2.0, 80, Basis::SingleMode).unwrap();
        let ratio = closed.max_abs_diff(&coarse) / closed.max_abs_diff(&fine);
        assert!((ratio - 16.0).abs() < 1.5, "ratio {ratio}");
    }

    #[test]
    fn default_steps() {
        assert_eq!(default_rk4_steps(0.0), 1);
        assert_eq!(default_rk4_steps(2.0), 2000);
        assert_eq!(default_rk4_steps(0.0012), 2);
        assert_eq!(default_rk4_steps(1e9), MAX_RK4_STEPS);
    }
}

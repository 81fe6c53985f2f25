//! Squeezing and entanglement observables.
//!
//! Each quantity has a closed form written through the kernels `C` and `S`
//! and a second route through an explicitly propagated covariance matrix.
//! The public functions compute both and fail with
//! [`ObservablesError::Consistency`] if they disagree by more than
//! [`CONSISTENCY_TOLERANCE`] (in the sense of [`crate::approx_eq`]).

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use thiserror::Error;

use crate::approx_eq;
use crate::model::{SymmetryRegion, SystemParams, EP_TOLERANCE};
use crate::propagation::wide::{propagate_covariance_wide, WideMatrix4};
use crate::propagation::{
    ep_safe_kernels, propagate_state, GaussianState, Kernels, PropagationError,
};

/// `E < 1` certifies entanglement.
pub const WEAKER_CRITERION: f64 = 1.0;
/// `E < 0.5` is the stronger certificate.
pub const STRONGER_CRITERION: f64 = 0.5;

/// Agreement required between the closed-form and covariance routes.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-10;

/// Negative radicands in the negativity formula down to this value are
/// treated as rounding and clamped to zero.
pub const RADICAND_CLAMP: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObservablesError {
    #[error(transparent)]
    Propagation(#[from] PropagationError),
    #[error("{observable}: closed form {closed} disagrees with covariance route {covariance}")]
    Consistency {
        observable: &'static str,
        closed: f64,
        covariance: f64,
    },
    #[error("negativity radicand {0:e} is negative beyond rounding; covariance is unphysical")]
    NegativeRadicand(f64),
    #[error("EP formulas need |delta - 1| <= {EP_TOLERANCE}, got delta = {0}")]
    NotAtExceptionalPoint(f64),
}

fn kernels(params: &SystemParams, l: f64) -> Result<Kernels, ObservablesError> {
    if l.is_finite() && l >= 0.0 {
        Ok(ep_safe_kernels(params.u(), l))
    } else {
        Err(PropagationError::InvalidLength(l).into())
    }
}

fn cross_check(
    observable: &'static str,
    closed: f64,
    covariance: f64,
) -> Result<(), ObservablesError> {
    if approx_eq(closed, covariance, CONSISTENCY_TOLERANCE) {
        Ok(())
    } else {
        Err(ObservablesError::Consistency {
            observable,
            closed,
            covariance,
        })
    }
}

/// Mode-operator covariance `γ` over `r = (a_s, a_s†, a_i, a_i†)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexCovariance {
    pub entries: Matrix4<Complex64>,
}

/// Per-mode block of `r = T·X`: `a = q + ip`, `a† = q - ip`.
fn mode_transform() -> Matrix4<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let mut t = Matrix4::zeros();
    for j in [0, 2] {
        t[(j, j)] = one;
        t[(j, j + 1)] = i;
        t[(j + 1, j)] = one;
        t[(j + 1, j + 1)] = -i;
    }
    t
}

fn mode_transform_inverse() -> Matrix4<Complex64> {
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    let mut t = Matrix4::zeros();
    for j in [0, 2] {
        t[(j, j)] = half;
        t[(j, j + 1)] = half;
        t[(j + 1, j)] = -half_i;
        t[(j + 1, j + 1)] = half_i;
    }
    t
}

impl ComplexCovariance {
    /// `γ = T V T†`.
    pub fn from_real(v: &Matrix4<f64>) -> Self {
        let t = mode_transform();
        let v = v.map(|x| Complex64::new(x, 0.0));
        Self {
            entries: t * v * t.adjoint(),
        }
    }

    /// `V = Re(T⁻¹ γ T⁻†)`.
    pub fn to_real(&self) -> Matrix4<f64> {
        let t = mode_transform_inverse();
        (t * self.entries * t.adjoint()).map(|z| z.re)
    }

    pub fn gamma_s(&self) -> Matrix2<Complex64> {
        self.entries.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn gamma_i(&self) -> Matrix2<Complex64> {
        self.entries.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Signal/idler cross block.
    pub fn cross(&self) -> Matrix2<Complex64> {
        self.entries.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// Largest entry of `|γ - γ†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        (self.entries - self.entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Closed-form `γ` after propagating vacuum over `L`.
///
/// Diagonal `½ + κ²S²`; the only other non-zero entries are
/// `⟨a_s a_i⟩ = -κe^{-iφ}(ΔS² + iCS)` and its conjugate positions.
pub fn covariance_analytic(
    params: &SystemParams,
    l: f64,
) -> Result<ComplexCovariance, ObservablesError> {
    let Kernels { c, s } = kernels(params, l)?;
    let k = params.kappa();
    let g = Complex64::new(0.5 + k * k * s * s, 0.0);
    let corr = -k
        * Complex64::from_polar(1.0, -params.phi())
        * Complex64::new(params.delta() * s * s, c * s);
    let mut entries = Matrix4::from_diagonal_element(g);
    entries[(0, 3)] = corr;
    entries[(2, 1)] = corr;
    entries[(3, 0)] = corr.conj();
    entries[(1, 2)] = corr.conj();
    Ok(ComplexCovariance { entries })
}

/// Common quadrature variance `¼ + κ²S²/2`.
pub fn single_mode_variance(params: &SystemParams, l: f64) -> Result<f64, ObservablesError> {
    let Kernels { s, .. } = kernels(params, l)?;
    let ks = params.kappa() * s;
    Ok(0.25 + ks * ks / 2.0)
}

fn hermitian_eigenvalues(m: &Matrix2<Complex64>) -> (f64, f64) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let mean = (a + d) / 2.0;
    let half_gap = ((a - d) / 2.0).hypot(m[(0, 1)].norm());
    (mean - half_gap, mean + half_gap)
}

/// `P1 = -(ν - ½)(N - ½)` from the eigenvalues of the signal block and
/// `P2 = -1/8 + ½I₁ - 2I₀` with `I₁ = |γ_s| + |γ_i| - 2|x|`, `I₀ = |γ|`.
pub fn cnp_from_covariance(gamma: &ComplexCovariance) -> (f64, f64) {
    let (nu, n) = hermitian_eigenvalues(&gamma.gamma_s());
    let p1 = -(nu - 0.5) * (n - 0.5);
    let i1 = gamma.gamma_s().determinant().re + gamma.gamma_i().determinant().re
        - 2.0 * gamma.cross().determinant().re;
    let i0 = gamma.entries.determinant().re;
    (p1, -0.125 + 0.5 * i1 - 2.0 * i0)
}

/// `(P1, P2) = (-κ⁴S⁴, 2κ²S² + 2κ⁴S⁴)`, cross-checked against the
/// determinant formulas on [`covariance_analytic`].
pub fn cnp(params: &SystemParams, l: f64) -> Result<(f64, f64), ObservablesError> {
    let Kernels { s, .. } = kernels(params, l)?;
    let ks2 = (params.kappa() * s).powi(2);
    let p1 = -ks2 * ks2;
    let p2 = 2.0 * ks2 + 2.0 * ks2 * ks2;
    let (q1, q2) = cnp_from_covariance(&covariance_analytic(params, l)?);
    cross_check("p1", p1, q1)?;
    cross_check("p2", p2, q2)?;
    Ok((p1, p2))
}

/// `E_N = max(0, -ln 4η)` from a covariance matrix, with
/// `η² = (Σ - √(Σ² - 4 det V))/2` and `Σ = det A + det B - 2 det C`.
pub fn log_negativity_from_covariance(v: &WideMatrix4) -> Result<f64, ObservablesError> {
    let (det_a, det_b, det_c) = v.block_determinants();
    let sigma = det_a + det_b - 2.0 * det_c;
    let mut radicand = sigma * sigma - 4.0 * v.det();
    if radicand < 0.0 {
        let r = radicand.hi();
        if r < -RADICAND_CLAMP {
            return Err(ObservablesError::NegativeRadicand(r));
        }
        radicand = 0.0.into();
    }
    let eta_sq = (sigma - radicand.sqrt()) / 2.0;
    if !(eta_sq > 0.0) {
        return Err(ObservablesError::NegativeRadicand(eta_sq.hi()));
    }
    let x = 4.0 * eta_sq.sqrt() - 1.0;
    Ok((-(x.hi() + x.lo()).ln_1p()).max(0.0))
}

/// Logarithmic negativity of an arbitrary Gaussian state.
pub fn log_negativity_of_state(state: &GaussianState) -> Result<f64, ObservablesError> {
    log_negativity_from_covariance(&WideMatrix4::from_f64(&state.cov))
}

/// Logarithmic negativity after propagating vacuum over `L`, evaluated on
/// the double-double covariance.
pub fn log_negativity(params: &SystemParams, l: f64) -> Result<f64, ObservablesError> {
    let v = propagate_covariance_wide(&(Matrix4::identity() * 0.25), params, l)?;
    log_negativity_from_covariance(&v)
}

/// `E_N = 2·asinh(κ|S|)`: the propagated vacuum is a two-mode squeezed
/// vacuum with `sinh r = κ|S|` up to local phases.
pub fn log_negativity_closed_form(params: &SystemParams, l: f64) -> Result<f64, ObservablesError> {
    let Kernels { s, .. } = kernels(params, l)?;
    Ok(2.0 * (params.kappa() * s).abs().asinh())
}

/// Collective variances after propagating vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveVariances {
    /// `Var(q_s - q_i)`, equal to `Var(p_s + p_i)`.
    pub q_minus: f64,
    /// `Var(q_s + q_i)`, equal to `Var(p_s - p_i)`.
    pub q_plus: f64,
}

/// `Var(q_s ∓ q_i) = [(Δ ± κcos φ)²S² + (C ± κS sin φ)²]/2`.
pub fn collective_variances(
    params: &SystemParams,
    l: f64,
) -> Result<CollectiveVariances, ObservablesError> {
    let Kernels { c, s } = kernels(params, l)?;
    let k = params.kappa();
    let d = params.delta();
    let (sp, cp) = params.phi().sin_cos();
    let var =
        |sign: f64| ((d + sign * k * cp) * s).powi(2) / 2.0 + (c + sign * k * s * sp).powi(2) / 2.0;
    Ok(CollectiveVariances {
        q_minus: var(1.0),
        q_plus: var(-1.0),
    })
}

/// `E1 = Var(q_s - q_i) + Var(p_s + p_i)` and
/// `E2 = Var(q_s + q_i) + Var(p_s - p_i)` read off a state.
pub fn inseparability_from_state(state: &GaussianState) -> (f64, f64) {
    let e1 = state.variance_of(&Vector4::new(1.0, 0.0, -1.0, 0.0))
        + state.variance_of(&Vector4::new(0.0, 1.0, 0.0, 1.0));
    let e2 = state.variance_of(&Vector4::new(1.0, 0.0, 1.0, 0.0))
        + state.variance_of(&Vector4::new(0.0, 1.0, 0.0, -1.0));
    (e1, e2)
}

/// `E1 = C² + (κ² + Δ² + 2κΔcos φ)S² + 2κSC sin φ`; `E2` flips both φ
/// terms. Cross-checked against the propagated vacuum covariance.
pub fn inseparability(params: &SystemParams, l: f64) -> Result<(f64, f64), ObservablesError> {
    let Kernels { c, s } = kernels(params, l)?;
    let k = params.kappa();
    let d = params.delta();
    let (sp, cp) = params.phi().sin_cos();
    let common = c * c + (k * k + d * d) * s * s;
    let g1 = 2.0 * k * d * cp * s * s;
    let g2 = 2.0 * k * s * c * sp;
    let e1 = common + g1 + g2;
    let e2 = common - g1 - g2;
    let state = propagate_state(&GaussianState::vacuum(), params, l)?;
    let (f1, f2) = inseparability_from_state(&state);
    cross_check("e1", e1, f1)?;
    cross_check("e2", e2, f2)?;
    Ok((e1, e2))
}

/// Exceptional-point limits `C → 1`, `S → L`:
/// `E1 = 1 + 2κ²L²(1 ± cos φ) + 2κL sin φ`,
/// `E2 = 1 + 2κ²L²(1 ∓ cos φ) - 2κL sin φ`, upper signs for `Δ = +κ`.
pub fn inseparability_ep(params: &SystemParams, l: f64) -> Result<(f64, f64), ObservablesError> {
    let ratio = params.delta_ratio();
    if (ratio - 1.0).abs() > EP_TOLERANCE {
        return Err(ObservablesError::NotAtExceptionalPoint(ratio));
    }
    kernels(params, l)?;
    let kl = params.kappa() * l;
    let (sp, cp) = params.phi().sin_cos();
    let cp = if params.delta() < 0.0 { -cp } else { cp };
    let e1 = 1.0 + 2.0 * kl * kl * (1.0 + cp) + 2.0 * kl * sp;
    let e2 = 1.0 + 2.0 * kl * kl * (1.0 - cp) - 2.0 * kl * sp;
    Ok((e1, e2))
}

/// All observables at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservablesReport {
    pub p1: f64,
    pub p2: f64,
    pub e1: f64,
    pub e2: f64,
    pub e_n: f64,
    pub var_q: f64,
    pub region: SymmetryRegion,
}

/// Evaluates every observable, including the cross-route checks.
pub fn report(params: &SystemParams, l: f64) -> Result<ObservablesReport, ObservablesError> {
    let (p1, p2) = cnp(params, l)?;
    let (e1, e2) = inseparability(params, l)?;
    let e_n = log_negativity(params, l)?;
    cross_check("e_n", log_negativity_closed_form(params, l)?, e_n)?;
    let var_q = single_mode_variance(params, l)?;
    let state = propagate_state(&GaussianState::vacuum(), params, l)?;
    for j in 0..4 {
        cross_check("var_q", var_q, state.cov[(j, j)])?;
    }
    Ok(ObservablesReport {
        p1,
        p2,
        e1,
        e2,
        e_n,
        var_q,
        region: params.region(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_params;
    use std::f64::consts::{FRAC_PI_2, PI};

    const S06: f64 = 1.061_089_303_580_402;

    fn revival_length() -> f64 {
        PI / 0.44f64.sqrt()
    }

    #[test]
    fn covariance_analytic_examples() {
        let p = make_params(1.0, -0.8, 0.0).unwrap();
        let g = covariance_analytic(&p, 0.0).unwrap();
        assert!((g.entries - Matrix4::identity() * Complex64::new(0.5, 0.0)).norm() < 1e-15);

        let g = covariance_analytic(&p, 1.0).unwrap();
        for j in 0..4 {
            assert!((g.entries[(j, j)].re - (0.5 + S06 * S06)).abs() < 1e-14);
        }
        assert!((g.entries[(0, 0)].re - 1.625_910_510_172_742_7).abs() < 1e-13);
        assert!(g.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn covariance_analytic_matches_propagated_state() {
        for &(k, d, phi, l) in &[
            (1.0, -0.8, 0.3, 1.0),
            (0.5, 1.7, 4.0, 3.0),
            (2.0, -2.0, 1.0, 0.7),
        ] {
            let p = make_params(k, d, phi).unwrap();
            let state = propagate_state(&GaussianState::vacuum(), &p, l).unwrap();
            let from_state = ComplexCovariance::from_real(&state.cov);
            let closed = covariance_analytic(&p, l).unwrap();
            let scale = closed.entries[(0, 0)].re;
            assert!((from_state.entries - closed.entries).norm() < 1e-13 * scale);
        }
    }

    #[test]
    fn real_complex_round_trip() {
        let v = Matrix4::new(
            0.7, 0.1, 0.2, -0.3, //
            0.1, 0.9, 0.05, 0.4, //
            0.2, 0.05, 1.1, 0.0, //
            -0.3, 0.4, 0.0, 0.8,
        );
        let back = ComplexCovariance::from_real(&v).to_real();
        assert!((back - v).amax() < 1e-15);
        let vac = ComplexCovariance::from_real(&(Matrix4::identity() * 0.25));
        assert!((vac.entries - Matrix4::identity() * Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn single_mode_variance_examples() {
        let ep = make_params(1.0, -1.0, 0.0).unwrap();
        assert_eq!(single_mode_variance(&ep, 0.0).unwrap(), 0.25);
        assert!((single_mode_variance(&ep, 1.0).unwrap() - 0.75).abs() < 1e-15);
        let p = make_params(1.0, -1.2, 0.0).unwrap();
        assert!((single_mode_variance(&p, revival_length()).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn cnp_examples() {
        let p = make_params(1.0, -0.8, 0.0).unwrap();
        assert_eq!(cnp(&p, 0.0).unwrap(), (0.0, 0.0));
        let (p1, p2) = cnp(&p, 1.0).unwrap();
        assert!((p1 + S06.powi(4)).abs() < 1e-13);
        assert!((p1 + 1.2677).abs() < 1e-4);
        assert!((p2 - 4.7871).abs() < 1e-4);

        let ep = make_params(1.0, -1.0, 0.4).unwrap();
        for &l in &[0.5, 1.0, 2.0] {
            let (p1, p2) = cnp(&ep, l).unwrap();
            assert!((p1 + l.powi(4)).abs() < 1e-12 * l.powi(4));
            // 2κ²L² + 2κ⁴L⁴
            assert!((p2 - 2.0 * l * l - 2.0 * l.powi(4)).abs() < 1e-12 * p2);
        }
    }

    #[test]
    fn log_negativity_examples() {
        let p = make_params(1.0, -0.8, 0.0).unwrap();
        assert_eq!(log_negativity(&p, 0.0).unwrap(), 0.0);
        let one = log_negativity(&p, 1.0).unwrap();
        let two = log_negativity(&p, 2.0).unwrap();
        assert!(two > one && one > 0.0);
        assert!((one - 2.0 * S06.asinh()).abs() < 1e-14);

        let p = make_params(1.0, -1.2, 0.0).unwrap();
        assert!(log_negativity(&p, revival_length()).unwrap().abs() < 1e-14);
    }

    #[test]
    fn log_negativity_detects_unphysical_input() {
        let v = Matrix4::from_diagonal(&Vector4::new(0.05, 0.05, 0.05, 0.05));
        let state = GaussianState {
            mean: Vector4::zeros(),
            cov: v,
        };
        // product state: Σ² - 4 det V = 0, η = 0.05 < ¼ so E_N > 0
        assert!(log_negativity_of_state(&state).unwrap() > 0.0);
    }

    #[test]
    fn inseparability_examples() {
        let p = make_params(1.0, -1.0, 0.0).unwrap();
        assert_eq!(inseparability(&p, 0.0).unwrap(), (1.0, 1.0));
        for &l in &[0.5, 1.0, 3.0] {
            let (e1, e2) = inseparability(&p, l).unwrap();
            assert!((e1 - 1.0).abs() < 1e-12);
            assert!((e2 - 1.0 - 4.0 * l * l).abs() < 1e-12 * e2);
        }

        let p = make_params(1.0, -1.2, 0.0).unwrap();
        let (e1, _) = inseparability(&p, FRAC_PI_2 / 0.44f64.sqrt()).unwrap();
        assert!((e1 - 0.04 / 0.44).abs() < 1e-14);
        assert!(e1 < STRONGER_CRITERION);
    }

    #[test]
    fn collective_variances_reproduce_inseparability() {
        for &(d, phi, l) in &[(-0.8, 0.3, 1.0), (1.3, 2.0, 2.5), (-1.0, 5.0, 0.4)] {
            let p = make_params(1.0, d, phi).unwrap();
            let v = collective_variances(&p, l).unwrap();
            let (e1, e2) = inseparability(&p, l).unwrap();
            assert!(approx_eq(2.0 * v.q_minus, e1, 1e-13));
            assert!(approx_eq(2.0 * v.q_plus, e2, 1e-13));
        }
    }

    #[test]
    fn inseparability_ep_examples() {
        let p = make_params(1.0, -1.0, 0.0).unwrap();
        let (e1, e2) = inseparability_ep(&p, 1.5).unwrap();
        assert_eq!(e1, 1.0);
        assert!((e2 - 10.0).abs() < 1e-14);

        let p = make_params(1.0, -1.0, PI).unwrap();
        let (e1, e2) = inseparability_ep(&p, 1.5).unwrap();
        assert!((e1 - 10.0).abs() < 1e-14);
        assert!((e2 - 1.0).abs() < 1e-14);

        let p = make_params(1.0, -1.0, 1.5 * PI).unwrap();
        let (e1, _) = inseparability_ep(&p, 0.5).unwrap();
        assert!((e1 - 0.5).abs() < 1e-14);
        let near = make_params(1.0, -(1.0 - 1e-8), 1.5 * PI).unwrap();
        let (g1, _) = inseparability(&near, 0.5).unwrap();
        assert!((g1 - 0.5).abs() < 1e-7);

        let off = make_params(1.0, -0.9, 0.0).unwrap();
        assert!(matches!(
            inseparability_ep(&off, 1.0),
            Err(ObservablesError::NotAtExceptionalPoint(_))
        ));
    }

    #[test]
    fn inseparability_ep_positive_branch() {
        let p = make_params(1.0, 1.0, 0.7).unwrap();
        for &l in &[0.0, 0.8, 2.0] {
            let (e1, e2) = inseparability_ep(&p, l).unwrap();
            let (g1, g2) = inseparability(&p, l).unwrap();
            assert!(approx_eq(e1, g1, 1e-12));
            assert!(approx_eq(e2, g2, 1e-12));
        }
    }

    #[test]
    fn report_examples() {
        let p = make_params(1.0, -0.8, FRAC_PI_2).unwrap();
        let r = report(&p, 1.0).unwrap();
        assert_eq!(r.region.kind, crate::model::SingleModeRegion::AptSymmetric);
        assert_eq!(
            r.region.two_mode_kind,
            crate::model::TwoModeRegion::PtBroken
        );
        assert!(r.p2 > 0.0);

        let p = make_params(1.0, -1.0, 0.0).unwrap();
        let r = report(&p, 2.0).unwrap();
        assert!((r.e1 - 1.0).abs() < 1e-12);
        assert!((r.p1 + 16.0).abs() < 1e-12);
        // 2κ²L² + 2κ⁴L⁴ = 8 + 32
        assert!((r.p2 - 40.0).abs() < 1e-12);

        let p = make_params(1.0, -1.2, 0.0).unwrap();
        let r = report(&p, 0.0).unwrap();
        assert_eq!(
            (r.p1, r.p2, r.e1, r.e2, r.e_n, r.var_q),
            (0.0, 0.0, 1.0, 1.0, 0.0, 0.25)
        );
    }

    #[test]
    fn thresholds() {
        assert_eq!(WEAKER_CRITERION, 1.0);
        assert_eq!(STRONGER_CRITERION, 0.5);
    }
}

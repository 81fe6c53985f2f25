//! System parameters, effective Hamiltonians and symmetry classification.
//!
//! The single-mode generator acts on `(a_s, a_i†)`:
//!
//! ```text
//!     ┌                    ┐
//!     │  Δ        κe^{-iφ} │
//! H = │                    │
//!     │ -κe^{iφ}     -Δ    │
//!     └                    ┘
//! ```
//!
//! and squares to `(Δ² - κ²)·I`, so its eigenvalues are `±√(Δ² - κ²)`:
//! purely imaginary below the exceptional point `δ = |Δ|/κ = 1`, real above.
//! The collective-quadrature generators share the same spectrum, which is why
//! the single-mode APT classification and the two-mode PT classification swap
//! roles across `δ = 1`.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;
use thiserror::Error;

/// `|δ - 1|` at or below this value classifies as the exceptional point.
pub const EP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("coupling strength kappa must be positive, got {0}")]
    DegenerateCoupling(f64),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}

fn finite(name: &'static str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ModelError::NonFinite { name, value })
    }
}

/// Pump/coupling configuration `(κ, Δ, φ)`.
///
/// `kappa` is strictly positive, `delta` is the signed detuning `Δ = -Δk/2`,
/// and `phi` is the pump phase wrapped into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    kappa: f64,
    delta: f64,
    phi: f64,
}

impl SystemParams {
    pub fn new(kappa: f64, delta: f64, phi: f64) -> Result<Self, ModelError> {
        let kappa = finite("kappa", kappa)?;
        let delta = finite("delta", delta)?;
        let phi = finite("phi", phi)?;
        if kappa <= 0.0 {
            return Err(ModelError::DegenerateCoupling(kappa));
        }
        let mut phi = phi.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { kappa, delta, phi })
    }

    /// Builds parameters from the ratio `δ = |Δ|/κ` and a detuning branch.
    pub fn from_ratio(
        kappa: f64,
        delta_ratio: f64,
        sign: DeltaSign,
        phi: f64,
    ) -> Result<Self, ModelError> {
        let delta_ratio = finite("delta_ratio", delta_ratio)?;
        let delta = match sign {
            DeltaSign::Negative => -delta_ratio * kappa,
            DeltaSign::Positive => delta_ratio * kappa,
        };
        Self::new(kappa, delta, phi)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `δ = |Δ|/κ`.
    pub fn delta_ratio(&self) -> f64 {
        self.delta.abs() / self.kappa
    }

    /// `u = Δ² - κ²`, evaluated as `(|Δ| - κ)(|Δ| + κ)` so it stays accurate
    /// near the exceptional point.
    pub fn u(&self) -> f64 {
        let d = self.delta.abs();
        (d - self.kappa) * (d + self.kappa)
    }

    pub fn region(&self) -> SymmetryRegion {
        SymmetryRegion::classify(self.delta_ratio())
    }

    /// Same `(κ, Δ)` with a different pump phase.
    pub fn with_phi(&self, phi: f64) -> Result<Self, ModelError> {
        Self::new(self.kappa, self.delta, phi)
    }
}

/// Branch of the detuning when parameters are given through `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaSign {
    /// `Δ = -δκ`; the branch on which `E1 = 1` at the EP for `cos φ = 1`.
    #[default]
    Negative,
    Positive,
}

impl DeltaSign {
    pub fn as_str(&self) -> &'static str {
        match self {
            DeltaSign::Negative => "negative",
            DeltaSign::Positive => "positive",
        }
    }
}

impl std::str::FromStr for DeltaSign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "negative" | "neg" | "-" => Ok(DeltaSign::Negative),
            "positive" | "pos" | "+" => Ok(DeltaSign::Positive),
            other => Err(format!(
                "invalid delta sign '{other}', expected 'negative' or 'positive'"
            )),
        }
    }
}

/// Validated [`SystemParams`] constructor.
pub fn make_params(kappa: f64, delta: f64, phi: f64) -> Result<SystemParams, ModelError> {
    SystemParams::new(kappa, delta, phi)
}

/// Detuning from the wave numbers and the pump/signal angle:
/// `Δ = -Δk/2` with `Δk = 2k_p - (k_s + k_i) cos θ`.
pub fn delta_from_mismatch(k_p: f64, k_s: f64, k_i: f64, theta: f64) -> Result<f64, ModelError> {
    let k_p = finite("k_p", k_p)?;
    let k_s = finite("k_s", k_s)?;
    let k_i = finite("k_i", k_i)?;
    let theta = finite("theta", theta)?;
    for (name, value) in [("k_p", k_p), ("k_s", k_s), ("k_i", k_i)] {
        if value <= 0.0 {
            return Err(ModelError::NonPositive { name, value });
        }
    }
    let mismatch = 2.0 * k_p - (k_s + k_i) * theta.cos();
    Ok(-mismatch / 2.0)
}

/// Single-mode symmetry phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingleModeRegion {
    AptSymmetric,
    ExceptionalPoint,
    AptBroken,
}

/// Two-mode quadrature symmetry phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoModeRegion {
    PtBroken,
    ExceptionalPoint,
    PtSymmetric,
}

impl SingleModeRegion {
    pub fn label(&self) -> &'static str {
        match self {
            SingleModeRegion::AptSymmetric => "APT_SYMMETRIC",
            SingleModeRegion::ExceptionalPoint => "EXCEPTIONAL_POINT",
            SingleModeRegion::AptBroken => "APT_BROKEN",
        }
    }
}

impl TwoModeRegion {
    pub fn label(&self) -> &'static str {
        match self {
            TwoModeRegion::PtBroken => "PT_BROKEN",
            TwoModeRegion::ExceptionalPoint => "EXCEPTIONAL_POINT",
            TwoModeRegion::PtSymmetric => "PT_SYMMETRIC",
        }
    }
}

/// Paired single-mode / two-mode classification. The two always move
/// together: APT-symmetric is PT-broken and vice versa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetryRegion {
    pub kind: SingleModeRegion,
    pub two_mode_kind: TwoModeRegion,
}

impl SymmetryRegion {
    /// Classification from `δ` alone.
    pub fn classify(delta_ratio: f64) -> Self {
        if (delta_ratio - 1.0).abs() <= EP_TOLERANCE {
            Self {
                kind: SingleModeRegion::ExceptionalPoint,
                two_mode_kind: TwoModeRegion::ExceptionalPoint,
            }
        } else if delta_ratio < 1.0 {
            Self {
                kind: SingleModeRegion::AptSymmetric,
                two_mode_kind: TwoModeRegion::PtBroken,
            }
        } else {
            Self {
                kind: SingleModeRegion::AptBroken,
                two_mode_kind: TwoModeRegion::PtSymmetric,
            }
        }
    }

    pub fn is_exceptional_point(&self) -> bool {
        self.kind == SingleModeRegion::ExceptionalPoint
    }
}

impl fmt::Display for SymmetryRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.label())
    }
}

/// Which operator vector a 2×2 generator or propagator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `(a_s, a_i†)`
    SingleMode,
    /// `(q_s + q_i, p_s + p_i)`
    TwoModePlus,
    /// `(p_s - p_i, q_s - q_i)`
    TwoModeMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoModeSign {
    Plus,
    Minus,
}

impl TwoModeSign {
    pub fn basis(&self) -> Basis {
        match self {
            TwoModeSign::Plus => Basis::TwoModePlus,
            TwoModeSign::Minus => Basis::TwoModeMinus,
        }
    }
}

/// A 2×2 effective Hamiltonian tagged with its basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianMatrix {
    pub entries: Matrix2<Complex64>,
    pub basis: Basis,
}

pub fn hamiltonian_single_mode(params: &SystemParams) -> HamiltonianMatrix {
    let k = params.kappa();
    let d = params.delta();
    let phase = Complex64::from_polar(1.0, params.phi());
    let entries = Matrix2::new(
        Complex64::new(d, 0.0),
        phase.conj() * k,
        -phase * k,
        Complex64::new(-d, 0.0),
    );
    HamiltonianMatrix {
        entries,
        basis: Basis::SingleMode,
    }
}

/// Real generator `K` of the collective quadratures, `∂_z X = K X`; the
/// Hamiltonian is `H = iK`.
pub(crate) fn two_mode_generator(params: &SystemParams, sign: TwoModeSign) -> [[f64; 2]; 2] {
    let k = params.kappa();
    let d = params.delta();
    let (s, c) = params.phi().sin_cos();
    match sign {
        TwoModeSign::Plus => [[-k * s, d - k * c], [-d - k * c, k * s]],
        TwoModeSign::Minus => [[-k * s, -d + k * c], [d + k * c, k * s]],
    }
}

/// Collective-quadrature Hamiltonian for either sign. For `cos φ = 0` this is
/// the PT-symmetric pair; for general φ it is still `i·(real matrix)`.
pub fn hamiltonian_two_mode(params: &SystemParams, sign: TwoModeSign) -> HamiltonianMatrix {
    let g = two_mode_generator(params, sign);
    let i = Complex64::i();
    HamiltonianMatrix {
        entries: Matrix2::new(i * g[0][0], i * g[0][1], i * g[1][0], i * g[1][1]),
        basis: sign.basis(),
    }
}

/// Both eigenvalue pairs and the region label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    /// `(λ₊, λ₋)` of the single-mode Hamiltonian.
    pub lambda_single: [Complex64; 2],
    /// `(λ₊, λ₋)` of the two-mode quadrature Hamiltonians.
    pub lambda_two_mode: [Complex64; 2],
    pub region: SymmetryRegion,
}

/// Eigenvalues `±√(Δ² - κ²)` of both generators.
///
/// `λ = i|κ|√(1-δ²)` below the EP and `|κ|√(δ²-1)` above it; both forms are
/// the principal square root of `u = Δ² - κ²`, so the single-mode and
/// two-mode pairs coincide.
pub fn spectrum(params: &SystemParams) -> SpectralData {
    let u = params.u();
    let root = if u >= 0.0 {
        Complex64::new(u.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-u).sqrt())
    };
    SpectralData {
        lambda_single: [root, -root],
        lambda_two_mode: [root, -root],
        region: params.region(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryMode {
    /// `{H, PT} = 0`
    AntiPt,
    /// `[H, PT] = 0`
    Pt,
}

/// Frobenius norm of `σ_x H* σ_x + H` (anti-PT) or `σ_x H* σ_x - H` (PT).
///
/// `P` swaps the two components and `T` conjugates entrywise; zero means the
/// symmetry holds exactly.
pub fn symmetry_defect(h: &HamiltonianMatrix, mode: SymmetryMode) -> f64 {
    let m = &h.entries;
    let swapped = Matrix2::new(
        m[(1, 1)].conj(),
        m[(1, 0)].conj(),
        m[(0, 1)].conj(),
        m[(0, 0)].conj(),
    );
    match mode {
        SymmetryMode::AntiPt => (swapped + m).norm(),
        SymmetryMode::Pt => (swapped - m).norm(),
    }
}

//! Double-double propagation path.
//!
//! Used where double precision cannot meet a fixed absolute tolerance:
//! checking the Bogoliubov identity at `1e-12` when `|M₁₁|²` is of order
//! `10⁴`, purity of propagated covariances, and the small symplectic
//! eigenvalue behind the logarithmic negativity. Only the arithmetic comes
//! from `twofloat`; the kernels are evaluated here by a scaled Taylor series
//! followed by repeated angle doubling.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use twofloat::TwoFloat;

use super::{check_length, PropagationError};
use crate::model::SystemParams;

pub type DD = TwoFloat;

fn dd(x: f64) -> DD {
    TwoFloat::from(x)
}

fn to_f64(x: DD) -> f64 {
    x.hi() + x.lo()
}

/// Series terms used once `|u·h²| ≤ 1/4`; the next term is below `1e-33`.
const SERIES_TERMS: u32 = 14;

/// `u = Δ² - κ²` with exact products.
pub fn wide_u(params: &SystemParams) -> DD {
    let d = params.delta();
    let k = params.kappa();
    TwoFloat::new_mul(d, d) - TwoFloat::new_mul(k, k)
}

/// `(cos φ, sin φ)` renormalized to unit length in double-double.
fn unit_phase(params: &SystemParams) -> (DD, DD) {
    let (s, c) = params.phi().sin_cos();
    let (c, s) = (dd(c), dd(s));
    let r = (c * c + s * s).sqrt();
    (c / r, s / r)
}

#[derive(Debug, Clone, Copy)]
pub struct WideKernels {
    pub c: DD,
    pub s: DD,
}

/// `C(u, L)` and `S(u, L)` in double-double.
pub fn wide_kernels(u: DD, l: f64) -> WideKernels {
    let y_full = to_f64(u) * l * l;
    let mut m = 0;
    let mut scale = 1.0;
    while y_full.abs() * scale * scale > 0.25 {
        m += 1;
        scale *= 0.5;
    }
    let h = l * scale;
    let y = u * TwoFloat::new_mul(h, h);
    let mut c = dd(1.0);
    let mut s = dd(1.0);
    for k in (1..=SERIES_TERMS).rev() {
        let k = f64::from(k);
        c = 1.0 - y * c / ((2.0 * k - 1.0) * (2.0 * k));
        s = 1.0 - y * s / ((2.0 * k) * (2.0 * k + 1.0));
    }
    s *= h;
    for _ in 0..m {
        s = 2.0 * s * c;
        c = 2.0 * c * c - 1.0;
    }
    WideKernels { c, s }
}

/// Complex double-double number `re + i·im`.
#[derive(Debug, Clone, Copy)]
pub struct WideComplex {
    pub re: DD,
    pub im: DD,
}

impl WideComplex {
    fn norm_sqr(&self) -> DD {
        self.re * self.re + self.im * self.im
    }

    fn to_f64(self) -> Complex64 {
        Complex64::new(to_f64(self.re), to_f64(self.im))
    }
}

/// Double-double single-mode propagator.
#[derive(Debug, Clone, Copy)]
pub struct WideTransfer {
    pub entries: [[WideComplex; 2]; 2],
}

impl WideTransfer {
    /// `|M₁₁|² - |M₁₂|² - 1` and `|M₂₂|² - |M₂₁|² - 1`, evaluated in
    /// double-double and rounded once.
    pub fn bogoliubov_residuals(&self) -> (f64, f64) {
        let e = &self.entries;
        (
            to_f64(e[0][0].norm_sqr() - e[0][1].norm_sqr() - 1.0),
            to_f64(e[1][1].norm_sqr() - e[1][0].norm_sqr() - 1.0),
        )
    }

    pub fn to_f64(&self) -> Matrix2<Complex64> {
        let e = &self.entries;
        Matrix2::new(
            e[0][0].to_f64(),
            e[0][1].to_f64(),
            e[1][0].to_f64(),
            e[1][1].to_f64(),
        )
    }
}

pub fn wide_transfer_single_mode(
    params: &SystemParams,
    l: f64,
) -> Result<WideTransfer, PropagationError> {
    let l = check_length(l)?;
    let WideKernels { c, s } = wide_kernels(wide_u(params), l);
    let (cp, sp) = unit_phase(params);
    let ds = s * params.delta();
    let ks = s * params.kappa();
    Ok(WideTransfer {
        entries: [
            [
                WideComplex { re: c, im: -ds },
                WideComplex {
                    re: -(sp * ks),
                    im: -(cp * ks),
                },
            ],
            [
                WideComplex {
                    re: -(sp * ks),
                    im: cp * ks,
                },
                WideComplex { re: c, im: ds },
            ],
        ],
    })
}

/// Real 4×4 double-double matrix.
#[derive(Debug, Clone, Copy)]
pub struct WideMatrix4 {
    pub e: [[DD; 4]; 4],
}

impl WideMatrix4 {
    pub fn zeros() -> Self {
        Self {
            e: [[dd(0.0); 4]; 4],
        }
    }

    pub fn from_f64(m: &Matrix4<f64>) -> Self {
        let mut out = Self::zeros();
        for r in 0..4 {
            for c in 0..4 {
                out.e[r][c] = dd(m[(r, c)]);
            }
        }
        out
    }

    pub fn to_f64(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|r, c| to_f64(self.e[r][c]))
    }

    pub fn get(&self, r: usize, c: usize) -> DD {
        self.e[r][c]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros();
        for r in 0..4 {
            for c in 0..4 {
                let mut acc = dd(0.0);
                for k in 0..4 {
                    acc += self.e[r][k] * other.e[k][c];
                }
                out.e[r][c] = acc;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for r in 0..4 {
            for c in 0..4 {
                out.e[r][c] = self.e[c][r];
            }
        }
        out
    }

    fn minor2(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> DD {
        self.e[r0][c0] * self.e[r1][c1] - self.e[r0][c1] * self.e[r1][c0]
    }

    /// Laplace expansion along the first two rows.
    pub fn det(&self) -> DD {
        let s = [
            self.minor2(0, 1, 0, 1),
            self.minor2(0, 1, 0, 2),
            self.minor2(0, 1, 0, 3),
            self.minor2(0, 1, 1, 2),
            self.minor2(0, 1, 1, 3),
            self.minor2(0, 1, 2, 3),
        ];
        let c = [
            self.minor2(2, 3, 0, 1),
            self.minor2(2, 3, 0, 2),
            self.minor2(2, 3, 0, 3),
            self.minor2(2, 3, 1, 2),
            self.minor2(2, 3, 1, 3),
            self.minor2(2, 3, 2, 3),
        ];
        s[0] * c[5] - s[1] * c[4] + s[2] * c[3] + s[3] * c[2] - s[4] * c[1] + s[5] * c[0]
    }

    /// `(det A, det B, det C)` for the block form `[[A, C], [Cᵀ, B]]`.
    pub fn block_determinants(&self) -> (DD, DD, DD) {
        (
            self.minor2(0, 1, 0, 1),
            self.minor2(2, 3, 2, 3),
            self.minor2(0, 1, 2, 3),
        )
    }

    /// Symplectic eigenvalues `(ν₋, ν₊)` of a covariance matrix.
    ///
    /// With `K = JV`, the squared eigenvalues are
    /// `(Σ ± √tr(D²))/2` where `Σ = -tr(K²)/2` and `D = K² - (tr(K²)/4)·I`.
    /// Forming `D` first keeps the split accurate when `ν₋ ≈ ν₊`; the smaller
    /// value is then taken from `ν₋²ν₊² = det V`.
    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        let mut k = Self::zeros();
        for j in [0, 2] {
            for c in 0..4 {
                k.e[j][c] = self.e[j + 1][c];
                k.e[j + 1][c] = -self.e[j][c];
            }
        }
        let k2 = k.mul(&k);
        let m = (k2.e[0][0] + k2.e[1][1] + k2.e[2][2] + k2.e[3][3]) / 4.0;
        let mut d = k2;
        for j in 0..4 {
            d.e[j][j] -= m;
        }
        let mut rad = dd(0.0);
        for r in 0..4 {
            for c in 0..4 {
                rad += d.e[r][c] * d.e[c][r];
            }
        }
        let rad = if rad < 0.0 { dd(0.0) } else { rad };
        let sigma = -2.0 * m;
        let plus_sq = (sigma + rad.sqrt()) / 2.0;
        if !(plus_sq > 0.0) {
            return (0.0, 0.0);
        }
        let minus_sq = self.det() / plus_sq;
        let minus = if minus_sq > 0.0 {
            minus_sq.sqrt()
        } else {
            dd(0.0)
        };
        (to_f64(minus), to_f64(plus_sq.sqrt()))
    }
}

/// `C·I + S·G` on `(q_s, p_s, q_i, p_i)` in double-double.
pub fn wide_quadrature_transfer(
    params: &SystemParams,
    l: f64,
) -> Result<WideMatrix4, PropagationError> {
    let l = check_length(l)?;
    let WideKernels { c, s } = wide_kernels(wide_u(params), l);
    let (cp, sp) = unit_phase(params);
    let d = s * params.delta();
    let kc = s * params.kappa() * cp;
    let ks = s * params.kappa() * sp;
    Ok(WideMatrix4 {
        e: [
            [c, d, -ks, -kc],
            [-d, c, -kc, ks],
            [-ks, -kc, c, d],
            [-kc, ks, -d, c],
        ],
    })
}

/// `S·V·Sᵀ` in double-double for an input covariance `V`.
pub fn propagate_covariance_wide(
    cov: &Matrix4<f64>,
    params: &SystemParams,
    l: f64,
) -> Result<WideMatrix4, PropagationError> {
    let s = wide_quadrature_transfer(params, l)?;
    let v = WideMatrix4::from_f64(cov);
    Ok(s.mul(&v).mul(&s.transpose()))
}

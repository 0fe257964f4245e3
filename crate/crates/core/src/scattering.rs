//! Scattering data of a single δ or δ-δ′ point potential on the line.
//!
//! Canonical denominators: the pure δ amplitudes are written over `2ik - w0`,
//! the δ-δ′ ones over `2k(1 + w1²) + i w0`. The two agree after multiplying
//! numerator and denominator by `-i`; `delta_prime_amplitudes` with `w1 = 0`
//! reproduces `delta_amplitudes` to rounding.
//!
//! Momenta are complex so that the same code serves real `k` (bands) and the
//! positive imaginary axis `k = iκ`. Only those two rays are supported.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CombError, Result};

/// Dimensionless couplings of the δ-δ′ comb and the parameters derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombCouplings {
    pub w0: f64,
    pub w1: f64,
    pub a: f64,
    pub omega: f64,
    pub gamma: f64,
    /// `(1 + w1)/(1 - w1)`; `None` when `w1 = ±1`.
    pub alpha: Option<f64>,
    /// `w0/(1 - w1²)`; `None` when `w1 = ±1`.
    pub beta: Option<f64>,
}

impl CombCouplings {
    pub fn new(w0: f64, w1: f64, a: f64) -> Result<Self> {
        derive_couplings(w0, w1, a)
    }

    pub fn free(a: f64) -> Result<Self> {
        derive_couplings(0.0, 0.0, a)
    }

    /// The reduced parameter set `(Ω, γ, a)` the comb spectrum depends on.
    pub fn params(&self) -> CombParams {
        let s = 1.0 + self.w1 * self.w1;
        CombParams {
            a: self.a,
            omega: self.omega,
            gamma: self.gamma,
            one_plus_omega: 2.0 * self.w1 * self.w1 / s,
            one_minus_omega: 2.0 / s,
        }
    }
}

pub fn derive_couplings(w0: f64, w1: f64, a: f64) -> Result<CombCouplings> {
    if !(a.is_finite() && a > 0.0) {
        return Err(CombError::InvalidLatticeSpacing(a));
    }
    if !w0.is_finite() || !w1.is_finite() {
        return Err(CombError::InvalidCoupling(format!(
            "couplings must be finite (w0={w0}, w1={w1})"
        )));
    }
    let w1sq = w1 * w1;
    let omega = (w1sq - 1.0) / (w1sq + 1.0);
    let gamma = w0 / (1.0 + w1sq);
    let singular = w1.abs() == 1.0;
    let alpha = (!singular).then(|| (1.0 + w1) / (1.0 - w1));
    let beta = (!singular).then(|| w0 / (1.0 - w1sq));
    Ok(CombCouplings {
        w0,
        w1,
        a,
        omega,
        gamma,
        alpha,
        beta,
    })
}

/// The parameters `(Ω, γ, a)` with `1 ± Ω` kept separately, so that the
/// near-degenerate combinations `1 + Ω cos θ` lose no digits at `Ω → ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombParams {
    pub a: f64,
    pub omega: f64,
    pub gamma: f64,
    pub one_plus_omega: f64,
    pub one_minus_omega: f64,
}

impl CombParams {
    pub fn new(omega: f64, gamma: f64, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(CombError::InvalidLatticeSpacing(a));
        }
        if !(-1.0..=1.0).contains(&omega) {
            return Err(CombError::InvalidCoupling(format!(
                "Omega = {omega} must lie in [-1, 1]"
            )));
        }
        if !gamma.is_finite() {
            return Err(CombError::InvalidCoupling(format!(
                "gamma = {gamma} must be finite"
            )));
        }
        Ok(Self {
            a,
            omega,
            gamma,
            one_plus_omega: 1.0 + omega,
            one_minus_omega: 1.0 - omega,
        })
    }

    /// `1 + Ω cos θ`, as a sum of non-negative terms.
    pub fn one_plus_omega_cos(&self, theta: f64) -> f64 {
        if self.omega < 0.0 {
            let s = (0.5 * theta).sin();
            self.one_plus_omega - 2.0 * self.omega * s * s
        } else {
            let c = (0.5 * theta).cos();
            self.one_minus_omega + 2.0 * self.omega * c * c
        }
    }
}

/// Transmission and reflection amplitudes at one momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringAmplitudes {
    pub t: Complex64,
    pub r_right: Complex64,
    pub r_left: Complex64,
    pub k: Complex64,
}

impl ScatteringAmplitudes {
    pub fn free(k: Complex64) -> Self {
        Self {
            t: Complex64::new(1.0, 0.0),
            r_right: Complex64::new(0.0, 0.0),
            r_left: Complex64::new(0.0, 0.0),
            k,
        }
    }

    /// `t² - r_R r_L`.
    pub fn s_matrix_det(&self) -> Complex64 {
        s_matrix_det(self)
    }
}

fn check_supported(k: Complex64) -> Result<()> {
    let on_real = k.im == 0.0 && k.re != 0.0;
    let on_imag = k.re == 0.0 && k.im > 0.0;
    if on_real || on_imag {
        Ok(())
    } else {
        Err(CombError::InvalidCoupling(format!(
            "momentum {k} must be real and nonzero or on the positive imaginary axis"
        )))
    }
}

fn is_pole(den: Complex64, scale: f64) -> bool {
    den.norm() <= 4.0 * f64::EPSILON * scale
}

pub fn delta_amplitudes(w0: f64, k: Complex64) -> Result<ScatteringAmplitudes> {
    check_supported(k)?;
    let two_ik = Complex64::i() * 2.0 * k;
    let den = two_ik - w0;
    if is_pole(den, two_ik.norm() + w0.abs()) {
        return Err(CombError::PoleOfAmplitude { k });
    }
    let r = Complex64::new(w0, 0.0) / den;
    Ok(ScatteringAmplitudes {
        t: two_ik / den,
        r_right: r,
        r_left: r,
        k,
    })
}

pub fn delta_prime_amplitudes(c: &CombCouplings, k: Complex64) -> Result<ScatteringAmplitudes> {
    check_supported(k)?;
    let i = Complex64::i();
    let (w0, w1) = (c.w0, c.w1);
    let den = 2.0 * k * (w1 * w1 + 1.0) + i * w0;
    if is_pole(den, 2.0 * k.norm() * (w1 * w1 + 1.0) + w0.abs()) {
        return Err(CombError::PoleOfAmplitude { k });
    }
    Ok(ScatteringAmplitudes {
        t: -2.0 * k * (w1 * w1 - 1.0) / den,
        r_right: (-4.0 * k * w1 - i * w0) / den,
        r_left: (4.0 * k * w1 - i * w0) / den,
        k,
    })
}

pub fn s_matrix_det(amps: &ScatteringAmplitudes) -> Complex64 {
    amps.t * amps.t - amps.r_right * amps.r_left
}

/// Closed form `(2k(w1²+1) - i w0)/(2k(w1²+1) + i w0)` of the δ-δ′ determinant.
pub fn delta_prime_det_closed(c: &CombCouplings, k: Complex64) -> Complex64 {
    let i = Complex64::i();
    let s = 2.0 * k * (c.w1 * c.w1 + 1.0);
    (s - i * c.w0) / (s + i * c.w0)
}

//! Regularized vacuum energy per unit cell of the δ-δ′ comb.
//!
//! The energy is `E = ∫_{-π}^{π} dθ/(4π²) ∫_0^∞ dk F(k, θ)` with
//!
//! ```text
//! F(k, θ) = A/(B + C cos θ) + ak - γ/(γ + 2k)
//! A = -akγ cosh(ka) + (γ - 2ak²) sinh(ka)
//! B = 2k cosh(ka) + γ sinh(ka),   C = 2kΩ
//! ```
//!
//! and, after the θ integral, `E = ∫_0^∞ I(k) dk` with
//! `I(k) = [A/√(B² - C²) + ak - γ/(γ + 2k)] / 2π`.
//!
//! Both integrands are exponentially small differences of `O(ak)` terms.
//! They are evaluated from the exact identity
//! `A + (ak - γ/(γ+2k)) B = e^{-ka} P(k)`, `P = 2ak² - akγ - 2kγ/(γ+2k)`,
//! with every hyperbolic function carried in `e^{-ka}`-scaled form, so no
//! cancellation or overflow occurs at any `k`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CombError, Result};
use crate::quadrature::{
    integrate_semi_infinite_with_breakpoints, integrate_with_breakpoints, QuadratureConfig,
    TailEnvelope,
};
use crate::scattering::CombParams;

/// Above this `ka` the exact `A, B, C` overflow-prone forms are replaced by
/// their `e^{-ka}`-scaled versions.
pub const SCALED_KA: f64 = 30.0;

/// The coefficient functions `A(k)`, `B(k)`, `C(k)`.
///
/// When `scaled` is set all three carry a common factor `e^{-ka}`; ratios
/// such as `A/B` and `C/B` are unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrandAbc {
    pub a_k: f64,
    pub b_k: f64,
    pub c_k: f64,
    pub scaled: bool,
}

pub fn abc(k: f64, p: &CombParams) -> IntegrandAbc {
    let (a, gamma) = (p.a, p.gamma);
    let ka = k * a;
    let c_k = 2.0 * k * p.omega;
    if ka > SCALED_KA {
        let e = (-ka).exp();
        let e2 = e * e;
        let ch = 0.5 * (1.0 + e2);
        let sh = 0.5 * (1.0 - e2);
        IntegrandAbc {
            a_k: -a * k * gamma * ch + (gamma - 2.0 * a * k * k) * sh,
            b_k: 2.0 * k * ch + gamma * sh,
            c_k: c_k * e,
            scaled: true,
        }
    } else {
        let (sh, ch) = (ka.sinh(), ka.cosh());
        IntegrandAbc {
            a_k: -a * k * gamma * ch + (gamma - 2.0 * a * k * k) * sh,
            b_k: 2.0 * k * ch + gamma * sh,
            c_k,
            scaled: false,
        }
    }
}

/// Which analytic limit of the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitKind {
    /// `γ → ∞`: two Dirichlet plates, `E = -π/(24a)`.
    Dirichlet,
    /// `Ω = γ = 0`: Dirichlet on one side, Neumann on the other, `E = π/(48a)`.
    Mixed,
}

/// An energy integral with its numerical error and the truncated tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyResult {
    /// Integral over `[0, truncation_k]`; the tail is excluded.
    pub value: f64,
    pub abs_err: f64,
    pub truncation_k: f64,
    pub tail_bound: f64,
    /// Integrand evaluations, each of which passed the `B² > C²` check.
    pub evaluations: usize,
}

fn require_physical(p: &CombParams) -> Result<()> {
    if p.gamma < 0.0 {
        return Err(CombError::OutsideValidityDomain { gamma: p.gamma });
    }
    Ok(())
}

// e^{-ka}, 1 - e^{-ka} and 1 - e^{-2ka}, all without cancellation.
struct Scaled {
    e1: f64,
    one_minus_e1: f64,
    one_minus_e2: f64,
}

impl Scaled {
    fn new(ka: f64) -> Self {
        Self {
            e1: (-ka).exp(),
            one_minus_e1: -(-ka).exp_m1(),
            one_minus_e2: -(-2.0 * ka).exp_m1(),
        }
    }

    /// `e^{-ka} [2k(cosh ka + x) + γ sinh ka]` for `x = Ω cos θ` given as `1 + x`.
    fn denominator(&self, k: f64, gamma: f64, one_plus_x: f64) -> f64 {
        // e^{-ka}(cosh ka - 1) = (1 - e^{-ka})²/2
        2.0 * k * (0.5 * self.one_minus_e1 * self.one_minus_e1 + one_plus_x * self.e1)
            + 0.5 * gamma * self.one_minus_e2
    }
}

fn subtraction(k: f64, p: &CombParams) -> (f64, f64) {
    let (a, gamma) = (p.a, p.gamma);
    let screened = gamma / (gamma + 2.0 * k);
    let l = a * k - screened;
    let poly = 2.0 * a * k * k - a * k * gamma - 2.0 * k * screened;
    (l, poly)
}

/// `F(k, θ)`; requires `γ ≥ 0`.
///
/// At `k = 0` the removable limit is returned: `-1` for `γ > 0`, otherwise
/// `0`, or `-2` when also `1 + Ω cos θ = 0` (free comb at `θ = 0`).
pub fn integrand_f(k: f64, theta: f64, p: &CombParams) -> Result<f64> {
    require_physical(p)?;
    let one_plus_x = p.one_plus_omega_cos(theta);
    if k == 0.0 {
        return Ok(if p.gamma > 0.0 {
            -1.0
        } else if one_plus_x == 0.0 {
            -2.0
        } else {
            0.0
        });
    }
    let s = Scaled::new(k * p.a);
    let b_plus_c = s.denominator(k, p.gamma, p.one_plus_omega);
    let b_minus_c = s.denominator(k, p.gamma, p.one_minus_omega);
    if !(b_plus_c > 0.0 && b_minus_c > 0.0) {
        return Err(CombError::ValidityViolation {
            k,
            margin: b_plus_c * b_minus_c,
        });
    }
    let den = s.denominator(k, p.gamma, one_plus_x);
    let (l, _) = subtraction(k, p);
    // e^{-ka} P + 2kLΩcosθ regrouped around (1 + Ω cos θ) - (1 - e^{-ka}).
    let gap = one_plus_x - s.one_minus_e1;
    let num = 2.0 * k * l * gap - k * p.a * p.gamma * s.e1;
    Ok(s.e1 * num / den)
}

/// Scaled `B² - C²`, i.e. `e^{-2ka}(B - C)(B + C)`; positive in the supported domain.
pub fn validity_margin(k: f64, p: &CombParams) -> f64 {
    let s = Scaled::new(k * p.a);
    s.denominator(k, p.gamma, p.one_plus_omega) * s.denominator(k, p.gamma, p.one_minus_omega)
}

/// `I(k)`, the θ-average of `F` in closed form; requires `γ ≥ 0`.
///
/// Fails with [`CombError::ValidityViolation`] if `B² ≤ C²` at this `k`.
pub fn integrand_i(k: f64, p: &CombParams) -> Result<f64> {
    require_physical(p)?;
    if k == 0.0 {
        return Ok(if p.gamma > 0.0 {
            -1.0 / (2.0 * PI)
        } else {
            0.0
        });
    }
    let s = Scaled::new(k * p.a);
    let b_plus_c = s.denominator(k, p.gamma, p.one_plus_omega);
    let b_minus_c = s.denominator(k, p.gamma, p.one_minus_omega);
    if !(b_plus_c > 0.0 && b_minus_c > 0.0) {
        return Err(CombError::ValidityViolation {
            k,
            margin: b_plus_c * b_minus_c,
        });
    }
    let root = b_plus_c.sqrt() * b_minus_c.sqrt();
    let b = 0.5 * (b_plus_c + b_minus_c);
    let c = 2.0 * k * p.omega * s.e1;
    let (l, poly) = subtraction(k, p);
    // A/√ + L = (e^{-ka}P - L C²/(B + √))/√, all in scaled units.
    Ok((s.e1 * s.e1 * poly - l * c * c / (b + root)) / (2.0 * PI * root))
}

/// Numerical `∫_{-π}^{π} F(k, θ) dθ / 4π²`, the independent check of [`integrand_i`].
pub fn theta_integral_numeric(k: f64, p: &CombParams, cfg: &QuadratureConfig) -> Result<f64> {
    require_physical(p)?;
    let mut failure = None;
    // F is even in θ.
    let r = integrate_with_breakpoints(
        |theta| match integrand_f(k, theta, p) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        &[0.0, 0.5 * PI, PI],
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(2.0 * r?.value / (4.0 * PI * PI))
}

/// `k` values where the integrands change character, used to seed subdivision.
fn breakpoints(a: f64, gamma: f64, cutoff: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    for x in [0.5 * gamma, 1.0 / a, 10.0 / a] {
        if x > 0.0 && x < cutoff {
            pts.push(x);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn semi_infinite_energy<F>(
    mut f: F,
    a: f64,
    gamma: f64,
    rate: f64,
    cfg: &QuadratureConfig,
) -> Result<EnergyResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    cfg.validate()?;
    let cutoff = cfg.truncation_for(a);
    let mut failure = None;
    let mut evaluations = 0usize;
    let mut guarded = |k: f64| {
        evaluations += 1;
        match f(k) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let envelope = TailEnvelope::fit(&mut guarded, 0.5 * cutoff, cutoff, rate);
    let r = integrate_semi_infinite_with_breakpoints(
        &mut guarded,
        &breakpoints(a, gamma, cutoff),
        cutoff,
        cfg,
        envelope,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let r = r?;
    Ok(EnergyResult {
        value: r.value,
        abs_err: r.abs_err,
        truncation_k: r.truncation,
        tail_bound: r.tail_bound,
        evaluations,
    })
}

/// `E = ∫_0^∞ I(k) dk` with a fitted `e^{-3ka/2}` tail bound.
pub fn comb_energy(p: &CombParams, cfg: &QuadratureConfig) -> Result<EnergyResult> {
    require_physical(p)?;
    semi_infinite_energy(|k| integrand_i(k, p), p.a, p.gamma, 1.5 * p.a, cfg)
}

/// Energy `(1/2π) ∫_0^∞ F(k, θ) dk` of a single cell with quasi-periodic
/// boundary phase `θ`. Its θ-average is [`comb_energy`].
pub fn plate_energy_theta(
    theta: f64,
    p: &CombParams,
    cfg: &QuadratureConfig,
) -> Result<EnergyResult> {
    require_physical(p)?;
    if !(-PI..=PI).contains(&theta) {
        return Err(CombError::InvalidConfig(format!(
            "theta = {theta} outside [-pi, pi]"
        )));
    }
    // F decays like k e^{-ka} for Ω ≠ 0.
    let r = semi_infinite_energy(|k| integrand_f(k, theta, p), p.a, p.gamma, 0.5 * p.a, cfg)?;
    let norm = 1.0 / (2.0 * PI);
    Ok(EnergyResult {
        value: r.value * norm,
        abs_err: r.abs_err * norm,
        tail_bound: r.tail_bound * norm,
        ..r
    })
}

/// Closed-form energy of two plates with quasi-periodic conditions and no
/// potential between them: `(|θ| - θ²/2π - π/3) / 2a`.
pub fn quasiperiodic_plate_closed(theta: f64, a: f64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(CombError::InvalidLatticeSpacing(a));
    }
    if !(-PI..=PI).contains(&theta) {
        return Err(CombError::InvalidConfig(format!(
            "theta = {theta} outside [-pi, pi]"
        )));
    }
    Ok((theta.abs() - theta * theta / (2.0 * PI) - PI / 3.0) / (2.0 * a))
}

/// Closed-form limiting integrands of `I(k)`.
///
/// Dirichlet: `-ka e^{-ka} csch(ka) / 2π`, Mixed: `-ka (tanh ka - 1) / 2π`.
pub fn limit_integrand(kind: LimitKind, k: f64, a: f64) -> f64 {
    let ka = k * a;
    let e2 = (-2.0 * ka).exp();
    match kind {
        LimitKind::Dirichlet => {
            if ka == 0.0 {
                -1.0 / (2.0 * PI)
            } else {
                // e^{-x} csch x = 2e^{-2x} / (1 - e^{-2x})
                -ka * 2.0 * e2 / (-(-2.0 * ka).exp_m1()) / (2.0 * PI)
            }
        }
        // 1 - tanh x = 2e^{-2x} / (1 + e^{-2x})
        LimitKind::Mixed => ka * 2.0 * e2 / (1.0 + e2) / (2.0 * PI),
    }
}

/// `∫_0^∞` of a [`limit_integrand`].
pub fn limit_energy(kind: LimitKind, a: f64, cfg: &QuadratureConfig) -> Result<EnergyResult> {
    if !(a.is_finite() && a > 0.0) {
        return Err(CombError::InvalidLatticeSpacing(a));
    }
    semi_infinite_energy(|k| Ok(limit_integrand(kind, k, a)), a, 0.0, 1.5 * a, cfg)
}

/// `E(Ω = -1, γ = w0) / (w0 ln w0)` for a pure δ comb, `0 < w0 < 1`.
pub fn small_w0_ratio(w0: f64, a: f64, cfg: &QuadratureConfig) -> Result<(EnergyResult, f64)> {
    if !(w0 > 0.0 && w0 < 1.0) {
        return Err(CombError::InvalidCoupling(format!(
            "w0 = {w0} must lie in (0, 1)"
        )));
    }
    let p = CombParams::new(-1.0, w0, a)?;
    let e = comb_energy(&p, cfg)?;
    Ok((e, e.value / (w0 * w0.ln())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::CombCouplings;
    use approx::assert_abs_diff_eq;

    fn params(omega: f64, gamma: f64, a: f64) -> CombParams {
        CombParams::new(omega, gamma, a).unwrap()
    }

    // Textbook evaluation of F and I from A, B, C with no rearrangement.
    fn naive_f(k: f64, theta: f64, p: &CombParams) -> f64 {
        let (a, g) = (p.a, p.gamma);
        let (sh, ch) = ((k * a).sinh(), (k * a).cosh());
        let big_a = -a * k * g * ch + (-2.0 * a * k * k + g) * sh;
        let big_b = 2.0 * k * ch + g * sh;
        let big_c = 2.0 * k * p.omega;
        big_a / (big_b + big_c * theta.cos()) + a * k - g / (g + 2.0 * k)
    }

    fn naive_i(k: f64, p: &CombParams) -> f64 {
        let (a, g) = (p.a, p.gamma);
        let (sh, ch) = ((k * a).sinh(), (k * a).cosh());
        let big_a = -a * k * g * ch + (-2.0 * a * k * k + g) * sh;
        let big_b = 2.0 * k * ch + g * sh;
        let big_c = 2.0 * k * p.omega;
        (big_a / (big_b * big_b - big_c * big_c).sqrt() + a * k - g / (g + 2.0 * k)) / (2.0 * PI)
    }

    #[test]
    fn abc_at_zero() {
        let r = abc(0.0, &params(0.3, 2.0, 1.0));
        assert_eq!((r.a_k, r.b_k, r.c_k), (0.0, 0.0, 0.0));
    }

    #[test]
    fn abc_mixed_reduction() {
        let (k, a) = (0.7, 1.3);
        let r = abc(k, &params(0.0, 0.0, a));
        assert_abs_diff_eq!(r.a_k, -2.0 * a * k * k * (k * a).sinh(), epsilon = 1e-14);
        assert_abs_diff_eq!(r.b_k, 2.0 * k * (k * a).cosh(), epsilon = 1e-14);
        assert_eq!(r.c_k, 0.0);
    }

    #[test]
    fn abc_unit_values() {
        let r = abc(1.0, &params(0.5, 1.0, 1.0));
        let (ch, sh) = (1f64.cosh(), 1f64.sinh());
        assert_abs_diff_eq!(r.a_k, -ch - sh, epsilon = 1e-15);
        assert_abs_diff_eq!(r.a_k, -std::f64::consts::E, epsilon = 1e-15);
        assert_abs_diff_eq!(r.b_k, 2.0 * ch + sh, epsilon = 1e-15);
        assert_abs_diff_eq!(r.c_k, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn abc_scaled_ratios_continuous() {
        let p = params(-0.4, 3.0, 1.0);
        let below = abc(SCALED_KA * (1.0 - 1e-12), &p);
        let above = abc(SCALED_KA * (1.0 + 1e-12), &p);
        assert!(!below.scaled && above.scaled);
        assert!((below.a_k / below.b_k - above.a_k / above.b_k).abs() < 1e-9);
        assert!((below.c_k / below.b_k - above.c_k / above.b_k).abs() < 1e-12);
        let far = abc(900.0, &p);
        assert!(far.a_k.is_finite() && far.b_k.is_finite());
    }

    #[test]
    fn stable_forms_agree_with_naive() {
        for &(omega, gamma, a) in &[
            (0.3, 2.0, 1.0),
            (-0.9, 0.1, 0.5),
            (0.99, 7.0, 2.0),
            (0.0, 0.0, 1.0),
        ] {
            let p = params(omega, gamma, a);
            for &k in &[0.05, 0.4, 1.0, 3.0, 8.0] {
                assert_abs_diff_eq!(integrand_i(k, &p).unwrap(), naive_i(k, &p), epsilon = 1e-12);
                for &th in &[0.0, 1.0, 2.5] {
                    assert_abs_diff_eq!(
                        integrand_f(k, th, &p).unwrap(),
                        naive_f(k, th, &p),
                        epsilon = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn free_f_closed_form() {
        let p = CombCouplings::free(1.0).unwrap().params();
        for &(k, th) in &[(0.5, 0.3), (2.0, 1.0), (5.0, 3.0)] {
            let expected = k * (1.0 - f64::sinh(k) / (f64::cosh(k) - f64::cos(th)));
            assert_abs_diff_eq!(integrand_f(k, th, &p).unwrap(), expected, epsilon = 1e-13);
        }
    }

    #[test]
    fn f_limit_at_zero() {
        let p = params(0.4, 2.0, 1.0);
        for th in [0.0, 1.0, PI] {
            assert_eq!(integrand_f(0.0, th, &p).unwrap(), -1.0);
            assert_abs_diff_eq!(integrand_f(1e-7, th, &p).unwrap(), -1.0, epsilon = 1e-6);
        }
        let free = CombCouplings::free(1.0).unwrap().params();
        assert_eq!(integrand_f(0.0, 0.0, &free).unwrap(), -2.0);
        assert_abs_diff_eq!(
            integrand_f(1e-6, 0.0, &free).unwrap(),
            -2.0 + 1e-6,
            epsilon = 1e-11
        );
        assert_eq!(integrand_f(0.0, 1.0, &free).unwrap(), 0.0);
    }

    #[test]
    fn f_decays_at_large_k() {
        let p = params(0.5, 1.0, 1.0);
        let f40 = integrand_f(40.0, 0.3, &p).unwrap().abs();
        assert!(f40 < 40.0 * (-40.0f64).exp() * 10.0);
        assert!(integrand_f(800.0, 0.3, &p).unwrap().is_finite());
    }

    #[test]
    fn i_limits() {
        let p = params(0.0, 0.0, 1.3);
        for k in [0.1, 1.0, 4.0] {
            let ka = k * 1.3;
            let expected = -ka * (f64::tanh(ka) - 1.0) / (2.0 * PI);
            assert_abs_diff_eq!(integrand_i(k, &p).unwrap(), expected, epsilon = 1e-14);
            assert_abs_diff_eq!(
                limit_integrand(LimitKind::Mixed, k, 1.3),
                expected,
                epsilon = 1e-14
            );
        }
        let free = CombCouplings::free(2.0).unwrap().params();
        for k in [1e-6, 0.3, 10.0, 300.0] {
            assert!(integrand_i(k, &free).unwrap().abs() < 1e-16);
        }
        assert_abs_diff_eq!(
            integrand_i(0.0, &params(0.2, 1.0, 1.0)).unwrap(),
            -1.0 / (2.0 * PI)
        );
        assert_eq!(integrand_i(0.0, &params(0.2, 0.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn i_approaches_dirichlet_at_large_gamma() {
        let p = params(-1.0, 1e9, 1.0);
        for k in [0.2, 1.0, 3.0] {
            let d = limit_integrand(LimitKind::Dirichlet, k, 1.0);
            assert_abs_diff_eq!(integrand_i(k, &p).unwrap(), d, epsilon = 1e-8);
        }
    }

    #[test]
    fn dirichlet_limit_at_origin() {
        assert_abs_diff_eq!(
            limit_integrand(LimitKind::Dirichlet, 0.0, 1.0),
            -1.0 / (2.0 * PI)
        );
        assert_abs_diff_eq!(
            limit_integrand(LimitKind::Dirichlet, 1e-9, 1.0),
            -1.0 / (2.0 * PI),
            epsilon = 1e-9
        );
        assert!(limit_integrand(LimitKind::Mixed, 50.0, 1.0) < 1e-40);
    }

    #[test]
    fn theta_quadrature_matches_closed_form() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-13,
            ..Default::default()
        };
        for &(omega, gamma, a, k) in &[
            (0.5, 2.0, 1.0, 0.7),
            (-0.95, 0.01, 0.3, 0.05),
            (0.0, 4.0, 2.0, 1.0),
        ] {
            let p = params(omega, gamma, a);
            let numeric = theta_integral_numeric(k, &p, &cfg).unwrap();
            assert_abs_diff_eq!(numeric, integrand_i(k, &p).unwrap(), epsilon = 1e-12);
        }
        let p = params(0.3, 1.0, 1.0);
        assert_abs_diff_eq!(
            theta_integral_numeric(0.0, &p, &cfg).unwrap(),
            -1.0 / (2.0 * PI),
            epsilon = 1e-14
        );
    }

    #[test]
    fn negative_gamma_rejected() {
        let p = params(0.0, -1.0, 1.0);
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            integrand_i(1.0, &p),
            Err(CombError::OutsideValidityDomain { .. })
        ));
        assert!(matches!(
            integrand_f(1.0, 0.0, &p),
            Err(CombError::OutsideValidityDomain { .. })
        ));
        assert!(comb_energy(&p, &cfg).is_err());
    }

    #[test]
    fn validity_margin_positive() {
        for &(omega, gamma) in &[(-1.0, 0.0), (1.0, 0.0), (0.9, 3.0), (-0.3, 0.0)] {
            let p = params(omega, gamma, 1.0);
            for k in [1e-8, 1e-3, 1.0, 30.0, 500.0] {
                assert!(validity_margin(k, &p) > 0.0, "{omega} {gamma} {k}");
            }
        }
    }

    #[test]
    fn mixed_and_dirichlet_constants() {
        let cfg = QuadratureConfig::default();
        let e = comb_energy(&params(0.0, 0.0, 1.0), &cfg).unwrap();
        assert_abs_diff_eq!(e.value, PI / 48.0, epsilon = 1e-9);
        let d = limit_energy(LimitKind::Dirichlet, 2.0, &cfg).unwrap();
        assert_abs_diff_eq!(d.value, -PI / 48.0, epsilon = 1e-9);
        let m = limit_energy(LimitKind::Mixed, 0.5, &cfg).unwrap();
        assert_abs_diff_eq!(m.value, PI / 24.0, epsilon = 1e-9);
    }

    #[test]
    fn free_comb_is_zero() {
        let e = comb_energy(
            &CombCouplings::free(1.0).unwrap().params(),
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!(e.value.abs() < 1e-15);
    }

    #[test]
    fn plate_closed_form_values() {
        assert_abs_diff_eq!(
            quasiperiodic_plate_closed(0.0, 1.0).unwrap(),
            -PI / 6.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            quasiperiodic_plate_closed(PI, 1.0).unwrap(),
            PI / 12.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            quasiperiodic_plate_closed(-PI, 2.0).unwrap(),
            PI / 24.0,
            epsilon = 1e-15
        );
        assert!(quasiperiodic_plate_closed(4.0, 1.0).is_err());
    }

    #[test]
    fn free_plate_energy_periodic_and_antiperiodic() {
        let p = CombCouplings::free(1.0).unwrap().params();
        let cfg = QuadratureConfig::default();
        let e0 = plate_energy_theta(0.0, &p, &cfg).unwrap();
        assert_abs_diff_eq!(e0.value, -PI / 6.0, epsilon = 1e-8);
        let epi = plate_energy_theta(PI, &p, &cfg).unwrap();
        assert_abs_diff_eq!(epi.value, PI / 12.0, epsilon = 1e-8);
    }

    #[test]
    fn small_w0_ratio_domain() {
        let cfg = QuadratureConfig::default();
        assert!(small_w0_ratio(0.0, 1.0, &cfg).is_err());
        assert!(small_w0_ratio(1.5, 1.0, &cfg).is_err());
        let (e, ratio) = small_w0_ratio(1e-3, 1.0, &cfg).unwrap();
        assert!(e.value < 0.0);
        assert!(ratio > 0.0);
    }
}

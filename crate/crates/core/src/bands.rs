//! Secular functions of the comb and band-structure extraction.
//!
//! For a fixed Bloch phase `θ = qa` the comb spectrum is the zero set of a real
//! secular function of `k`. Two sources are provided: the closed δ-δ′ form
//! `g_θ(k) = Ω cos θ + cos(ka) + (γ/2k) sin(ka)` and a generic comb built from
//! any single-cell amplitude provider through the band equation.
//!
//! Sign convention: `θ = qa`. All spectra depend on `cos θ` only.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CombError, Result};
use crate::quadrature::{refine_root, QuadratureConfig};
use crate::scattering::{s_matrix_det, CombCouplings, CombParams, ScatteringAmplitudes};

/// Bloch phase of a quasi-momentum `q` on a lattice of spacing `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochParams {
    pub q: f64,
    pub theta: f64,
    pub a: f64,
}

impl BlochParams {
    pub fn from_theta(theta: f64, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(CombError::InvalidLatticeSpacing(a));
        }
        if !(-PI..=PI).contains(&theta) {
            return Err(CombError::InvalidConfig(format!(
                "theta = {theta} outside [-pi, pi]"
            )));
        }
        Ok(Self {
            q: theta / a,
            theta,
            a,
        })
    }
}

/// Right-hand side of the band equation
/// `cos(qa) = [e^{iak}(t² - r_R r_L) + e^{-iak}] / (2t)`.
pub fn band_rhs(amps: &ScatteringAmplitudes, a: f64) -> Result<f64> {
    let k = amps.k.re;
    if amps.t.norm() == 0.0 {
        return Err(CombError::PerfectReflection { k });
    }
    let phase = Complex64::new(0.0, a * k).exp();
    let rhs = (phase * s_matrix_det(amps) + phase.conj()) / (2.0 * amps.t);
    // The numerator is O(1) and loses absolute accuracy eps; dividing by a
    // small |t| amplifies that roundoff.
    let roundoff = 64.0 * f64::EPSILON / amps.t.norm();
    if rhs.im.abs() > (1e-10 * rhs.re.abs().max(1.0)).max(roundoff) {
        return Err(CombError::NonRealBandFunction { k, imag: rhs.im });
    }
    Ok(rhs.re)
}

/// `g_θ(k)` of the δ-δ′ comb; `k = 0` returns the limit `Ω cos θ + 1 + γa/2`.
pub fn spectral_g(p: &CombParams, k: f64, theta: f64) -> f64 {
    let a = p.a;
    let cos_theta = theta.abs().cos();
    if k == 0.0 {
        return p.omega * cos_theta + 1.0 + 0.5 * p.gamma * a;
    }
    let ka = k * a;
    p.omega * cos_theta + ka.cos() + 0.5 * p.gamma * ka.sin() / k
}

/// `f_θ(k) = 2t cos θ - (e^{-ika} + e^{ika}(t² - r_R r_L))`.
///
/// For the δ-δ′ potential this equals `g_θ(k)` times `-4k(1+w1²)/D` with
/// `D = 2k(w1²+1) + i w0`, the denominator of the amplitudes. The prefactor
/// is removed in [`spectral_g`] so that the function stays finite and nonzero
/// as `k → 0`.
pub fn spectral_f_general(amps: &ScatteringAmplitudes, a: f64, theta: f64) -> Complex64 {
    let phase = Complex64::new(0.0, a * amps.k.re).exp();
    2.0 * amps.t * theta.abs().cos() - (phase.conj() + phase * s_matrix_det(amps))
}

/// A real function of `k` whose zeros at fixed `θ` are the comb spectrum.
pub trait SecularFunction {
    fn lattice_spacing(&self) -> f64;

    fn eval(&self, k: f64, theta: f64) -> Result<f64>;

    /// Value as `k → 0⁺`, when known in closed form.
    fn limit_at_zero(&self, _theta: f64) -> Option<f64> {
        None
    }

    /// Typical magnitude, used to decide when a sample is numerically zero.
    fn magnitude(&self) -> f64 {
        2.0
    }
}

/// The δ-δ′ comb through its closed spectral function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPrimeComb {
    pub params: CombParams,
}

impl DeltaPrimeComb {
    pub fn new(c: &CombCouplings) -> Self {
        Self { params: c.params() }
    }

    pub fn from_params(params: CombParams) -> Self {
        Self { params }
    }
}

impl SecularFunction for DeltaPrimeComb {
    fn lattice_spacing(&self) -> f64 {
        self.params.a
    }

    fn eval(&self, k: f64, theta: f64) -> Result<f64> {
        Ok(spectral_g(&self.params, k, theta))
    }

    fn limit_at_zero(&self, theta: f64) -> Option<f64> {
        let p = &self.params;
        // Ω cos θ + 1 + γa/2, with 1 + Ω cos θ formed without cancellation.
        Some(p.one_plus_omega_cos(theta) + 0.5 * p.gamma * p.a)
    }

    fn magnitude(&self) -> f64 {
        let p = &self.params;
        1.0 + p.omega.abs() + 0.5 * p.gamma.abs() * p.a
    }
}

/// A comb of any compactly supported potential, given its amplitudes at real `k`.
///
/// The secular function is `cos θ - band_rhs(k)`.
pub struct GeneralComb<F> {
    pub amplitudes: F,
    pub a: f64,
}

impl<F> GeneralComb<F>
where
    F: Fn(f64) -> Result<ScatteringAmplitudes>,
{
    pub fn new(amplitudes: F, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(CombError::InvalidLatticeSpacing(a));
        }
        Ok(Self { amplitudes, a })
    }
}

impl<F> SecularFunction for GeneralComb<F>
where
    F: Fn(f64) -> Result<ScatteringAmplitudes>,
{
    fn lattice_spacing(&self) -> f64 {
        self.a
    }

    fn eval(&self, k: f64, theta: f64) -> Result<f64> {
        let amps = (self.amplitudes)(k)?;
        Ok(theta.abs().cos() - band_rhs(&amps, self.a)?)
    }
}

/// First sample of the root scan, in units of `1/a`.
const SCAN_START: f64 = 1e-9;
/// Scan step, in units of `π/a`.
const SCAN_STEP: f64 = 0.125;

/// The first `n_bands` momenta `k_n(θ)` in increasing order.
///
/// Simple roots are bracketed on a grid of step `π/(8a)` and bisected.
/// Tangential (double) roots and pairs of roots closer than one step are
/// found by examining local minima of `|f|`; a double root is reported
/// twice. A zero mode `k = 0` is reported when the secular function
/// vanishes in the `k → 0` limit.
pub fn dispersion<S: SecularFunction + ?Sized>(
    source: &S,
    theta: f64,
    n_bands: usize,
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>> {
    if n_bands < 1 {
        return Err(CombError::InvalidConfig("n_bands must be >= 1".into()));
    }
    cfg.validate()?;
    let a = source.lattice_spacing();
    let zero_tol = 64.0 * f64::EPSILON * source.magnitude();
    let f = |k: f64| source.eval(k, theta);

    let mut roots: Vec<f64> = Vec::with_capacity(n_bands + 1);
    let zero_mode = source
        .limit_at_zero(theta)
        .map(|v| v.abs() <= zero_tol)
        .unwrap_or(false);
    if zero_mode {
        roots.push(0.0);
    }

    let step = SCAN_STEP * PI / a;
    let start = SCAN_START / a;
    let max_steps = 8 * (n_bands + 4) * 8;
    let grid = |i: usize| start + i as f64 * step;

    let mut ks = vec![grid(0), grid(1)];
    let mut fs = vec![f(ks[0])?, f(ks[1])?];
    // The first sample belongs to the zero mode if there is one.
    let mut skip_until = if zero_mode || fs[0].abs() <= zero_tol {
        if !zero_mode {
            roots.push(0.0);
        }
        1
    } else {
        0
    };

    let mut i = 1;
    while roots.len() < n_bands {
        if i >= max_steps {
            return Err(CombError::RootNotBracketed {
                lo: start,
                hi: grid(i),
                found: roots.len(),
                wanted: n_bands,
            });
        }
        ks.push(grid(i + 1));
        fs.push(f(ks[i + 1])?);
        let (k0, k1, k2) = (ks[i - 1], ks[i], ks[i + 1]);
        let (f0, f1, f2) = (fs[i - 1], fs[i], fs[i + 1]);
        let class = |v: f64| {
            if v.abs() <= zero_tol {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            }
        };
        let (s0, s1, s2) = (class(f0), class(f1), class(f2));

        if i > skip_until {
            if s1 == 0 {
                if s0 * s2 < 0 {
                    roots.push(refine_root(|k| f(k).unwrap_or(f64::NAN), k0, k2, cfg)?);
                } else if s0 == s2 && s0 != 0 {
                    roots.extend(dip_roots(&f, k0, k2, s0 as f64, zero_tol, cfg)?);
                } else {
                    return Err(CombError::InvalidConfig(format!(
                        "secular function vanishes identically near k = {k1}"
                    )));
                }
                skip_until = i + 1;
            } else if s0 != 0 && s0 * s1 < 0 {
                if let Some(r) = bracketed_root(&f, k0, k1, f0, f1, cfg)? {
                    roots.push(r);
                }
            } else if s0 == s1 && s1 == s2 && s0 != 0 && f1.abs() < f0.abs() && f1.abs() < f2.abs()
            {
                roots.extend(dip_roots(&f, k0, k2, s0 as f64, zero_tol, cfg)?);
            }
        }
        i += 1;
    }
    roots.sort_by(f64::total_cmp);
    roots.truncate(n_bands);
    Ok(roots)
}

/// Roots hidden in a local minimum of `sign * f` on `[lo, hi]`, where the
/// samples at both ends share the sign `sign`: none, one double root, or two
/// simple roots closer than the scan step.
fn dip_roots<F>(
    f: &F,
    lo: f64,
    hi: f64,
    sign: f64,
    zero_tol: f64,
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let k_min = locate_extremum(f, lo, hi, sign, cfg)?;
    let f_min = f(k_min)?;
    if f_min * sign < 0.0 && f_min.abs() > zero_tol {
        Ok(vec![
            refine_root(|k| f(k).unwrap_or(f64::NAN), lo, k_min, cfg)?,
            refine_root(|k| f(k).unwrap_or(f64::NAN), k_min, hi, cfg)?,
        ])
    } else if f_min.abs() <= zero_tol {
        Ok(vec![k_min, k_min])
    } else {
        Ok(Vec::new())
    }
}

fn bracketed_root<F>(
    f: &F,
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    cfg: &QuadratureConfig,
) -> Result<Option<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let root = refine_root(|k| f(k).unwrap_or(f64::NAN), lo, hi, cfg)?;
    // A sign change through a pole shows up as growth of |f| at the "root".
    let f_root = f(root)?;
    if f_root.abs() > f_lo.abs().max(f_hi.abs()) {
        return Ok(None);
    }
    Ok(Some(root))
}

/// Location of the minimum of `sign * f` on `[lo, hi]`: golden section to a
/// narrow bracket, then bisection on a central-difference derivative.
fn locate_extremum<F>(f: &F, lo: f64, hi: f64, sign: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let g = |k: f64| -> Result<f64> { Ok(sign * f(k)?) };
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let (mut l, mut r) = (lo, hi);
    let mut x1 = r - ratio * (r - l);
    let mut x2 = l + ratio * (r - l);
    let mut g1 = g(x1)?;
    let mut g2 = g(x2)?;
    let narrow = 1e-6 * (hi - lo);
    while r - l > narrow {
        if g1 <= g2 {
            r = x2;
            x2 = x1;
            g2 = g1;
            x1 = r - ratio * (r - l);
            g1 = g(x1)?;
        } else {
            l = x1;
            x1 = x2;
            g1 = g2;
            x2 = l + ratio * (r - l);
            g2 = g(x2)?;
        }
    }
    let h = (r - l).max(1e-12 * hi.abs());
    let slope = |k: f64| -> f64 {
        match (g(k + h), g(k - h)) {
            (Ok(p), Ok(m)) => (p - m) / (2.0 * h),
            _ => f64::NAN,
        }
    };
    let (sl, sr) = (slope(l), slope(r));
    if sl < 0.0 && sr > 0.0 {
        return refine_root(slope, l, r, cfg);
    }
    Ok(0.5 * (l + r))
}

/// Allowed band `n` as a `k` interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandEdges {
    pub index: usize,
    pub k_min: f64,
    pub k_max: f64,
}

impl BandEdges {
    pub fn width(&self) -> f64 {
        self.k_max - self.k_min
    }
}

/// Band edges from the periodic (`θ = 0`) and antiperiodic (`θ = π`) spectra.
///
/// Each band holds exactly one root of each, counted with multiplicity, so
/// band `n` spans the `n`-th periodic and the `n`-th antiperiodic root.
pub fn band_edges<S: SecularFunction + ?Sized>(
    source: &S,
    n_bands: usize,
    cfg: &QuadratureConfig,
) -> Result<Vec<BandEdges>> {
    let periodic = dispersion(source, 0.0, n_bands, cfg)?;
    let antiperiodic = dispersion(source, PI, n_bands, cfg)?;
    Ok(periodic
        .iter()
        .zip(&antiperiodic)
        .enumerate()
        .map(|(index, (&p, &ap))| BandEdges {
            index,
            k_min: p.min(ap),
            k_max: p.max(ap),
        })
        .collect())
}

/// One `(q, k)` point of a band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandSample {
    pub theta: f64,
    pub q: f64,
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub index: usize,
    pub k_min: f64,
    pub k_max: f64,
    pub samples: Vec<BandSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandStructure {
    pub a: f64,
    pub bands: Vec<Band>,
}

/// Uniform closed grid of `count` phases on `[-π, π]`.
pub fn theta_grid(count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(CombError::InvalidConfig(
            "theta grid needs at least two points".into(),
        ));
    }
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                PI
            } else {
                -PI + 2.0 * PI * i as f64 / (count - 1) as f64
            }
        })
        .collect())
}

/// Dispersion of the first `n_bands` bands over a `θ` grid, plus band edges.
pub fn band_structure<S: SecularFunction + ?Sized>(
    source: &S,
    n_bands: usize,
    theta_points: usize,
    cfg: &QuadratureConfig,
) -> Result<BandStructure> {
    let a = source.lattice_spacing();
    let thetas = theta_grid(theta_points)?;
    let edges = band_edges(source, n_bands, cfg)?;
    let mut bands: Vec<Band> = edges
        .iter()
        .map(|e| Band {
            index: e.index,
            k_min: e.k_min,
            k_max: e.k_max,
            samples: Vec::with_capacity(thetas.len()),
        })
        .collect();
    for &theta in &thetas {
        let ks = dispersion(source, theta, n_bands, cfg)?;
        for (band, k) in bands.iter_mut().zip(ks) {
            band.samples.push(BandSample {
                theta,
                q: theta / a,
                k,
            });
        }
    }
    Ok(BandStructure { a, bands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{delta_amplitudes, delta_prime_amplitudes};
    use approx::assert_abs_diff_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn comb(w0: f64, w1: f64, a: f64) -> DeltaPrimeComb {
        DeltaPrimeComb::new(&CombCouplings::new(w0, w1, a).unwrap())
    }

    #[test]
    fn free_band_rhs_is_cos() {
        for k in [0.3, 1.0, 4.2] {
            let amps = ScatteringAmplitudes::free(Complex64::new(k, 0.0));
            assert_abs_diff_eq!(
                band_rhs(&amps, 1.3).unwrap(),
                (1.3 * k).cos(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn delta_band_rhs_is_kronig_penney() {
        let (w0, a) = (3.0, 0.7);
        for k in [0.2, 1.0, 2.5, 9.0] {
            let amps = delta_amplitudes(w0, Complex64::new(k, 0.0)).unwrap();
            let kp = (k * a).cos() + w0 / (2.0 * k) * (k * a).sin();
            assert_abs_diff_eq!(band_rhs(&amps, a).unwrap(), kp, epsilon = 1e-12);
        }
    }

    #[test]
    fn delta_prime_band_rhs_matches_g() {
        let c = CombCouplings::new(2.0, 0.6, 1.1).unwrap();
        let p = c.params();
        for k in [0.1, 0.9, 3.3, 12.0] {
            let amps = delta_prime_amplitudes(&c, Complex64::new(k, 0.0)).unwrap();
            let expected = -((k * p.a).cos() + p.gamma / (2.0 * k) * (k * p.a).sin()) / p.omega;
            assert_abs_diff_eq!(band_rhs(&amps, p.a).unwrap(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn perfect_reflection_is_an_error() {
        let c = CombCouplings::new(2.0, 1.0, 1.0).unwrap();
        let amps = delta_prime_amplitudes(&c, Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            band_rhs(&amps, 1.0),
            Err(CombError::PerfectReflection { .. })
        ));
    }

    #[test]
    fn g_special_values() {
        let free = CombCouplings::free(1.0).unwrap().params();
        assert_eq!(spectral_g(&free, 0.0, 0.0), 0.0);
        let p = CombParams::new(-1.0, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(spectral_g(&p, 0.0, 0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(spectral_g(&p, 1e-8, 0.0), 1.0, epsilon = 1e-12);
        let mixed = CombParams::new(0.0, 0.0, 1.0).unwrap();
        for th in [0.0, 1.0, PI] {
            assert_abs_diff_eq!(spectral_g(&mixed, 2.0, th), 2f64.cos(), epsilon = 1e-15);
            assert_abs_diff_eq!(spectral_g(&mixed, 1.5 * PI, th), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn f_general_free_case() {
        let amps = ScatteringAmplitudes::free(Complex64::new(1.7, 0.0));
        let f = spectral_f_general(&amps, 1.0, 0.4);
        assert_abs_diff_eq!(f.re, 2.0 * (0.4f64.cos() - 1.7f64.cos()), epsilon = 1e-15);
        assert_abs_diff_eq!(f.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn f_general_is_g_times_prefactor() {
        let c = CombCouplings::new(1.3, -0.4, 0.8).unwrap();
        let p = c.params();
        for (k, th) in [(0.5, 0.3), (2.0, 2.0), (7.5, -1.1)] {
            let kc = Complex64::new(k, 0.0);
            let amps = delta_prime_amplitudes(&c, kc).unwrap();
            let f = spectral_f_general(&amps, p.a, th);
            let s = 1.0 + c.w1 * c.w1;
            let den = 2.0 * kc * s + Complex64::i() * c.w0;
            let expected = -4.0 * k * s / den * spectral_g(&p, k, th);
            assert!((f - expected).norm() < 1e-12, "k={k}: {f} vs {expected}");
        }
    }

    #[test]
    fn free_dispersion_at_quarter_phase() {
        let roots = dispersion(&comb(0.0, 0.0, 1.0), PI / 2.0, 4, &cfg()).unwrap();
        for (n, r) in roots.iter().enumerate() {
            assert_abs_diff_eq!(*r, (n as f64 + 0.5) * PI, epsilon = 1e-11);
        }
    }

    #[test]
    fn free_dispersion_at_zero_phase_has_zero_mode_and_double_roots() {
        let roots = dispersion(&comb(0.0, 0.0, 1.0), 0.0, 5, &cfg()).unwrap();
        let expected = [0.0, 2.0 * PI, 2.0 * PI, 4.0 * PI, 4.0 * PI];
        for (r, e) in roots.iter().zip(expected) {
            assert_abs_diff_eq!(*r, e, epsilon = 1e-8);
        }
    }

    #[test]
    fn free_bands_touch() {
        let edges = band_edges(&comb(0.0, 0.0, 2.0), 4, &cfg()).unwrap();
        for e in &edges {
            let n = e.index as f64;
            assert_abs_diff_eq!(e.k_min, n * PI / 2.0, epsilon = 1e-8);
            assert_abs_diff_eq!(e.k_max, (n + 1.0) * PI / 2.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn mixed_bands_are_flat() {
        let source = DeltaPrimeComb::from_params(CombParams::new(0.0, 0.0, 1.0).unwrap());
        let edges = band_edges(&source, 3, &cfg()).unwrap();
        for e in &edges {
            assert_abs_diff_eq!(e.k_min, (e.index as f64 + 0.5) * PI, epsilon = 1e-11);
            assert!(e.width() < 1e-11);
        }
    }

    #[test]
    fn kronig_penney_first_root() {
        // cos k + (5/k) sin k = 1: oracle is a fine scan plus bisection.
        let h = |k: f64| k.cos() + 5.0 * k.sin() / k - 1.0;
        let mut lo = 1e-3;
        while h(lo) * h(lo + 1e-4) > 0.0 {
            lo += 1e-4;
        }
        let (mut l, mut r) = (lo, lo + 1e-4);
        for _ in 0..100 {
            let m = 0.5 * (l + r);
            if h(l) * h(m) <= 0.0 {
                r = m;
            } else {
                l = m;
            }
        }
        let roots = dispersion(&comb(10.0, 0.0, 1.0), 0.0, 1, &cfg()).unwrap();
        assert_abs_diff_eq!(roots[0], 0.5 * (l + r), epsilon = 1e-11);
    }

    #[test]
    fn dirichlet_limit_pins_roots() {
        let roots = dispersion(&comb(1e8, 0.0, 1.0), 1.0, 4, &cfg()).unwrap();
        for (n, r) in roots.iter().enumerate() {
            let target = (n + 1) as f64 * PI;
            assert!(((r - target) / target).abs() < 1e-6);
        }
    }

    #[test]
    fn close_root_pair_inside_one_step() {
        // Weak coupling splits the free double root at 2π into two roots
        // much closer than the scan step.
        let roots = dispersion(&comb(1e-4, 0.0, 1.0), 0.0, 3, &cfg()).unwrap();
        assert!(roots[1] < roots[2]);
        assert!((roots[1] - 2.0 * PI).abs() < 1e-3);
        assert!((roots[2] - 2.0 * PI).abs() < 1e-3);
        let p = CombCouplings::new(1e-4, 0.0, 1.0).unwrap().params();
        for r in &roots {
            assert!(spectral_g(&p, *r, 0.0).abs() < 1e-12);
        }
    }

    #[test]
    fn general_comb_matches_closed_form() {
        let c = CombCouplings::new(2.5, 0.3, 1.0).unwrap();
        let general = GeneralComb::new(
            |k: f64| delta_prime_amplitudes(&c, Complex64::new(k, 0.0)),
            1.0,
        )
        .unwrap();
        let closed = DeltaPrimeComb::new(&c);
        for th in [0.3, 1.2, 2.9] {
            let a = dispersion(&general, th, 5, &cfg()).unwrap();
            let b = dispersion(&closed, th, 5, &cfg()).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn rejects_zero_bands() {
        assert!(dispersion(&comb(1.0, 0.0, 1.0), 0.0, 0, &cfg()).is_err());
    }

    #[test]
    fn theta_grid_is_closed() {
        let g = theta_grid(101).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], -PI);
        assert_eq!(g[100], PI);
        assert_abs_diff_eq!(g[50], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn band_structure_has_all_samples() {
        let bs = band_structure(&comb(3.0, 0.2, 1.0), 3, 21, &cfg()).unwrap();
        assert_eq!(bs.bands.len(), 3);
        for b in &bs.bands {
            assert_eq!(b.samples.len(), 21);
            for s in &b.samples {
                assert!(s.k >= b.k_min - 1e-9 && s.k <= b.k_max + 1e-9);
            }
        }
    }
}

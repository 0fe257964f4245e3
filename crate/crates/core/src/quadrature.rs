//! Adaptive Gauss-Kronrod quadrature, semi-infinite integrals with an
//! exponential tail bound, and bracketed bisection.
//!
//! Every kernel is deterministic: the subdivision order depends only on the
//! integrand values, and the final sum is taken over intervals sorted by
//! their left endpoint.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{CombError, Result};

/// Tolerances and limits shared by every integral and root search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Upper cutoff for semi-infinite integrals. `None` selects `max(40/a, 40)`.
    pub truncation_k: Option<f64>,
    /// Relative bracket width at which bisection stops.
    pub root_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
            truncation_k: None,
            root_tol: 1e-12,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.abs_tol) || !positive(self.rel_tol) || !positive(self.root_tol) {
            return Err(CombError::InvalidConfig(format!(
                "tolerances must be finite and > 0 (abs_tol={}, rel_tol={}, root_tol={})",
                self.abs_tol, self.rel_tol, self.root_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(CombError::InvalidConfig(
                "max_subdivisions must be >= 1".into(),
            ));
        }
        if let Some(k) = self.truncation_k {
            if !positive(k) {
                return Err(CombError::InvalidConfig(format!(
                    "truncation_k must be finite and > 0, got {k}"
                )));
            }
        }
        Ok(())
    }

    /// Cutoff used for a lattice of spacing `a`.
    pub fn truncation_for(&self, a: f64) -> f64 {
        self.truncation_k.unwrap_or_else(|| (40.0 / a).max(40.0))
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value of a finite integral and its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integral {
    pub value: f64,
    pub abs_err: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

/// Envelope `|f(x)| <= amplitude * exp(-rate * (x - anchor))` valid beyond the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEnvelope {
    pub amplitude: f64,
    pub rate: f64,
    pub anchor: f64,
}

impl TailEnvelope {
    /// `M e^{-rate x}`, i.e. anchored at zero.
    pub fn new(amplitude: f64, rate: f64) -> Self {
        Self {
            amplitude,
            rate,
            anchor: 0.0,
        }
    }

    /// Bound on `∫_cutoff^∞ |f|`.
    pub fn tail_bound(&self, cutoff: f64) -> f64 {
        if self.amplitude == 0.0 {
            return 0.0;
        }
        self.amplitude * (-self.rate * (cutoff - self.anchor)).exp() / self.rate
    }

    /// Fits the smallest amplitude (times a safety factor of 2) such that the
    /// envelope anchored at `hi` dominates the samples of `f` on `[lo, hi]`.
    pub fn fit<F>(mut f: F, lo: f64, hi: f64, rate: f64) -> Self
    where
        F: FnMut(f64) -> f64,
    {
        const SAMPLES: usize = 16;
        let mut amplitude: f64 = 0.0;
        for i in 0..=SAMPLES {
            let x = lo + (hi - lo) * i as f64 / SAMPLES as f64;
            let fx = f(x).abs();
            if fx.is_finite() {
                amplitude = amplitude.max(fx * (rate * (x - hi)).exp());
            }
        }
        Self {
            amplitude: 2.0 * amplitude,
            rate,
            anchor: hi,
        }
    }
}

/// Result of a semi-infinite integral truncated at `truncation`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiInfiniteIntegral {
    /// Integral over `[lo, truncation]`; the tail is not included.
    pub value: f64,
    pub abs_err: f64,
    pub truncation: f64,
    pub tail_bound: f64,
    pub evaluations: usize,
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    // Rounding floor for integrands whose Gauss/Kronrod difference cancels exactly.
    let err = err.max(50.0 * f64::EPSILON * value.abs());
    Segment { lo, hi, value, err }
}

/// Adaptive integral of `f` over `[lo, hi]`, splitting the worst interval first.
///
/// The error estimate of each panel is the full Gauss/Kronrod difference,
/// which overestimates the error of the Kronrod value for smooth integrands.
pub fn integrate_finite<F>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    integrate_with_breakpoints(f, &[lo, hi], cfg)
}

/// Like [`integrate_finite`] but seeds the subdivision with the panels between
/// consecutive `points` (which must be strictly increasing).
pub fn integrate_with_breakpoints<F>(
    mut f: F,
    points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    cfg.validate()?;
    if points.len() < 2 {
        return Err(CombError::InvalidConfig(
            "at least two integration points are required".into(),
        ));
    }
    for w in points.windows(2) {
        if !(w[0].is_finite() && w[1].is_finite() && w[0] < w[1]) {
            return Err(CombError::InvalidInterval { lo: w[0], hi: w[1] });
        }
    }

    let mut heap: BinaryHeap<Segment> = points
        .windows(2)
        .map(|w| gk15(&mut f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * heap.len();
    let mut subdivisions = heap.len();

    let (mut value, mut err) = totals(&heap);
    loop {
        if !value.is_finite() || !err.is_finite() {
            return Err(CombError::ToleranceNotMet {
                value,
                abs_err: err,
                requested: cfg.abs_tol,
            });
        }
        if err <= cfg.target(value) {
            // Running sums drift; confirm with a fresh ordered sum.
            let (v, e) = totals(&heap);
            if e <= cfg.target(v) {
                return Ok(Integral {
                    value: v,
                    abs_err: e,
                    evaluations,
                    subdivisions,
                });
            }
            value = v;
            err = e;
        }
        if subdivisions >= cfg.max_subdivisions {
            let (v, e) = totals(&heap);
            return Err(CombError::ToleranceNotMet {
                value: v,
                abs_err: e,
                requested: cfg.target(v),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Interval at machine resolution; nothing left to split.
            heap.push(worst);
            let (v, e) = totals(&heap);
            return Err(CombError::ToleranceNotMet {
                value: v,
                abs_err: e,
                requested: cfg.target(v),
            });
        }
        let left = gk15(&mut f, worst.lo, mid);
        let right = gk15(&mut f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        evaluations += 30;
        subdivisions += 1;
        if subdivisions.is_multiple_of(64) {
            (value, err) = totals(&heap);
        }
    }
}

fn totals(heap: &BinaryHeap<Segment>) -> (f64, f64) {
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    segs.iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.err))
}

/// Integral over `[lo, truncation]` plus a bound on the discarded tail.
pub fn integrate_semi_infinite<F>(
    f: F,
    lo: f64,
    truncation: f64,
    cfg: &QuadratureConfig,
    envelope: TailEnvelope,
) -> Result<SemiInfiniteIntegral>
where
    F: FnMut(f64) -> f64,
{
    integrate_semi_infinite_with_breakpoints(f, &[lo], truncation, cfg, envelope)
}

/// Semi-infinite variant of [`integrate_with_breakpoints`]; `points` are the
/// lower limit followed by interior breakpoints, the cutoff is appended.
pub fn integrate_semi_infinite_with_breakpoints<F>(
    f: F,
    points: &[f64],
    truncation: f64,
    cfg: &QuadratureConfig,
    envelope: TailEnvelope,
) -> Result<SemiInfiniteIntegral>
where
    F: FnMut(f64) -> f64,
{
    if !(envelope.rate > 0.0) || !(envelope.amplitude >= 0.0) {
        return Err(CombError::InvalidConfig(format!(
            "tail envelope needs rate > 0 and amplitude >= 0, got {envelope:?}"
        )));
    }
    let mut all: Vec<f64> = points.iter().copied().filter(|&p| p < truncation).collect();
    if all.is_empty() {
        return Err(CombError::InvalidInterval {
            lo: points.first().copied().unwrap_or(f64::NAN),
            hi: truncation,
        });
    }
    all.push(truncation);
    let integral = integrate_with_breakpoints(f, &all, cfg)?;
    Ok(SemiInfiniteIntegral {
        value: integral.value,
        abs_err: integral.abs_err,
        truncation,
        tail_bound: envelope.tail_bound(truncation),
        evaluations: integral.evaluations,
    })
}

/// Bisection on a sign-changing bracket.
///
/// Stops when the bracket is narrower than `root_tol * |root|` (or an absolute
/// `root_tol` near zero) or when `f` is exactly zero at the midpoint.
pub fn refine_root<F>(mut f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(CombError::NoSignChange { lo, hi });
    }
    for _ in 0..256 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= cfg.root_tol * mid.abs().max(cfg.root_tol) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

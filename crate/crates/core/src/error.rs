use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, CombError>;

/// Errors raised by the comb numerics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CombError {
    #[error("invalid lattice spacing a = {0} (must be finite and > 0)")]
    InvalidLatticeSpacing(f64),

    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),

    #[error("scattering amplitude has a pole at k = {k} (bound-state momentum)")]
    PoleOfAmplitude { k: Complex64 },

    #[error("transmission vanishes at k = {k}: perfectly reflecting potential")]
    PerfectReflection { k: f64 },

    #[error("band function is not real at k = {k} (imaginary part {imag:e})")]
    NonRealBandFunction { k: f64, imag: f64 },

    #[error("only {found} of {wanted} roots bracketed while scanning k in [{lo}, {hi}]")]
    RootNotBracketed {
        lo: f64,
        hi: f64,
        found: usize,
        wanted: usize,
    },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("gamma = {gamma} is outside the supported domain gamma >= 0")]
    OutsideValidityDomain { gamma: f64 },

    #[error("B^2 - C^2 = {margin:e} is not positive at k = {k}")]
    ValidityViolation { k: f64, margin: f64 },

    #[error("quadrature tolerance not met: estimated error {abs_err:e} > requested {requested:e}")]
    ToleranceNotMet {
        value: f64,
        abs_err: f64,
        requested: f64,
    },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl CombError {
    /// True for failures of a numerical tolerance, as opposed to bad input.
    pub fn is_tolerance_failure(&self) -> bool {
        matches!(
            self,
            CombError::ToleranceNotMet { .. } | CombError::RootNotBracketed { .. }
        )
    }
}

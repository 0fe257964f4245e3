//! Band structures and regularized vacuum energies of one-dimensional combs
//! of δ-δ′ point potentials.
//!
//! * [`scattering`]: amplitudes of one point potential on the line.
//! * [`bands`]: secular functions, dispersion relations and band edges.
//! * [`energy`]: vacuum-energy integrands, the energy per unit cell and its limits.
//! * [`quadrature`]: adaptive Gauss-Kronrod integration and bisection.
//! * [`verify`]: the numerical self-checks behind `diraccomb verify`.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bands;
pub mod energy;
pub mod error;
pub mod quadrature;
pub mod scattering;
pub mod verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use bands::{
    band_edges, band_rhs, band_structure, dispersion, spectral_f_general, spectral_g, BandEdges,
    BandStructure, DeltaPrimeComb, GeneralComb, SecularFunction,
};
pub use energy::{
    comb_energy, integrand_f, integrand_i, limit_energy, plate_energy_theta,
    quasiperiodic_plate_closed, small_w0_ratio, theta_integral_numeric, EnergyResult, LimitKind,
};
pub use error::{CombError, Result};
pub use quadrature::QuadratureConfig;
pub use scattering::{
    delta_amplitudes, delta_prime_amplitudes, derive_couplings, s_matrix_det, CombCouplings,
    CombParams, ScatteringAmplitudes,
};

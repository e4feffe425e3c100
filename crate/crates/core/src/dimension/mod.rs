//! Hausdorff dimension of sets of continued fractions: cover-sum exponents,
//! transfer operators, digit growth sequences and mass distributions.

mod alphabet;
mod crude;
mod frostman;
mod growth;
mod transfer;
mod zeta;

pub use alphabet::{DigitAlphabet, DEFAULT_TRUNCATION_SPAN};
pub use crude::{crude_bracket, crude_critical_exponent};
pub use frostman::{
    default_radii, frostman_sampler, CylinderMeasure, FrostmanReport, FrostmanRow, SAMPLE_DEPTH,
};
pub use growth::{
    jarnik_dimension, omega_from_theta, rho_from_omega, seq_omega_rho, theta_from_omega, Generator,
    GrowthSequence, OmegaRho,
};
pub use transfer::{
    good_dimension_sweep, good_dimension_sweep_with_span, transfer_dimension, ulam_dimension, Collocation,
    DimensionEstimate, SweepRow, Ulam, MAX_POWER_ITERATIONS, POWER_TOL,
};
pub use zeta::{hurwitz_zeta, riemann_zeta};

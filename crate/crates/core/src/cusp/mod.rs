//! Continued fractions, Ford circles and cusp excursions of geodesic rays
//! for the modular group.

mod cf;
mod ford;
mod trace;

pub use cf::{cf_expand, cf_expand_rational, convergents, ContinuedFraction, Convergent};
pub use ford::{ford_circle, ford_circle_at_infinity};
pub use trace::{
    excursion_trace, gap_bound_estimate, good_membership, jarnik_ratios, ratio_to_theta, theta_to_ratio,
    Excursion, ExcursionTrace, GoodVerdict, JarnikRatios,
};

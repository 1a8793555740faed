//! Continued fractions, irrationality exponents and finite-stage
//! approximations of Diophantine limsup sets.

mod arith;
pub(crate) mod cf;
mod jarnik;
mod limsup;

pub use arith::{gcd, totient, totient_sieve};
pub use cf::{
    constrained_best_approximations, constrained_best_approximations_at, continued_fraction, continued_fraction_dd,
    irrationality_exponent_estimate, Approximation, ContinuedFraction, Convergent, ExponentEstimate, Termination,
};
pub use jarnik::{jarnik_box_dimension, jarnik_count, JarnikEstimate};
pub use limsup::{
    duffin_schaeffer_partial_sums, limsup_union, Divergence, DuffinSchaefferReport, IntervalUnion, LimsupSetSpec,
    Radius,
};

//! Local regularity: oscillation-based Hölder exponents, scaling at
//! rationals, exponents predicted from Diophantine data and the
//! coarse-grained spectrum of singularities.

mod pointwise;
mod predict;
mod scaling;
mod spectrum;

pub use pointwise::{
    holder_exponent_estimate, oscillation, oscillation_signal, pointwise_exponent, HolderEstimate, ALPHA_MAX,
    RESIDUAL_FLAG,
};
pub use predict::{predicted_exponent, Prediction};
pub use scaling::{rational_scaling_fit, ScalingFit};
pub use spectrum::{
    spectrum_estimate, spectrum_from_sampler, AlphaBins, BoxSampler, RiemannBoxes, SpectrumTable, WeierstrassBoxes,
};

//! Intermittency diagnostics: high-pass flatness, structure functions and
//! the Legendre-transform consistency check.

mod flatness;
mod formalism;
mod structure;

pub use flatness::{
    band_coefficients, flatness, flatness_curve, highpass_l2, highpass_l2_at, FlatnessCurve, FlatnessMethod,
    FlatnessValue,
};
pub use formalism::{frisch_parisi_check, legendre, FpReport, FpRow};
pub use structure::{structure_function_exponents, StructureFunctionTable};

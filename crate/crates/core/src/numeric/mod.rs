//! Floating-point helpers shared by the evaluators and estimators.

pub mod dd;
pub mod fit;
pub mod sum;

pub use dd::DoubleDouble;
pub use fit::{fit_line, LineFit};
pub use sum::{par_sum, CompensatedSum, ComplexSum};

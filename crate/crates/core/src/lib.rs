//! Numerical laboratory for Riemann-type non-differentiable functions.
//!
//! The crate evaluates the generalised Riemann sums
//! `R_{x0}(t) = Σ_{n≠0} e^{2πi(n²t + n x0)} / n²`, their `2π`-periodic
//! variants, and the Weierstrass function, then measures their local
//! regularity: pointwise Hölder exponents, the coarse-grained spectrum of
//! singularities, flatness and structure-function scaling. Supporting
//! machinery covers continued fractions, Diophantine limsup sets and a
//! parallel-transport frame integrator.
//!
//! ```
//! use riemann_lab::exp_sums::eval_r;
//!
//! let v = eval_r(0.0, 0.0, 1000).unwrap();
//! assert!((v.re - std::f64::consts::PI.powi(2) / 3.0).abs() < 2e-3);
//! ```

pub mod binormal;
pub mod diophantine;
pub mod exp_sums;
pub mod holder;
pub mod numeric;
pub mod serde_complex;
pub mod turbulence;

mod error;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/exp_sums.md")]
    mod exp_sums {}
    #[doc = include_str!("../../../book/src/diophantine.md")]
    mod diophantine {}
    #[doc = include_str!("../../../book/src/holder.md")]
    mod holder {}
    #[doc = include_str!("../../../book/src/turbulence.md")]
    mod turbulence {}
    #[doc = include_str!("../../../book/src/binormal.md")]
    mod binormal {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Riemann-type exponential sums, the Weierstrass function, truncated NLS
//! sums and quadratic Gauss sums.
//!
//! Phases are reduced in double-double arithmetic so that `frac(n² t)` stays
//! accurate for truncations up to [`MAX_TERMS`].

mod gauss;
mod grid;
mod nls;
mod riemann;
mod weierstrass;

pub use gauss::{gauss_sum, GaussSumResult};
pub use grid::eval_r_grid;
pub use nls::{nls_truncated, nls_truncated_with_derivative};
pub use riemann::{curve_trace, eval_r, eval_r_at, eval_r_rational, eval_r_tilde, eval_r_tilde_at, CurveTrace};
pub use weierstrass::{eval_weierstrass, eval_weierstrass_at, weierstrass_dyadic};

use crate::error::{ensure_finite, invalid};
use crate::numeric::DoubleDouble;
use crate::Result;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Largest truncation accepted: `n²` must stay exact in an `f64`.
pub const MAX_TERMS: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    R,
    RTilde,
    Weierstrass,
}

/// Which sum to evaluate and how far to truncate it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesParams {
    pub kind: SeriesKind,
    pub x0: f64,
    pub n: u64,
    pub eps: f64,
}

impl SeriesParams {
    /// Picks `n = ceil(2 / eps)`, enough for a tail of at most `eps`.
    pub fn with_tolerance(kind: SeriesKind, x0: f64, eps: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return invalid(format!("tolerance must be positive, got {eps}"));
        }
        let n = match kind {
            SeriesKind::Weierstrass => (-eps.log2()).ceil().max(1.0) as u64 + 1,
            _ => (2.0 / eps).ceil() as u64,
        };
        let p = Self { kind, x0, n, eps };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("x0", self.x0)?;
        check_terms(self.n)?;
        if !(self.eps > 0.0) {
            return invalid("tolerance must be positive");
        }
        Ok(())
    }

    /// Bound on the truncation error of the selected sum.
    pub fn tail_bound(&self) -> f64 {
        match self.kind {
            SeriesKind::Weierstrass => 2f64.powi(1 - self.n.min(1100) as i32),
            _ => 2.0 / self.n as f64,
        }
    }

    /// Evaluates the selected sum at `t`. The Weierstrass value is returned
    /// as a complex number with zero imaginary part.
    pub fn eval(&self, t: f64) -> Result<Complex64> {
        self.validate()?;
        match self.kind {
            SeriesKind::R => eval_r(self.x0, t, self.n),
            SeriesKind::RTilde => eval_r_tilde(self.x0, t, self.n),
            SeriesKind::Weierstrass => eval_weierstrass(t, self.n).map(|w| Complex64::new(w, 0.0)),
        }
    }
}

/// Validates a truncation `n` against [`MAX_TERMS`].
pub fn check_terms(n: u64) -> Result<()> {
    if n == 0 {
        return invalid("truncation must be at least 1");
    }
    if n > MAX_TERMS {
        return invalid(format!("truncation {n} exceeds {MAX_TERMS}"));
    }
    Ok(())
}

/// A function of one real variable with a fixed period, evaluated at
/// double-double arguments. Used by the regularity estimators.
pub trait Signal: Sync {
    fn period(&self) -> f64;
    fn eval(&self, t: DoubleDouble) -> Complex64;
}

/// `R_{x0}` truncated at `n`, as a [`Signal`] of period 1.
#[derive(Debug, Clone, Copy)]
pub struct RiemannSignal {
    pub x0: f64,
    pub n: u64,
}

impl Signal for RiemannSignal {
    fn period(&self) -> f64 {
        1.0
    }
    fn eval(&self, t: DoubleDouble) -> Complex64 {
        riemann::r_sum(DoubleDouble::from(self.x0).fract_dd(), t.fract_dd(), self.n)
    }
}

/// The Weierstrass function truncated at `n` terms, period `2π`.
#[derive(Debug, Clone, Copy)]
pub struct WeierstrassSignal {
    pub n: u64,
}

impl Signal for WeierstrassSignal {
    fn period(&self) -> f64 {
        std::f64::consts::TAU
    }
    fn eval(&self, t: DoubleDouble) -> Complex64 {
        Complex64::new(eval_weierstrass_at(t, self.n), 0.0)
    }
}

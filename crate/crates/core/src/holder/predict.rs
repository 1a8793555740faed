use crate::diophantine::cf::deepest_third_max;
use crate::diophantine::continued_fraction_dd;
use crate::error::invalid;
use crate::numeric::DoubleDouble;
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prediction {
    /// `1/2 + 1/(2μ̂)`. With `constrained = false` no convergent denominator
    /// lies in `4Q·N` and the value is only a lower bound.
    Irrational {
        exponent: f64,
        mu_hat: f64,
        constrained: bool,
    },
    /// Rational `p/q` with `q ∈ 4Q·N`: exponent `1/2`.
    Rational { p: i64, q: u64, exponent: f64 },
    /// Rational outside `4Q·N`; `3/2` is the candidate value.
    Unclassified { p: i64, q: u64, candidate: f64 },
}

impl Prediction {
    pub fn exponent(&self) -> Option<f64> {
        match *self {
            Prediction::Irrational { exponent, .. } | Prediction::Rational { exponent, .. } => Some(exponent),
            Prediction::Unclassified { .. } => None,
        }
    }
}

/// Exponent of `R_{P/Q}` at `t` predicted from its continued fraction.
///
/// ```
/// # use riemann_lab::holder::{predicted_exponent, Prediction};
/// # use riemann_lab::numeric::DoubleDouble;
/// let p = predicted_exponent((0, 1), DoubleDouble::from(0.375), 40).unwrap();
/// assert_eq!(p, Prediction::Rational { p: 3, q: 8, exponent: 0.5 });
/// ```
pub fn predicted_exponent(x0: (i64, u64), t: DoubleDouble, depth: usize) -> Result<Prediction> {
    let big_q = x0.1;
    if big_q == 0 {
        return invalid("Q must be positive");
    }
    let modulus = 4 * big_q;
    let cf = continued_fraction_dd(t, depth)?;
    if cf.is_rational() {
        let c = cf.last();
        return Ok(if c.q % modulus == 0 {
            Prediction::Rational {
                p: c.p,
                q: c.q,
                exponent: 0.5,
            }
        } else {
            Prediction::Unclassified {
                p: c.p,
                q: c.q,
                candidate: 1.5,
            }
        });
    }
    let constrained: Vec<f64> = cf
        .convergents
        .iter()
        .filter(|c| c.q % modulus == 0)
        .filter_map(|c| c.mu)
        .collect();
    let (mu_hat, constrained) = match deepest_third_max(&constrained) {
        Ok(mu) => (mu, true),
        Err(_) => {
            let all: Vec<f64> = cf.convergents.iter().filter_map(|c| c.mu).collect();
            (deepest_third_max(&all)?, false)
        }
    };
    Ok(Prediction::Irrational {
        exponent: 0.5 + 0.5 / mu_hat,
        mu_hat,
        constrained,
    })
}

use super::gcd;
use crate::error::{invalid, Error};
use crate::numeric::DoubleDouble;
use crate::Result;
use serde::{Deserialize, Serialize};

/// The fractional part of the input is held exactly as `M / 2^SCALE_BITS`.
const SCALE_BITS: i32 = 120;

/// `μ_n` is reported only when the residual exceeds the input resolution by
/// this factor, which bounds its error by about `0.12 / ln q_n`.
const MU_GUARD: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Convergent {
    pub p: i64,
    pub q: u64,
    /// Signed residual `t - p/q`.
    pub residual: f64,
    /// `-ln|t - p/q| / ln q`; absent for `q = 1`, for an exact hit and
    /// when the residual is within a few units of the input resolution.
    pub mu: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// The requested depth was reached.
    Depth,
    /// The input is exactly the last convergent.
    Exact,
    /// The last convergent matches the input to within its resolution while
    /// the denominator is still far below it: treated as rational.
    RationalInDouble,
    /// The next denominator would exceed the input resolution.
    Resolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub target: f64,
    /// `a_0` (possibly negative) followed by the partial quotients.
    pub coefficients: Vec<i64>,
    pub convergents: Vec<Convergent>,
    pub termination: Termination,
    /// Absolute precision of the input.
    pub resolution: f64,
}

impl ContinuedFraction {
    pub fn is_rational(&self) -> bool {
        matches!(self.termination, Termination::Exact | Termination::RationalInDouble)
    }

    /// Number of convergents actually produced.
    pub fn effective_depth(&self) -> usize {
        self.convergents.len()
    }

    pub fn last(&self) -> &Convergent {
        self.convergents.last().expect("at least one convergent")
    }
}

fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        return f64::from_bits(1);
    }
    f64::from_bits(a.to_bits() + 1) - a
}

/// Continued fraction of an `f64`, expanded exactly from its binary value.
///
/// ```
/// # use riemann_lab::diophantine::continued_fraction;
/// let cf = continued_fraction(std::f64::consts::PI - 3.0, 4).unwrap();
/// let qs: Vec<u64> = cf.convergents.iter().map(|c| c.q).collect();
/// assert_eq!(&qs[..4], &[1, 7, 106, 113]);
/// ```
pub fn continued_fraction(t: f64, depth: usize) -> Result<ContinuedFraction> {
    if !t.is_finite() {
        return invalid("t must be finite");
    }
    continued_fraction_impl(DoubleDouble::from(t), ulp(t), depth)
}

/// As [`continued_fraction`] for a double-double input.
pub fn continued_fraction_dd(t: DoubleDouble, depth: usize) -> Result<ContinuedFraction> {
    if !t.is_finite() {
        return invalid("t must be finite");
    }
    continued_fraction_impl(t, ulp(t.hi) * 2f64.powi(-53), depth)
}

fn continued_fraction_impl(t: DoubleDouble, resolution: f64, depth: usize) -> Result<ContinuedFraction> {
    if depth == 0 {
        return invalid("depth must be at least 1");
    }
    if t.hi.abs() >= 2f64.powi(62) {
        return invalid("|t| must be below 2^62");
    }
    let resolution = resolution.max(2f64.powi(-SCALE_BITS));
    let floor = t.floor();
    let a0 = floor.to_f64() as i64;
    let frac = (t - floor).fract_dd();
    let scale = 2f64.powi(SCALE_BITS);
    let denom: u128 = 1 << SCALE_BITS;
    let m = ((frac.hi * scale) as i128 + (frac.lo * scale).round() as i128).clamp(0, denom as i128 - 1) as u128;

    // q_n t - p_n = (-1)^n rho_n / D, with rho_{-1} = D and rho_0 = M;
    // the rho_n are the remainders of Euclid's algorithm on (D, M).
    let residual = |rho: u128, q: u128, n: usize| {
        let r = rho as f64 * 2f64.powi(-SCALE_BITS) / q as f64;
        if n % 2 == 0 {
            r
        } else {
            -r
        }
    };
    let mk = |p: i128, q: u128, rho: u128, n: usize| -> Result<Convergent> {
        let p = i64::try_from(p).map_err(|_| Error::InvalidInput("numerator overflow".into()))?;
        let q = u64::try_from(q).map_err(|_| Error::InvalidInput("denominator overflow".into()))?;
        let res = residual(rho, q as u128, n);
        let mu = (q > 1 && res.abs() > MU_GUARD * resolution).then(|| -res.abs().ln() / (q as f64).ln());
        Ok(Convergent {
            p,
            q,
            residual: res,
            mu,
        })
    };

    let mut coefficients = vec![a0];
    let mut convergents = vec![mk(a0 as i128, 1, m, 0)?];
    let (mut p_prev, mut q_prev) = (1i128, 0u128);
    let (mut p, mut q) = (a0 as i128, 1u128);
    let (mut rho_prev, mut rho) = (denom, m);

    let rational_hit = |rho: u128, q: u128| {
        if rho == 0 {
            return Some(Termination::Exact);
        }
        let r = residual(rho, q, 0);
        let qf = q as f64;
        (r <= resolution && qf * qf * resolution <= 1e-3).then_some(Termination::RationalInDouble)
    };

    let mut termination = Termination::Depth;
    if let Some(term) = rational_hit(rho, q) {
        termination = term;
    } else {
        while convergents.len() <= depth {
            let a = rho_prev / rho;
            let r = rho_prev % rho;
            let q_new = match a.checked_mul(q).and_then(|v| v.checked_add(q_prev)) {
                Some(v) => v,
                None => {
                    termination = Termination::Resolution;
                    break;
                }
            };
            let qf = q_new as f64;
            if qf * qf * resolution > 1.0 {
                termination = Termination::Resolution;
                break;
            }
            let p_new = a as i128 * p + p_prev;
            (p_prev, q_prev, p, q) = (p, q, p_new, q_new);
            (rho_prev, rho) = (rho, r);
            coefficients.push(a as i64);
            convergents.push(mk(p, q, rho, convergents.len())?);
            if let Some(term) = rational_hit(rho, q) {
                termination = term;
                break;
            }
        }
        if termination == Termination::Depth && convergents.len() > depth + 1 {
            convergents.truncate(depth + 1);
            coefficients.truncate(depth + 1);
        }
    }
    Ok(ContinuedFraction {
        target: t.to_f64(),
        coefficients,
        convergents,
        termination,
        resolution,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExponentEstimate {
    /// The expansion terminated: `μ` is undefined.
    Rational { p: i64, q: u64 },
    Irrational {
        /// Maximum of `μ_n` over the deepest third of the expansion.
        estimate: f64,
        /// `μ_n` for every convergent with `q > 1`.
        mu: Vec<f64>,
    },
}

impl ExponentEstimate {
    pub fn value(&self) -> Option<f64> {
        match self {
            ExponentEstimate::Rational { .. } => None,
            ExponentEstimate::Irrational { estimate, .. } => Some(*estimate),
        }
    }
}

/// Finite-depth proxy for `limsup μ_n`.
pub fn irrationality_exponent_estimate(cf: &ContinuedFraction) -> Result<ExponentEstimate> {
    if cf.is_rational() {
        let c = cf.last();
        return Ok(ExponentEstimate::Rational { p: c.p, q: c.q });
    }
    let mu: Vec<f64> = cf.convergents.iter().filter_map(|c| c.mu).collect();
    deepest_third_max(&mu).map(|estimate| ExponentEstimate::Irrational { estimate, mu })
}

pub(crate) fn deepest_third_max(mu: &[f64]) -> Result<f64> {
    if mu.len() < 3 {
        return Err(Error::TooShallow(format!(
            "{} usable convergents, need at least 3",
            mu.len()
        )));
    }
    let tail = mu.len().div_ceil(3);
    Ok(mu[mu.len() - tail..].iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Approximation {
    pub p: i64,
    pub q: u64,
    pub mu: f64,
    pub residual: f64,
}

/// For every `q ≤ q_max` divisible by `4 big_q`, the nearest `p` coprime to
/// `q`, sorted by decreasing exponent `μ_q = -ln|t - p/q| / ln q`.
pub fn constrained_best_approximations(t: f64, big_q: u64, q_max: u64) -> Result<Vec<Approximation>> {
    if !t.is_finite() {
        return invalid("t must be finite");
    }
    constrained_best_approximations_at(DoubleDouble::from(t), big_q, q_max)
}

pub fn constrained_best_approximations_at(t: DoubleDouble, big_q: u64, q_max: u64) -> Result<Vec<Approximation>> {
    if big_q == 0 {
        return invalid("Q must be at least 1");
    }
    if q_max > 1 << 40 {
        return invalid("q_max must be at most 2^40");
    }
    if t.hi.abs() >= 2f64.powi(40) {
        return invalid("|t| must be below 2^40");
    }
    let step = 4 * big_q;
    let floor = t.floor();
    let a0 = floor.to_f64() as i64;
    let frac = (t - floor).fract_dd();
    let mut out = Vec::new();
    let mut q = step;
    while q <= q_max {
        let qd = DoubleDouble::from(q as f64);
        let dist = |p: i64| (frac - DoubleDouble::from(p as f64).div(qd)).to_f64();
        let below = frac.mul_f64(q as f64).floor().to_f64() as i64;
        let mut lo = below;
        while gcd(lo.unsigned_abs(), q) != 1 {
            lo -= 1;
        }
        let mut hi = below + 1;
        while gcd(hi.unsigned_abs(), q) != 1 {
            hi += 1;
        }
        let p = if dist(lo).abs() <= dist(hi).abs() { lo } else { hi };
        let residual = dist(p);
        let mu = if residual == 0.0 {
            f64::INFINITY
        } else {
            -residual.abs().ln() / (q as f64).ln()
        };
        out.push(Approximation {
            p: p + a0 * q as i64,
            q,
            mu,
            residual,
        });
        q += step;
    }
    out.sort_by(|a, b| b.mu.total_cmp(&a.mu));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden_dd() -> DoubleDouble {
        // (sqrt(5) - 1) / 2 to double-double precision
        DoubleDouble::new(0.6180339887498949, -5.4321152036825055e-17)
    }

    #[test]
    fn golden_ratio_is_fibonacci() {
        let cf = continued_fraction_dd(golden_dd(), 200).unwrap();
        assert_eq!(cf.termination, Termination::Resolution);
        assert!(cf.coefficients[1..].iter().all(|&a| a == 1));
        let qs: Vec<u64> = cf.convergents.iter().map(|c| c.q).collect();
        for w in qs.windows(3) {
            assert_eq!(w[2], w[1] + w[0]);
        }
        let est = irrationality_exponent_estimate(&cf).unwrap().value().unwrap();
        assert!((1.95..=2.05).contains(&est), "{est}");
    }

    #[test]
    fn golden_ratio_f64() {
        let cf = continued_fraction((5f64.sqrt() - 1.0) / 2.0, 200).unwrap();
        assert_eq!(cf.termination, Termination::Resolution);
        let last = cf.last().q as f64;
        assert!(last * last <= 1.0 / cf.resolution);
        // |φ - p/q| ≈ 1/(√5 q²), so μ_n ≈ 2 + ln√5 / ln q at this depth
        for c in &cf.convergents {
            if let (Some(mu), true) = (c.mu, c.q > 100) {
                let law = 2.0 + 5f64.sqrt().ln() / (c.q as f64).ln();
                assert!((mu - law).abs() < 0.01, "{} {mu}", c.q);
            }
        }
    }

    #[test]
    fn rationals_terminate() {
        let cf = continued_fraction(1.0 / 3.0, 50).unwrap();
        assert_eq!(cf.termination, Termination::RationalInDouble);
        assert_eq!((cf.last().p, cf.last().q), (1, 3));
        let cf = continued_fraction(0.5, 50).unwrap();
        assert_eq!(cf.termination, Termination::Exact);
        assert_eq!(
            irrationality_exponent_estimate(&cf).unwrap(),
            ExponentEstimate::Rational { p: 1, q: 2 }
        );
        let cf = continued_fraction(-2.75, 50).unwrap();
        assert_eq!((cf.last().p, cf.last().q), (-11, 4));
    }

    #[test]
    fn depth_limit() {
        let cf = continued_fraction(std::f64::consts::PI, 3).unwrap();
        assert_eq!(cf.termination, Termination::Depth);
        assert_eq!(cf.coefficients, vec![3, 7, 15, 1]);
        assert_eq!(cf.convergents.last().unwrap().p, 355);
    }

    #[test]
    fn shallow_estimate_fails() {
        let cf = continued_fraction(std::f64::consts::PI, 2).unwrap();
        assert!(matches!(
            irrationality_exponent_estimate(&cf),
            Err(Error::TooShallow(_))
        ));
    }

    #[test]
    fn constrained_example() {
        let list = constrained_best_approximations(0.25 + 1e-9, 1, 400).unwrap();
        assert_eq!((list[0].p, list[0].q), (1, 4));
        let expect = 9.0 * 10f64.ln() / 4f64.ln();
        assert!((list[0].mu - expect).abs() < 1e-5, "{}", list[0].mu);
        for a in &list {
            assert_eq!(a.q % 4, 0);
            assert_eq!(gcd(a.p.unsigned_abs(), a.q), 1);
        }
    }

    #[test]
    fn constrained_shift_invariance() {
        let a = constrained_best_approximations(0.3125, 3, 2000).unwrap();
        let b = constrained_best_approximations(1.3125, 3, 2000).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.q, y.q);
            assert_eq!(x.p + x.q as i64, y.p);
            assert_eq!(x.mu, y.mu);
        }
    }
}

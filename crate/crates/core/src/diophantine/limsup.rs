use super::{gcd, totient_sieve};
use crate::error::invalid;
use crate::numeric::{fit_line, CompensatedSum};
use crate::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Approximation radius `ψ(q)`.
#[derive(Debug, Clone, Copy)]
pub enum Radius {
    Zero,
    /// `scale · q^{-exponent}`.
    Power {
        scale: f64,
        exponent: f64,
    },
    Custom(fn(u64) -> f64),
}

impl Radius {
    pub fn eval(&self, q: u64) -> f64 {
        match *self {
            Radius::Zero => 0.0,
            Radius::Power { scale, exponent } => scale * (q as f64).powf(-exponent),
            Radius::Custom(f) => f(q).max(0.0),
        }
    }
}

/// Balls `B(p/q, ψ(q))` over coprime `p ∈ [0, q]` and denominators `q`
/// divisible by `modulus`.
#[derive(Debug, Clone, Copy)]
pub struct LimsupSetSpec {
    pub radius: Radius,
    pub modulus: u64,
}

impl LimsupSetSpec {
    pub fn new(radius: Radius, modulus: u64) -> Self {
        Self {
            radius,
            modulus: modulus.max(1),
        }
    }

    /// `ψ(q) = q^{-exponent}` with no restriction on `q`.
    pub fn power(exponent: f64) -> Self {
        Self::new(Radius::Power { scale: 1.0, exponent }, 1)
    }

    /// `ψ(q) = 1_{4Q·N}(q) / q²`.
    pub fn inverse_square_multiples(big_q: u64) -> Self {
        Self::new(
            Radius::Power {
                scale: 1.0,
                exponent: 2.0,
            },
            4 * big_q.max(1),
        )
    }

    pub fn admits(&self, q: u64) -> bool {
        q >= 1 && q % self.modulus == 0
    }

    /// `ψ(q)`, zero off the filter.
    pub fn psi(&self, q: u64) -> f64 {
        if self.admits(q) {
            self.radius.eval(q)
        } else {
            0.0
        }
    }
}

/// Disjoint sorted closed intervals inside `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IntervalUnion {
    pub intervals: Vec<(f64, f64)>,
    pub total_length: f64,
}

impl IntervalUnion {
    /// Clips to `[0, 1]`, sorts and merges overlapping intervals.
    pub fn from_intervals(mut raw: Vec<(f64, f64)>) -> Self {
        raw.retain_mut(|iv| {
            iv.0 = iv.0.max(0.0);
            iv.1 = iv.1.min(1.0);
            iv.0 <= iv.1
        });
        raw.par_sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut intervals: Vec<(f64, f64)> = Vec::with_capacity(raw.len() / 2 + 1);
        for (lo, hi) in raw {
            match intervals.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => intervals.push((lo, hi)),
            }
        }
        let mut acc = CompensatedSum::new();
        for &(lo, hi) in &intervals {
            acc.add(hi - lo);
        }
        Self {
            intervals,
            total_length: acc.value(),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.0 <= x);
        idx > 0 && x <= self.intervals[idx - 1].1
    }
}

/// Exact union of the balls of `spec` with `q_min ≤ q ≤ q_max`.
///
/// ```
/// # use riemann_lab::diophantine::{limsup_union, LimsupSetSpec};
/// let u = limsup_union(&LimsupSetSpec::inverse_square_multiples(1), 4, 4).unwrap();
/// assert_eq!(u.intervals.len(), 2);
/// assert!((u.total_length - 0.25).abs() < 1e-15);
/// ```
pub fn limsup_union(spec: &LimsupSetSpec, q_min: u64, q_max: u64) -> Result<IntervalUnion> {
    if q_min > q_max {
        return invalid("q_min must not exceed q_max");
    }
    if q_max > 1 << 24 {
        return invalid("q_max must be at most 2^24");
    }
    let q_min = q_min.max(1);
    let raw: Vec<(f64, f64)> = (q_min..=q_max)
        .into_par_iter()
        .filter(|&q| spec.admits(q))
        .flat_map_iter(|q| {
            let r = spec.radius.eval(q);
            let qf = q as f64;
            (0..=q).filter(move |&p| r > 0.0 && gcd(p, q) == 1).map(move |p| {
                let c = p as f64 / qf;
                (c - r, c + r)
            })
        })
        .collect();
    Ok(IntervalUnion::from_intervals(raw))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Divergence {
    /// Decade increments shrink: the series looks summable.
    Convergent { last_increment: f64 },
    /// Increments persist; partial sums fitted as `slope · ln X + intercept`.
    Divergent { log_slope: f64, intercept: f64 },
    /// Fewer than three decades available.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuffinSchaefferReport {
    /// `S(X) = Σ_{q≤X} ψ(q) φ(q)` for `X = 1..=q_max`.
    pub partial_sums: Vec<f64>,
    /// `(X, S(X))` at powers of ten, plus `q_max`.
    pub checkpoints: Vec<(u64, f64)>,
    pub diagnostic: Divergence,
}

/// Partial sums of `Σ ψ(q) φ(q)` with a divergence diagnostic.
///
/// The last decade increment is compared with the previous one; a ratio of
/// at least one half is read as divergence (logarithmic or faster).
pub fn duffin_schaeffer_partial_sums(spec: &LimsupSetSpec, q_max: u64) -> Result<DuffinSchaefferReport> {
    if q_max == 0 {
        return invalid("q_max must be at least 1");
    }
    if q_max > 1 << 28 {
        return invalid("q_max must be at most 2^28");
    }
    let phi = totient_sieve(q_max as usize);
    let mut acc = CompensatedSum::new();
    let partial_sums: Vec<f64> = (1..=q_max)
        .map(|q| {
            acc.add(spec.psi(q) * phi[q as usize] as f64);
            acc.value()
        })
        .collect();
    let mut checkpoints = Vec::new();
    let mut x = 10u64;
    while x <= q_max {
        checkpoints.push((x, partial_sums[x as usize - 1]));
        x *= 10;
    }
    if checkpoints.last().map(|c| c.0) != Some(q_max) {
        checkpoints.push((q_max, partial_sums[q_max as usize - 1]));
    }
    let decades: Vec<(u64, f64)> = checkpoints
        .iter()
        .copied()
        .filter(|&(x, _)| is_power_of_ten(x))
        .collect();
    let diagnostic = if decades.len() < 3 {
        Divergence::Inconclusive
    } else {
        let n = decades.len();
        let last = decades[n - 1].1 - decades[n - 2].1;
        let prev = decades[n - 2].1 - decades[n - 3].1;
        if last > 0.0 && last >= 0.5 * prev {
            let xs: Vec<f64> = decades.iter().map(|d| (d.0 as f64).ln()).collect();
            let ys: Vec<f64> = decades.iter().map(|d| d.1).collect();
            let fit = fit_line(&xs, &ys).expect("distinct checkpoints");
            Divergence::Divergent {
                log_slope: fit.slope,
                intercept: fit.intercept,
            }
        } else {
            Divergence::Convergent { last_increment: last }
        }
    };
    Ok(DuffinSchaefferReport {
        partial_sums,
        checkpoints,
        diagnostic,
    })
}

fn is_power_of_ten(mut x: u64) -> bool {
    while x >= 10 && x % 10 == 0 {
        x /= 10;
    }
    x == 1
}

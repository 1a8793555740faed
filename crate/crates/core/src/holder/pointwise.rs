use crate::error::{ensure_finite, invalid, Error};
use crate::exp_sums::{check_terms, RiemannSignal, Signal};
use crate::numeric::{fit_line, DoubleDouble};
use crate::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exponents are clipped here: nothing above `3/2` is expected and larger
/// fitted values are noise.
pub const ALPHA_MAX: f64 = 1.6;

/// Fits whose RMS residual (in log2 units) exceeds this are flagged.
pub const RESIDUAL_FLAG: f64 = 0.5;

/// Extra octaves of offsets probed below the finest fitted scale.
const EXTRA_OCTAVES: u32 = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolderEstimate {
    pub t: f64,
    pub alpha_fit: f64,
    pub residual: f64,
    pub j_min: u32,
    pub j_max: u32,
    /// `(h_j, osc_j)` for `j = j_min..=j_max`, `h_j` decreasing.
    pub table: Vec<(f64, f64)>,
    pub flagged: bool,
}

fn increment<S: Signal>(s: &S, t: DoubleDouble, base: num_complex::Complex64, h: f64) -> f64 {
    let h = DoubleDouble::from(h);
    let fwd = (s.eval(t + h) - base).norm();
    let bwd = (s.eval(t - h) - base).norm();
    fwd.max(bwd)
}

/// Sup of `|f(t ± h') - f(t)|` over `h' = h 2^{-k/2}`, `k < samples`.
pub fn oscillation_signal<S: Signal>(s: &S, t: DoubleDouble, h: f64, samples: usize) -> Result<f64> {
    if !(h > 0.0 && h <= 0.5 * s.period()) {
        return invalid(format!("offset h = {h} outside (0, period/2]"));
    }
    if samples < 8 {
        return invalid("at least 8 offsets are required");
    }
    let base = s.eval(t);
    Ok((0..samples)
        .into_par_iter()
        .map(|k| increment(s, t, base, h * 2f64.powf(-(k as f64) / 2.0)))
        .reduce(|| 0.0, f64::max))
}

/// Oscillation of `R_{x0}` around `t` at scale `h`.
///
/// ```
/// # use riemann_lab::holder::oscillation;
/// let wide = oscillation(0.0, 0.3, 1e-2, 2000, 8).unwrap();
/// let narrow = oscillation(0.0, 0.3, 1e-2 / 16.0, 2000, 8).unwrap();
/// assert!(narrow <= wide);
/// ```
pub fn oscillation(x0: f64, t: f64, h: f64, n: u64, samples: usize) -> Result<f64> {
    ensure_finite("x0", x0)?;
    ensure_finite("t", t)?;
    check_terms(n)?;
    oscillation_signal(&RiemannSignal { x0, n }, DoubleDouble::from(t), h, samples)
}

/// Slope of `log2 osc(period · 2^-j)` against `-j` for a generic signal.
///
/// Offsets are spaced by half octaves down to `EXTRA_OCTAVES` below the
/// finest scale, and `osc(h)` is the sup over every offset not exceeding
/// `h`, so the table is monotone in `h`.
pub fn pointwise_exponent<S: Signal>(s: &S, t: DoubleDouble, j_min: u32, j_max: u32) -> Result<HolderEstimate> {
    if j_min >= j_max {
        return invalid("j_min must be below j_max");
    }
    if j_max + EXTRA_OCTAVES > 50 {
        return invalid("scales below 2^-50 exceed the phase precision");
    }
    if j_min == 0 {
        return invalid("j_min must be at least 1");
    }
    let period = s.period();
    let base = s.eval(t);
    let m_lo = 2 * j_min;
    let m_hi = 2 * (j_max + EXTRA_OCTAVES);
    let inc: Vec<f64> = (m_lo..=m_hi)
        .into_par_iter()
        .map(|m| increment(s, t, base, period * 2f64.powf(-(m as f64) / 2.0)))
        .collect();
    // running max from the finest offset upwards
    let mut nested = inc.clone();
    for i in (0..nested.len() - 1).rev() {
        nested[i] = nested[i].max(nested[i + 1]);
    }
    let table: Vec<(f64, f64)> = (j_min..=j_max)
        .map(|j| (period * 2f64.powi(-(j as i32)), nested[(2 * (j - j_min)) as usize]))
        .collect();
    if table.iter().any(|&(_, o)| !(o > 0.0)) {
        return Err(Error::DegenerateFit("vanishing oscillation".into()));
    }
    let xs: Vec<f64> = (j_min..=j_max).map(|j| -(j as f64)).collect();
    let ys: Vec<f64> = table.iter().map(|&(_, o)| o.log2()).collect();
    let fit = fit_line(&xs, &ys).ok_or_else(|| Error::DegenerateFit("regression failed".into()))?;
    Ok(HolderEstimate {
        t: t.to_f64(),
        alpha_fit: fit.slope.clamp(0.0, ALPHA_MAX),
        residual: fit.rms,
        j_min,
        j_max,
        table,
        flagged: fit.rms > RESIDUAL_FLAG,
    })
}

/// Pointwise Hölder exponent of `R_{x0}` at `t` from scales `2^-j`.
pub fn holder_exponent_estimate(x0: f64, t: f64, j_min: u32, j_max: u32, n: u64) -> Result<HolderEstimate> {
    ensure_finite("x0", x0)?;
    ensure_finite("t", t)?;
    check_terms(n)?;
    pointwise_exponent(&RiemannSignal { x0, n }, DoubleDouble::from(t), j_min, j_max)
}

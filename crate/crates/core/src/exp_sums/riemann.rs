use super::check_terms;
use crate::error::{ensure_finite, invalid};
use crate::numeric::dd::frac_mul;
use crate::numeric::{par_sum, DoubleDouble};
use crate::Result;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// `Σ_{0<|n|≤n_max} e^{2πi(n²t + n x0)} / n²` with `t`, `x0` already in `[0, 1)`.
///
/// The terms `n` and `-n` share the frequency `n²` and are paired into
/// `2 cos(2π n x0) e^{2πi n² t} / n²`.
pub(crate) fn r_sum(x0: DoubleDouble, t: DoubleDouble, n_max: u64) -> Complex64 {
    par_sum(n_max, |k| {
        let kf = k as f64;
        let amp = 2.0 * (TAU * frac_mul(kf, x0)).cos() / (kf * kf);
        Complex64::from_polar(amp, TAU * frac_mul(kf * kf, t))
    })
}

/// Partial sum of `R_{x0}(t)` over `0 < |n| ≤ n`.
///
/// ```
/// # use riemann_lab::exp_sums::eval_r;
/// let a = eval_r(0.3, 0.125, 500).unwrap();
/// let b = eval_r(0.3, 1.125, 500).unwrap();
/// assert!((a - b).norm() < 1e-12);
/// ```
pub fn eval_r(x0: f64, t: f64, n: u64) -> Result<Complex64> {
    ensure_finite("t", t)?;
    eval_r_at(x0, DoubleDouble::from(t), n)
}

/// As [`eval_r`] with a double-double argument, for offsets far below
/// `ulp(t)`.
pub fn eval_r_at(x0: f64, t: DoubleDouble, n: u64) -> Result<Complex64> {
    ensure_finite("x0", x0)?;
    if !t.is_finite() {
        return invalid("t must be finite");
    }
    check_terms(n)?;
    Ok(r_sum(DoubleDouble::from(x0).fract_dd(), t.fract_dd(), n))
}

/// `R_{x0}(a/c)` with the quadratic phase reduced exactly in integers.
pub fn eval_r_rational(x0: f64, a: i64, c: u64, n: u64) -> Result<Complex64> {
    ensure_finite("x0", x0)?;
    check_terms(n)?;
    if c == 0 {
        return invalid("denominator must be positive");
    }
    let roots: Vec<Complex64> = (0..c)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / c as f64))
        .collect();
    let a_mod = (a as i128).rem_euclid(c as i128) as u128;
    let c128 = c as u128;
    let x0 = DoubleDouble::from(x0).fract_dd();
    Ok(par_sum(n, |k| {
        let kf = k as f64;
        let k2 = (k as u128 * k as u128) % c128;
        let idx = (k2 * a_mod % c128) as usize;
        roots[idx] * (2.0 * (TAU * frac_mul(kf, x0)).cos() / (kf * kf))
    }))
}

/// `i t + Σ_{0<|n|≤n} (e^{i n² t} - 1) / n² · e^{i n x0}`.
///
/// ```
/// # use riemann_lab::exp_sums::eval_r_tilde;
/// let v = eval_r_tilde(0.0, std::f64::consts::TAU, 1000).unwrap();
/// assert!((v.im - std::f64::consts::TAU).abs() < 1e-9 && v.re.abs() < 1e-9);
/// ```
pub fn eval_r_tilde(x0: f64, t: f64, n: u64) -> Result<Complex64> {
    ensure_finite("t", t)?;
    eval_r_tilde_at(x0, DoubleDouble::from(t), n)
}

pub fn eval_r_tilde_at(x0: f64, t: DoubleDouble, n: u64) -> Result<Complex64> {
    ensure_finite("x0", x0)?;
    if !t.is_finite() {
        return invalid("t must be finite");
    }
    check_terms(n)?;
    // phases measured in turns
    let s = t.mul(DoubleDouble::INV_TWO_PI).fract_dd();
    let y = DoubleDouble::from(x0).mul(DoubleDouble::INV_TWO_PI).fract_dd();
    let tail = par_sum(n, |k| {
        let kf = k as f64;
        let half = std::f64::consts::PI * frac_mul(kf * kf, s);
        let (sh, ch) = half.sin_cos();
        // e^{iθ} - 1 = 2i sin(θ/2) e^{iθ/2}, exact near θ = 0
        let diff = Complex64::new(-2.0 * sh * sh, 2.0 * sh * ch);
        diff * (2.0 * (TAU * frac_mul(kf, y)).cos() / (kf * kf))
    });
    Ok(Complex64::new(0.0, t.to_f64()) + tail)
}

/// Samples of `R̃_{x0}` on a uniform grid, for plotting the image curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveTrace {
    pub t_grid: Vec<f64>,
    #[serde(with = "crate::serde_complex::vec")]
    pub points: Vec<Complex64>,
}

pub fn curve_trace(x0: f64, t_start: f64, t_end: f64, samples: usize, n: u64) -> Result<CurveTrace> {
    ensure_finite("t_start", t_start)?;
    ensure_finite("t_end", t_end)?;
    ensure_finite("x0", x0)?;
    check_terms(n)?;
    if samples < 2 {
        return invalid("a trace needs at least 2 samples");
    }
    if !(t_start < t_end) {
        return invalid("t_start must be below t_end");
    }
    let step = (t_end - t_start) / (samples - 1) as f64;
    let t_grid: Vec<f64> = (0..samples)
        .map(|k| {
            if k + 1 == samples {
                t_end
            } else {
                t_start + k as f64 * step
            }
        })
        .collect();
    let points = t_grid
        .par_iter()
        .map(|&t| eval_r_tilde(x0, t, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveTrace { t_grid, points })
}

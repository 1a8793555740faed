use crate::diophantine::gcd;
use crate::error::{invalid, Error};
use crate::exp_sums::{check_terms, eval_r_at, gauss_sum};
use crate::numeric::{fit_line, DoubleDouble};
use crate::Result;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub p: i64,
    pub q: u64,
    /// Fitted exponent of `|R(p/q + h) - R(p/q)|` against `h`.
    pub slope: f64,
    /// Fitted `log2` prefactor at the free slope.
    pub intercept: f64,
    pub residual: f64,
    /// Prefactor `c` in `c √h`, fitted with the slope held at `1/2`.
    pub prefactor: f64,
    /// `prefactor · √q`, constant across `q` when the prefactor scales as
    /// `q^{-1/2}`.
    pub normalized_prefactor: f64,
    /// Integer `m` closest to `x0 q`.
    pub m: i64,
    /// `x0 - m/q`.
    pub dist: f64,
    /// `|G(p, m, q)|`.
    pub gauss_modulus: f64,
    /// `Some(1/2)` when `q` is a multiple of `4Q`; otherwise unclassified.
    pub classified_exponent: Option<f64>,
    /// `(h, |R(p/q + h) - R(p/q)|)`.
    pub table: Vec<(f64, f64)>,
}

/// Scaling of the increments of `R_{P/Q}` at the rational `p/q`, over
/// `h = 2^-j` for `j` in `j_range`.
pub fn rational_scaling_fit(
    x0: (i64, u64),
    p: i64,
    q: u64,
    j_range: std::ops::RangeInclusive<u32>,
    n: u64,
) -> Result<ScalingFit> {
    let (big_p, big_q) = x0;
    check_terms(n)?;
    if big_q == 0 || q == 0 {
        return invalid("denominators must be positive");
    }
    if gcd(p.unsigned_abs(), q) != 1 {
        return invalid(format!("gcd({p}, {q}) != 1"));
    }
    let js: Vec<u32> = j_range.collect();
    if js.len() < 4 {
        return invalid("h range must span at least 4 dyadic scales");
    }
    if *js.last().unwrap() > 60 {
        return invalid("h below 2^-60 is beyond the phase precision");
    }
    let h_max = 2f64.powi(-(js[0] as i32));
    if h_max > (q as f64).powi(-3) {
        return invalid(format!("h range must lie in (0, q^-3] = (0, {}]", (q as f64).powi(-3)));
    }
    let x0f = big_p as f64 / big_q as f64;
    let base_t = DoubleDouble::from(p as f64).div(DoubleDouble::from(q as f64));
    let base = eval_r_at(x0f, base_t, n)?;
    let table: Vec<(f64, f64)> = js
        .par_iter()
        .map(|&j| {
            let h = 2f64.powi(-(j as i32));
            let v: Complex64 = eval_r_at(x0f, base_t + DoubleDouble::from(h), n)?;
            Ok((h, (v - base).norm()))
        })
        .collect::<Result<_>>()?;
    if table.iter().any(|&(_, d)| !(d > 0.0)) {
        return Err(Error::DegenerateFit("vanishing increment".into()));
    }
    let xs: Vec<f64> = table.iter().map(|&(h, _)| h.log2()).collect();
    let ys: Vec<f64> = table.iter().map(|&(_, d)| d.log2()).collect();
    let fit = fit_line(&xs, &ys).ok_or_else(|| Error::DegenerateFit("regression failed".into()))?;
    let log_pref = xs.iter().zip(&ys).map(|(x, y)| y - 0.5 * x).sum::<f64>() / xs.len() as f64;
    let prefactor = 2f64.powf(log_pref);

    let m = ((big_p as i128 * q as i128) as f64 / big_q as f64).round() as i64;
    let dist = x0f - m as f64 / q as f64;
    let gauss_modulus = gauss_sum(p, m, q)?.modulus;
    let classified_exponent = (q % (4 * big_q) == 0).then_some(0.5);
    Ok(ScalingFit {
        p,
        q,
        slope: fit.slope,
        intercept: fit.intercept,
        residual: fit.rms,
        prefactor,
        normalized_prefactor: prefactor * (q as f64).sqrt(),
        m,
        dist,
        gauss_modulus,
        classified_exponent,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_scales_like_root() {
        let fit = rational_scaling_fit((0, 1), 1, 4, 14..=24, 1 << 16).unwrap();
        assert!((fit.slope - 0.5).abs() < 0.03, "{}", fit.slope);
        assert_eq!(fit.classified_exponent, Some(0.5));
        assert_eq!(fit.dist, 0.0);
        assert!((fit.gauss_modulus - 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn unclassified_denominator() {
        let fit = rational_scaling_fit((1, 2), 1, 4, 14..=20, 1 << 14).unwrap();
        assert_eq!(fit.classified_exponent, None);
    }

    #[test]
    fn range_checks() {
        assert!(rational_scaling_fit((0, 1), 1, 4, 14..=16, 100).is_err());
        assert!(rational_scaling_fit((0, 1), 1, 16, 10..=20, 100).is_err());
        assert!(rational_scaling_fit((0, 1), 2, 4, 14..=20, 100).is_err());
    }
}

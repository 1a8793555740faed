use super::gcd;
use crate::error::{invalid, Error};
use crate::numeric::fit_line;
use crate::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JarnikEstimate {
    pub mu: f64,
    /// Denominators restricted to multiples of this value (1 = none).
    pub modulus: u64,
    /// Least-squares slope of `log2 N(2^-j)` against `j`.
    pub slope: f64,
    pub intercept: f64,
    pub counts: Vec<(u32, u64)>,
}

/// Number of `2^-j` boxes of `[0, 1]` met by the balls `B(p/q, q^{-μ})`
/// whose radius lies in `[2^-j, 2^{1-j})`.
///
/// Restricting to that radius shell keeps one covering scale per `j`:
/// smaller balls would be counted as whole boxes and larger ones belong to
/// coarser scales.
pub fn jarnik_count(mu: f64, modulus: u64, j: u32) -> u64 {
    let lo_r = 2f64.powi(-(j as i32));
    let in_shell = |q: u64| {
        let r = (q as f64).powf(-mu);
        r >= lo_r && r < 2.0 * lo_r
    };
    // estimates from the closed form, then nudged past rounding at the edges
    let cut = 2f64.powf(j as f64 / mu);
    let mut q_hi = cut.floor() as u64;
    while in_shell(q_hi + 1) {
        q_hi += 1;
    }
    while q_hi > 0 && !in_shell(q_hi) && (q_hi as f64).powf(-mu) < lo_r {
        q_hi -= 1;
    }
    let mut q_lo = ((cut * 2f64.powf(-1.0 / mu)).floor() as u64).max(1);
    while q_lo <= q_hi && !in_shell(q_lo) {
        q_lo += 1;
    }
    while q_lo > 1 && in_shell(q_lo - 1) {
        q_lo -= 1;
    }
    let modulus = modulus.max(1);
    let boxes = 1u64 << j;
    let scale = boxes as f64;
    let mut ranges: Vec<(u64, u64)> = (q_lo.max(1)..=q_hi)
        .into_par_iter()
        .filter(|q| q % modulus == 0)
        .flat_map_iter(|q| {
            let r = (q as f64).powf(-mu);
            let qf = q as f64;
            (0..=q).filter(move |&p| gcd(p, q) == 1).filter_map(move |p| {
                let c = p as f64 / qf;
                let a = ((c - r).max(0.0) * scale).floor() as u64;
                let b = (((c + r).min(1.0) * scale).floor() as u64).min(boxes - 1);
                (a <= b).then_some((a, b))
            })
        })
        .collect();
    ranges.par_sort_unstable();
    let mut total = 0u64;
    let mut covered_to: Option<u64> = None;
    for (a, b) in ranges {
        match covered_to {
            Some(c) if b <= c => {}
            Some(c) => {
                total += b - a.max(c + 1) + 1;
                covered_to = Some(b);
            }
            None => {
                total += b - a + 1;
                covered_to = Some(b);
            }
        }
    }
    total
}

/// Box-counting dimension of the `μ`-approximable set, optionally with
/// denominators in `4Q·N`.
///
/// ```
/// # use riemann_lab::diophantine::jarnik_box_dimension;
/// let est = jarnik_box_dimension(None, 3.0, 10..=18).unwrap();
/// assert!((est.slope - 2.0 / 3.0).abs() < 0.1);
/// ```
pub fn jarnik_box_dimension(
    big_q: Option<u64>,
    mu: f64,
    j_range: std::ops::RangeInclusive<u32>,
) -> Result<JarnikEstimate> {
    if !(mu >= 2.0) || !mu.is_finite() {
        return invalid(format!("mu must be at least 2, got {mu}"));
    }
    if *j_range.end() > 40 {
        return invalid("scales beyond 2^-40 exceed double resolution");
    }
    let js: Vec<u32> = j_range.collect();
    if js.len() < 3 {
        return invalid("need at least 3 scales");
    }
    let modulus = big_q.map_or(1, |q| 4 * q.max(1));
    let counts: Vec<(u32, u64)> = js.iter().map(|&j| (j, jarnik_count(mu, modulus, j))).collect();
    let used: Vec<&(u32, u64)> = counts.iter().filter(|c| c.1 > 0).collect();
    let xs: Vec<f64> = used.iter().map(|c| c.0 as f64).collect();
    let ys: Vec<f64> = used.iter().map(|c| (c.1 as f64).log2()).collect();
    let fit = fit_line(&xs, &ys)
        .filter(|_| used.len() >= 3)
        .ok_or_else(|| Error::DegenerateFit("fewer than 3 non-empty scales".into()))?;
    Ok(JarnikEstimate {
        mu,
        modulus,
        slope: fit.slope,
        intercept: fit.intercept,
        counts,
    })
}

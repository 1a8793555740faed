use crate::error::{ensure_finite, invalid, Error};
use crate::exp_sums::{check_terms, eval_r_grid};
use crate::numeric::{fit_line, CompensatedSum};
use crate::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureFunctionTable {
    pub p: Vec<f64>,
    /// Fitted `ζ(p)`: slope of `log S_p(h)` against `log h`.
    pub zeta: Vec<f64>,
    /// RMS residual of each fit, in log2 units.
    pub residuals: Vec<f64>,
    /// Scales `h = 2^-m` used in the fits.
    pub scales: Vec<u32>,
    /// `S_p(2^-m)`, one row per scale.
    pub s: Vec<Vec<f64>>,
}

fn mean_power(diffs: &[f64], p: f64) -> f64 {
    let partial: Vec<f64> = diffs
        .par_chunks(1 << 14)
        .map(|ch| {
            let mut acc = CompensatedSum::new();
            for &d in ch {
                acc.add(d.powf(p));
            }
            acc.value()
        })
        .collect();
    let mut acc = CompensatedSum::new();
    for v in partial {
        acc.add(v);
    }
    acc.value() / diffs.len() as f64
}

/// Structure-function exponents of `R_{x0}` on the grid `k / 2^grid_level`.
///
/// `S_p(h)` is the grid mean of `|R(t + h) - R(t)|^p` at `h = 2^-m` for `m`
/// in `j_range`.
pub fn structure_function_exponents(
    x0: f64,
    p_list: &[f64],
    j_range: std::ops::RangeInclusive<u32>,
    grid_level: u32,
    n: u64,
) -> Result<StructureFunctionTable> {
    ensure_finite("x0", x0)?;
    check_terms(n)?;
    if p_list.is_empty() || p_list.iter().any(|&p| !(p > 0.0 && p <= 8.0)) {
        return invalid("orders p must lie in (0, 8]");
    }
    if grid_level < 16 {
        return invalid("grid must be at least 2^16");
    }
    let scales: Vec<u32> = j_range.collect();
    if scales.len() < 3 {
        return invalid("need at least 3 scales");
    }
    if *scales.last().unwrap() > grid_level || scales[0] == 0 {
        return invalid("scales must lie within the grid resolution");
    }
    let f = eval_r_grid(x0, grid_level, n)?;
    let len = f.len();
    let s: Vec<Vec<f64>> = scales
        .iter()
        .map(|&m| {
            let shift = 1usize << (grid_level - m);
            let diffs: Vec<f64> = (0..len)
                .into_par_iter()
                .map(|k| (f[(k + shift) % len] - f[k]).norm())
                .collect();
            p_list.iter().map(|&p| mean_power(&diffs, p)).collect()
        })
        .collect();
    let xs: Vec<f64> = scales.iter().map(|&m| -(m as f64)).collect();
    let mut zeta = Vec::with_capacity(p_list.len());
    let mut residuals = Vec::with_capacity(p_list.len());
    for i in 0..p_list.len() {
        let ys: Vec<f64> = s.iter().map(|row| row[i].log2()).collect();
        let fit = fit_line(&xs, &ys).ok_or_else(|| Error::DegenerateFit(format!("p = {}", p_list[i])))?;
        zeta.push(fit.slope);
        residuals.push(fit.rms);
    }
    Ok(StructureFunctionTable {
        p: p_list.to_vec(),
        zeta,
        residuals,
        scales,
        s,
    })
}

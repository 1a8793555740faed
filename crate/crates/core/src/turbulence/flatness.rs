use crate::error::{ensure_finite, invalid, Error};
use crate::numeric::dd::frac_mul;
use crate::numeric::{fit_line, CompensatedSum, DoubleDouble};
use crate::Result;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// `2 Σ_{n≥n_cut} 1/n⁴`, the squared `L²` norm the high-pass part would have
/// if the modes `±n` were orthogonal.
///
/// ```
/// # use riemann_lab::turbulence::highpass_l2;
/// let full = highpass_l2(1).unwrap();
/// assert!((full - std::f64::consts::PI.powi(4) / 45.0).abs() < 1e-13);
/// ```
pub fn highpass_l2(n_cut: u64) -> Result<f64> {
    if n_cut == 0 {
        return invalid("cutoff must be at least 1");
    }
    const DIRECT: u64 = 100_000;
    let last = n_cut + DIRECT;
    // midpoint comparison for the remaining tail, error O(last^-6)
    let mut acc = CompensatedSum::new();
    acc.add(1.0 / (3.0 * (last as f64 + 0.5).powi(3)));
    for n in (n_cut..=last).rev() {
        let x = n as f64;
        acc.add(1.0 / (x * x * x * x));
    }
    Ok(2.0 * acc.value())
}

/// Real coefficients of the band `n_cut ≤ n ≤ m_max` on the `t`-frequencies
/// `n²`: `c_n = 2 cos(2π n x0) / n²`.
pub fn band_coefficients(x0: f64, n_cut: u64, m_max: u64) -> Vec<(u64, f64)> {
    let y = DoubleDouble::from(x0).fract_dd();
    (n_cut..=m_max)
        .map(|n| {
            let nf = n as f64;
            (n * n, 2.0 * (TAU * frac_mul(nf, y)).cos() / (nf * nf))
        })
        .collect()
}

/// Squared `L²` norm over one period of the band-limited sum
/// `Σ_{n_cut≤|n|≤m_max} e^{2πi(n²t + n x0)}/n²`.
///
/// The modes `n` and `-n` share the frequency `n²`, so this is
/// `Σ 4 cos²(2π n x0)/n⁴` and depends on `x0`, unlike [`highpass_l2`].
pub fn highpass_l2_at(x0: f64, n_cut: u64, m_max: u64) -> Result<f64> {
    ensure_finite("x0", x0)?;
    if n_cut == 0 || m_max < n_cut {
        return invalid("need 1 ≤ n_cut ≤ m_max");
    }
    let mut acc = CompensatedSum::new();
    for (_, c) in band_coefficients(x0, n_cut, m_max).into_iter().rev() {
        acc.add(c * c);
    }
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlatnessMethod {
    /// Trapezoidal rule on a grid fine enough to integrate `|f|⁴` exactly.
    Quadrature,
    /// Parseval on the sparse self-convolution of the coefficients.
    Convolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatnessValue {
    pub n_cut: u64,
    pub m_max: u64,
    pub l4_pow4: f64,
    pub l2_sq: f64,
    /// `l4_pow4 / l2_sq²`.
    pub value: f64,
    /// `L²` norm of the discarded modes above `m_max`.
    pub tail_l2: f64,
    pub method: FlatnessMethod,
}

fn fourth_power_quadrature(coeffs: &[(u64, f64)], grid: usize) -> f64 {
    let mask = grid as u64 - 1;
    let mut bins = vec![Complex64::new(0.0, 0.0); grid];
    for &(k, c) in coeffs {
        bins[(k & mask) as usize].re += c;
    }
    FftPlanner::new().plan_fft_inverse(grid).process(&mut bins);
    let partial: Vec<f64> = bins
        .par_chunks(1 << 14)
        .map(|ch| {
            let mut acc = CompensatedSum::new();
            for z in ch {
                let a = z.norm_sqr();
                acc.add(a * a);
            }
            acc.value()
        })
        .collect();
    let mut acc = CompensatedSum::new();
    for v in partial {
        acc.add(v);
    }
    acc.value() / grid as f64
}

fn fourth_power_convolution(coeffs: &[(u64, f64)]) -> f64 {
    let top = coeffs.last().map_or(0, |c| c.0) as usize;
    let mut square = vec![0.0f64; 2 * top + 1];
    for (i, &(ki, ci)) in coeffs.iter().enumerate() {
        square[2 * ki as usize] += ci * ci;
        for &(kj, cj) in &coeffs[i + 1..] {
            square[(ki + kj) as usize] += 2.0 * ci * cj;
        }
    }
    let mut acc = CompensatedSum::new();
    for d in square {
        acc.add(d * d);
    }
    acc.value()
}

/// Flatness `‖P f‖₄⁴ / ‖P f‖₂⁴` of the band `n_cut ≤ |n| ≤ m_max` of `R_{x0}`.
///
/// `grid` is used by the quadrature method only and must exceed
/// `2(m_max² - n_cut²)`, the top frequency of `|P f|⁴`.
pub fn flatness(x0: f64, n_cut: u64, m_max: u64, grid: usize, method: FlatnessMethod) -> Result<FlatnessValue> {
    ensure_finite("x0", x0)?;
    if n_cut == 0 {
        return invalid("cutoff must be at least 1");
    }
    if m_max < 4 * n_cut {
        return invalid("m_max must be at least 4 n_cut");
    }
    if m_max > 1 << 13 {
        return invalid("m_max above 8192 is not supported");
    }
    let coeffs = band_coefficients(x0, n_cut, m_max);
    let l4_pow4 = match method {
        FlatnessMethod::Quadrature => {
            let need = 2 * (m_max * m_max - n_cut * n_cut);
            if (grid as u64) <= need || !grid.is_power_of_two() {
                return Err(Error::Aliasing(format!(
                    "grid {grid} must be a power of two above {need}"
                )));
            }
            fourth_power_quadrature(&coeffs, grid)
        }
        FlatnessMethod::Convolution => fourth_power_convolution(&coeffs),
    };
    let l2_sq = highpass_l2_at(x0, n_cut, m_max)?;
    if !(l2_sq > 0.0) {
        return Err(Error::DegenerateFit("band has zero energy".into()));
    }
    let tail_l2 = (2.0 * highpass_l2(m_max + 1)?).sqrt();
    Ok(FlatnessValue {
        n_cut,
        m_max,
        l4_pow4,
        l2_sq,
        value: l4_pow4 / (l2_sq * l2_sq),
        tail_l2,
        method,
    })
}

/// Smallest admissible quadrature grid for a band.
pub(crate) fn min_grid(n_cut: u64, m_max: u64) -> usize {
    ((2 * (m_max * m_max - n_cut * n_cut)) as usize + 1).next_power_of_two()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatnessCurve {
    pub x0: f64,
    pub n_values: Vec<u64>,
    pub quadrature: Vec<f64>,
    pub convolution: Vec<f64>,
    /// Largest relative gap between the two methods.
    pub method_gap: f64,
    /// Slope of `log F` against `log N`.
    pub growth_exponent: f64,
}

/// `F(2^k)` for `k` in `ks`, with `m_max = m_factor · 2^k`, by both methods.
pub fn flatness_curve(x0: f64, ks: &[u32], m_factor: u64) -> Result<FlatnessCurve> {
    if ks.is_empty() {
        return invalid("no cutoffs given");
    }
    let mut n_values = Vec::new();
    let mut quadrature = Vec::new();
    let mut convolution = Vec::new();
    let mut method_gap = 0.0f64;
    for &k in ks {
        if k > 12 {
            return invalid("cutoff exponent above 12 is not supported");
        }
        let n = 1u64 << k;
        let m = m_factor * n;
        let q = flatness(x0, n, m, min_grid(n, m), FlatnessMethod::Quadrature)?.value;
        let c = flatness(x0, n, m, 0, FlatnessMethod::Convolution)?.value;
        method_gap = method_gap.max(((q - c) / c).abs());
        n_values.push(n);
        quadrature.push(q);
        convolution.push(c);
    }
    let growth_exponent = if ks.len() >= 2 {
        let xs: Vec<f64> = n_values.iter().map(|&n| (n as f64).ln()).collect();
        let ys: Vec<f64> = quadrature.iter().map(|f| f.ln()).collect();
        fit_line(&xs, &ys).map_or(f64::NAN, |f| f.slope)
    } else {
        f64::NAN
    };
    Ok(FlatnessCurve {
        x0,
        n_values,
        quadrature,
        convolution,
        method_gap,
        growth_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_is_flat() {
        let c = [(9u64, 0.7)];
        let l4 = fourth_power_quadrature(&c, 64);
        assert!((l4 / 0.7f64.powi(4) - 1.0).abs() < 1e-14);
        assert!((fourth_power_convolution(&c) / 0.7f64.powi(4) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_equal_modes() {
        // |a e^{iθ1} + a e^{iθ2}|⁴ averages to 6a⁴ against (2a²)² = 4a⁴
        let c = [(4u64, 1.0), (25u64, 1.0)];
        let l4 = fourth_power_quadrature(&c, 64);
        assert!((l4 - 6.0).abs() < 1e-12);
        assert!((fourth_power_convolution(&c) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn methods_agree() {
        let g = min_grid(4, 64);
        let q = flatness(0.0, 4, 64, g, FlatnessMethod::Quadrature).unwrap();
        let c = flatness(0.0, 4, 64, 0, FlatnessMethod::Convolution).unwrap();
        assert!((q.value - c.value).abs() < 1e-8);
    }

    #[test]
    fn aliasing_guard() {
        let err = flatness(0.0, 4, 64, 4096, FlatnessMethod::Quadrature).unwrap_err();
        assert!(matches!(err, Error::Aliasing(_)));
        assert!(flatness(0.0, 4, 8, 1 << 12, FlatnessMethod::Quadrature).is_err());
    }

    #[test]
    fn highpass_tail() {
        for n in [2u64, 10, 1000] {
            let v = highpass_l2(n).unwrap();
            assert!(v <= 2.0 / (3.0 * ((n - 1) as f64).powi(3)));
        }
    }

    #[test]
    fn band_norm_at_origin() {
        let v = highpass_l2_at(0.0, 1, 50_000).unwrap();
        assert!((v - 4.0 * std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-12);
    }
}

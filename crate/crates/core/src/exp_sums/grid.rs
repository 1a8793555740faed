use super::check_terms;
use crate::error::{ensure_finite, invalid};
use crate::numeric::dd::frac_mul;
use crate::numeric::DoubleDouble;
use crate::Result;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::TAU;

/// `R_{x0}(k / 2^level)` for all `k < 2^level`, truncated at `n`.
///
/// On this grid `e^{2πi n² k/L}` depends only on `n² mod L`, so the
/// coefficients are binned by residue and one inverse FFT yields every value
/// exactly (up to rounding), at cost `O(n + L log L)`.
pub fn eval_r_grid(x0: f64, level: u32, n: u64) -> Result<Vec<Complex64>> {
    ensure_finite("x0", x0)?;
    check_terms(n)?;
    if level > 28 {
        return invalid("grid level above 28 is not supported");
    }
    let len = 1usize << level;
    let mask = (len as u64) - 1;
    let y = DoubleDouble::from(x0).fract_dd();
    let mut bins = vec![Complex64::new(0.0, 0.0); len];
    for k in 1..=n {
        let kf = k as f64;
        let idx = ((k * k) & mask) as usize;
        bins[idx].re += 2.0 * (TAU * frac_mul(kf, y)).cos() / (kf * kf);
    }
    let fft = FftPlanner::new().plan_fft_inverse(len);
    fft.process(&mut bins);
    Ok(bins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_sums::eval_r;

    #[test]
    fn grid_matches_direct() {
        let level = 7;
        let g = eval_r_grid(0.3, level, 3000).unwrap();
        for k in [0usize, 1, 5, 64, 127] {
            let d = eval_r(0.3, k as f64 / 128.0, 3000).unwrap();
            assert!((g[k] - d).norm() < 1e-12, "{k}");
        }
    }
}

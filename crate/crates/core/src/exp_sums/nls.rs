use crate::numeric::dd::frac_mul;
use crate::numeric::{ComplexSum, DoubleDouble};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// `Σ_{|n|≤m} e^{i n² t + i n x}`.
///
/// ```
/// # use riemann_lab::exp_sums::nls_truncated;
/// use std::f64::consts::PI;
/// assert!((nls_truncated(1, PI, PI) - 3.0).norm() < 1e-12);
/// assert_eq!(nls_truncated(5, 0.0, 0.0).re, 11.0);
/// ```
pub fn nls_truncated(m: u64, t: f64, x: f64) -> Complex64 {
    nls_truncated_with_derivative(m, t, x).0
}

/// The sum together with its `x`-derivative `Σ i n e^{i n² t + i n x}`.
pub fn nls_truncated_with_derivative(m: u64, t: f64, x: f64) -> (Complex64, Complex64) {
    let s = DoubleDouble::from(t).mul(DoubleDouble::INV_TWO_PI).fract_dd();
    let y = DoubleDouble::from(x).mul(DoubleDouble::INV_TWO_PI).fract_dd();
    let mut val = ComplexSum::new();
    let mut der = ComplexSum::new();
    val.add(Complex64::new(1.0, 0.0));
    for k in 1..=m {
        let kf = k as f64;
        let wave = Complex64::from_polar(1.0, TAU * frac_mul(kf * kf, s));
        let (sn, cs) = (TAU * frac_mul(kf, y)).sin_cos();
        // n and -n: e^{in²t}(e^{inx} ± e^{-inx})
        val.add(wave * (2.0 * cs));
        der.add(wave * (-2.0 * kf * sn));
    }
    (val.value(), der.value())
}

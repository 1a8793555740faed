use crate::diophantine::gcd;
use crate::error::invalid;
use crate::numeric::ComplexSum;
use crate::Result;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussSumResult {
    pub p: i64,
    pub b: i64,
    pub q: u64,
    #[serde(with = "crate::serde_complex")]
    pub value: Complex64,
    pub modulus: f64,
    /// Predicted vanishing: `q` even with `q/2` and `b` of opposite parity.
    pub zero_class: bool,
}

/// `G(p, b, q) = Σ_{r<q} e^{2πi(p r² + b r)/q}` by direct summation.
///
/// ```
/// # use riemann_lab::exp_sums::gauss_sum;
/// let g = gauss_sum(1, 0, 4).unwrap();
/// assert!((g.value.re - 2.0).abs() < 1e-12 && (g.value.im - 2.0).abs() < 1e-12);
/// assert!(gauss_sum(1, 0, 2).unwrap().zero_class);
/// ```
pub fn gauss_sum(p: i64, b: i64, q: u64) -> Result<GaussSumResult> {
    if q == 0 {
        return invalid("q must be at least 1");
    }
    if q > 1 << 40 {
        return invalid("q too large for direct summation");
    }
    if gcd(p.unsigned_abs(), q) != 1 {
        return invalid(format!("gcd({p}, {q}) != 1"));
    }
    let qi = q as i128;
    let pm = (p as i128).rem_euclid(qi);
    let bm = (b as i128).rem_euclid(qi);
    let mut acc = ComplexSum::new();
    for r in 0..qi {
        let k = (pm * r % qi * r + bm * r) % qi;
        acc.add(Complex64::from_polar(1.0, TAU * k as f64 / q as f64));
    }
    let value = acc.value();
    let zero_class = q % 2 == 0 && (q / 2) % 2 != b.rem_euclid(2) as u64;
    Ok(GaussSumResult {
        p,
        b,
        q,
        value,
        modulus: value.norm(),
        zero_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let g = gauss_sum(1, 0, 1).unwrap();
        assert!((g.value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let g = gauss_sum(1, 0, 2).unwrap();
        assert!(g.modulus < 1e-12 && g.zero_class);
        let g = gauss_sum(1, 0, 3).unwrap();
        assert!((g.modulus - 3f64.sqrt()).abs() < 1e-12);
        let g = gauss_sum(1, 1, 2).unwrap();
        assert!((g.modulus - 2.0).abs() < 1e-12 && !g.zero_class);
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(gauss_sum(2, 0, 4).is_err());
        assert!(gauss_sum(1, 0, 0).is_err());
    }

    #[test]
    fn negative_arguments_reduce() {
        let a = gauss_sum(-1, -3, 7).unwrap();
        let b = gauss_sum(6, 4, 7).unwrap();
        assert!((a.value - b.value).norm() < 1e-12);
        assert_eq!(a.zero_class, b.zero_class);
    }
}

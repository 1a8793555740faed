use crate::error::{ensure_finite, invalid};
use crate::numeric::{CompensatedSum, DoubleDouble};
use crate::Result;
use rayon::prelude::*;
use std::f64::consts::TAU;

/// Terms beyond this index weigh less than `2^-64` and their phases carry no
/// information at double-double precision.
const EFFECTIVE_TERMS: u64 = 64;

/// `W(t) = Σ_{k=1..n} cos(4^k t) / 2^k`.
///
/// ```
/// # use riemann_lab::exp_sums::eval_weierstrass;
/// let w = eval_weierstrass(std::f64::consts::FRAC_PI_2, 3).unwrap();
/// assert!((w - 0.875).abs() < 1e-14);
/// ```
pub fn eval_weierstrass(t: f64, n: u64) -> Result<f64> {
    ensure_finite("t", t)?;
    if n == 0 {
        return invalid("truncation must be at least 1");
    }
    Ok(eval_weierstrass_at(DoubleDouble::from(t), n))
}

pub fn eval_weierstrass_at(t: DoubleDouble, n: u64) -> f64 {
    let turns = t.mul(DoubleDouble::INV_TWO_PI).fract_dd();
    let mut acc = CompensatedSum::new();
    let mut scale = 1.0f64;
    for k in 1..=n.min(EFFECTIVE_TERMS) {
        scale *= 4.0;
        // multiplying by a power of two is exact
        let ph = DoubleDouble {
            hi: turns.hi * scale,
            lo: turns.lo * scale,
        }
        .fract();
        acc.add((TAU * ph).cos() * 0.5f64.powi(k as i32));
    }
    acc.value()
}

/// `W(2π (i + u) / 2^level)` for every `i < 2^level`.
///
/// Phases are exact: `4^k i mod 2^level` is reduced in integers and the
/// offset `u 4^k / 2^level` is a power-of-two rescaling.
pub fn weierstrass_dyadic(level: u32, u: f64, n: u64) -> Result<Vec<f64>> {
    if level > 30 {
        return invalid("dyadic level above 30 is not supported");
    }
    ensure_finite("u", u)?;
    let len = 1u64 << level;
    let mask = len - 1;
    let inv_len = 1.0 / len as f64;
    let terms = n.min(EFFECTIVE_TERMS) as u32;
    // per term: (4^k mod 2^level, frac(u 4^k / 2^level), 2^-k)
    let coeffs: Vec<(u64, f64, f64)> = (1..=terms)
        .map(|k| {
            let pow_mod = if 2 * k >= level { 0 } else { (1u64 << (2 * k)) & mask };
            let shifted = u * 2f64.powi(2 * k as i32 - level as i32);
            (pow_mod, shifted - shifted.floor(), 0.5f64.powi(k as i32))
        })
        .collect();
    Ok((0..len)
        .into_par_iter()
        .map(|i| {
            let mut acc = CompensatedSum::new();
            for &(pow_mod, frac_u, amp) in &coeffs {
                let a = ((pow_mod * i) & mask) as f64 * inv_len;
                let ph = a + frac_u;
                acc.add((TAU * (ph - ph.floor())).cos() * amp);
            }
            acc.value()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_geometric() {
        for n in [1, 5, 30] {
            let w = eval_weierstrass(0.0, n).unwrap();
            assert!((w - (1.0 - 0.5f64.powi(n as i32))).abs() < 1e-15);
        }
    }

    #[test]
    fn period_two_pi() {
        let a = eval_weierstrass(0.7, 20).unwrap();
        let b = eval_weierstrass(0.7 + TAU, 20).unwrap();
        // the argument 0.7 + 2π is itself rounded, and 4^20 amplifies it
        assert!((a - b).abs() < 1e-3);
        let c = eval_weierstrass(0.7, 8).unwrap();
        let d = eval_weierstrass(0.7 + TAU, 8).unwrap();
        assert!((c - d).abs() < 1e-9);
    }

    #[test]
    fn naive_small_n() {
        let t = 1.234;
        let naive: f64 = (1..=6).map(|k| (4f64.powi(k) * t).cos() / 2f64.powi(k)).sum();
        assert!((eval_weierstrass(t, 6).unwrap() - naive).abs() < 1e-12);
    }

    #[test]
    fn dyadic_grid_matches_pointwise() {
        let level = 6;
        let u = 0.381966;
        let grid = weierstrass_dyadic(level, u, 40).unwrap();
        for i in [0usize, 1, 17, 63] {
            let s = DoubleDouble::new(i as f64, u).mul(DoubleDouble::TWO_PI);
            let s = DoubleDouble {
                hi: s.hi / 64.0,
                lo: s.lo / 64.0,
            };
            let direct = eval_weierstrass_at(s, 40);
            assert!((grid[i] - direct).abs() < 1e-12, "{i}");
        }
    }
}

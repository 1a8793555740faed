//! Double-double ("two-float") arithmetic, just enough for phase reduction.
//!
//! A [`DoubleDouble`] is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 106 bits of significand. The only operations provided are the
//! ones the evaluators need: exact products against integers, addition, and
//! the fractional part.

use std::ops::{Add, Neg, Sub};

/// `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a + b = s + e` exactly, assuming `|a| >= |b|`.
#[inline]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `a * b = p + e` exactly (FMA based).
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    /// 1/(2π) to double-double precision.
    pub const INV_TWO_PI: Self = Self {
        hi: 0.15915494309189535,
        lo: -9.839338337591243e-18,
    };

    /// 2π to double-double precision.
    pub const TWO_PI: Self = Self {
        hi: std::f64::consts::TAU,
        lo: 2.4492935982947064e-16,
    };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Exact product with an `f64` up to the final renormalisation.
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    pub fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    pub fn div(self, other: Self) -> Self {
        let q1 = self.hi / other.hi;
        let r = self - other.mul_f64(q1);
        let q2 = r.hi / other.hi;
        let r = r - other.mul_f64(q2);
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self::new(hi, lo + q3)
    }

    pub fn floor(self) -> Self {
        let fh = self.hi.floor();
        if fh == self.hi {
            // hi is an integer, so the floor is decided by lo
            let (hi, lo) = quick_two_sum(fh, self.lo.floor());
            Self { hi, lo }
        } else {
            Self { hi: fh, lo: 0.0 }
        }
    }

    /// Fractional part in `[0, 1)`, rounded to `f64`.
    pub fn fract(self) -> f64 {
        let r = self - self.floor();
        let f = r.to_f64();
        if f >= 1.0 {
            0.0
        } else if f < 0.0 {
            // can only be a rounding artefact of size ~ulp
            (f + 1.0).min(1.0 - f64::EPSILON / 2.0)
        } else {
            f
        }
    }

    /// Reduce into `[0, 1)` keeping full double-double precision.
    pub fn fract_dd(self) -> Self {
        let r = self - self.floor();
        if r.hi >= 1.0 {
            r - Self::from_f64(1.0)
        } else if r.hi < 0.0 {
            r + Self::from_f64(1.0)
        } else {
            r
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

/// `frac(k * t)` for a non-negative integer `k < 2^53` and a double-double `t`.
///
/// The product `k * t.hi` is formed exactly with a two-product, so the phase
/// error stays at the level of `k * ulp(t.lo)` even when `k * t` is ~10^12.
#[inline]
pub fn frac_mul(k: f64, t: DoubleDouble) -> f64 {
    let (p, e) = two_prod(k, t.hi);
    let pf = p - p.floor();
    let rest = e + k * t.lo;
    let f = pf + rest;
    let f = f - f.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

use crate::error::invalid;
use crate::Result;
use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Orthonormal triple `(T, e1, e2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub t: [f64; 3],
    pub e1: [f64; 3],
    pub e2: [f64; 3],
}

impl Default for Frame {
    fn default() -> Self {
        Self {
            t: [0.0, 0.0, 1.0],
            e1: [1.0, 0.0, 0.0],
            e2: [0.0, 1.0, 0.0],
        }
    }
}

impl Frame {
    /// Rows are `T`, `e1`, `e2`.
    pub fn to_matrix(&self) -> Matrix3<f64> {
        Matrix3::from_rows(&[
            Vector3::from(self.t).transpose(),
            Vector3::from(self.e1).transpose(),
            Vector3::from(self.e2).transpose(),
        ])
    }

    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        let row = |i: usize| [m[(i, 0)], m[(i, 1)], m[(i, 2)]];
        Self {
            t: row(0),
            e1: row(1),
            e2: row(2),
        }
    }

    /// `max |F Fᵀ - I|` entrywise.
    pub fn orthonormality_error(&self) -> f64 {
        let m = self.to_matrix();
        (m * m.transpose() - Matrix3::identity()).abs().max()
    }

    pub fn determinant(&self) -> f64 {
        self.to_matrix().determinant()
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormality_error() <= ORTHONORMAL_TOL && (self.determinant() - 1.0).abs() <= ORTHONORMAL_TOL
    }
}

/// Skew generator of `(T, e1, e2)_t` for `u = α + iβ`, `u_x`, gauge `a`.
pub fn generator(u: Complex64, u_x: Complex64, a: f64) -> Matrix3<f64> {
    let (ax, bx) = (u_x.re, u_x.im);
    let w = 0.5 * (u.norm_sqr() - a);
    Matrix3::new(0.0, -bx, ax, bx, 0.0, -w, -ax, w, 0.0)
}

/// `exp(S)` for skew `S` by the Rodrigues formula.
fn expm_skew(s: &Matrix3<f64>) -> Matrix3<f64> {
    let omega = Vector3::new(s[(2, 1)], s[(0, 2)], s[(1, 0)]);
    let theta = omega.norm();
    let (a, b) = if theta < 1e-4 {
        let t2 = theta * theta;
        (1.0 - t2 / 6.0 + t2 * t2 / 120.0, 0.5 - t2 / 24.0 + t2 * t2 / 720.0)
    } else {
        (theta.sin() / theta, (1.0 - theta.cos()) / (theta * theta))
    };
    Matrix3::identity() + s * a + s * s * b
}

/// Integrates `(T, e1, e2)_t = Ω(t) (T, e1, e2)` across `t_grid`.
///
/// Each step applies the exact rotation `exp(h (Ω_k + Ω_{k+1}) / 2)`, so
/// the frame stays orthonormal to rounding and the scheme is second order.
/// `u` holds `(u, u_x)` at every grid node.
pub fn frame_evolve(
    u: &[(Complex64, Complex64)],
    a: impl Fn(f64) -> f64,
    frame0: Frame,
    t_grid: &[f64],
) -> Result<Vec<Frame>> {
    if !frame0.is_orthonormal() {
        return invalid("initial frame is not orthonormal and right-handed");
    }
    if u.len() != t_grid.len() {
        return invalid("u must be sampled at every grid time");
    }
    if t_grid.is_empty() {
        return invalid("empty time grid");
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return invalid("time grid must be strictly increasing");
    }
    if u.iter()
        .any(|(v, d)| !(v.re.is_finite() && v.im.is_finite() && d.re.is_finite() && d.im.is_finite()))
    {
        return invalid("u contains non-finite samples");
    }
    let gens: Vec<Matrix3<f64>> = u
        .iter()
        .zip(t_grid)
        .map(|(&(v, d), &t)| generator(v, d, a(t)))
        .collect();
    let mut m = frame0.to_matrix();
    let mut out = Vec::with_capacity(t_grid.len());
    out.push(frame0);
    for k in 1..t_grid.len() {
        let h = t_grid[k] - t_grid[k - 1];
        let avg = (gens[k - 1] + gens[k]) * (0.5 * h);
        m = expm_skew(&avg) * m;
        out.push(Frame::from_matrix(&m));
    }
    Ok(out)
}

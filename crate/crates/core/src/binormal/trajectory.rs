use super::frame::{frame_evolve, Frame};
use crate::error::{ensure_finite, invalid};
use crate::exp_sums::nls_truncated_with_derivative;
use crate::Result;
use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub t_grid: Vec<f64>,
    #[serde(with = "crate::serde_complex::vec")]
    pub positions: Vec<Complex64>,
}

/// `∫₀ᵗ Σ_{|n|≤m} e^{i n² τ + i n x0} dτ` in closed form.
///
/// ```
/// # use riemann_lab::binormal::trajectory_leading;
/// let tr = trajectory_leading(0.3, 0, &[0.0, 1.5]).unwrap();
/// assert_eq!(tr.positions[1].re, 1.5);
/// ```
pub fn trajectory_leading(x0: f64, m: u64, t_grid: &[f64]) -> Result<Trajectory> {
    ensure_finite("x0", x0)?;
    if t_grid.iter().any(|t| !t.is_finite()) {
        return invalid("time grid must be finite");
    }
    if m > 1 << 20 {
        return invalid("m above 2^20 is not supported");
    }
    let mi = m as i64;
    let positions = t_grid
        .iter()
        .map(|&t| {
            let mut re = 0.0;
            let mut im = 0.0;
            for n in -mi..=mi {
                if n == 0 {
                    re += t;
                    continue;
                }
                let nf = n as f64;
                let k = nf * nf;
                // (e^{ikt} - 1) / (ik) · e^{inx0}
                let (s, c) = (k * t).sin_cos();
                let w = Complex64::new(s / k, (1.0 - c) / k) * Complex64::from_polar(1.0, nf * x0);
                re += w.re;
                im += w.im;
            }
            Complex64::new(re, im)
        })
        .collect();
    Ok(Trajectory {
        t_grid: t_grid.to_vec(),
        positions,
    })
}

/// Trajectory of the point `x0` under the frame dynamics driven by the
/// truncated NLS sum of order `m`.
///
/// The velocity `-β e1 + α e2` (with `u = α + iβ`) is integrated by the
/// trapezoidal rule and the displacement is read in the fixed basis
/// `(e2(0), -e1(0))`, in which a frozen frame gives velocity `u` itself. The
/// gauge is `A ≡ 2m + 1`, the spatial mean of `|u|²`, so that `m = 0` moves
/// along a straight line.
pub fn corner_trajectory(x0: f64, m: u64, t_grid: &[f64]) -> Result<Trajectory> {
    ensure_finite("x0", x0)?;
    if t_grid.iter().any(|t| !t.is_finite()) {
        return invalid("time grid must be finite");
    }
    let u: Vec<(Complex64, Complex64)> = t_grid
        .iter()
        .map(|&t| nls_truncated_with_derivative(m, t, x0))
        .collect();
    let gauge = (2 * m + 1) as f64;
    let frames = frame_evolve(&u, |_| gauge, Frame::default(), t_grid)?;
    let f0 = Frame::default();
    let (b1, b2) = (Vector3::from(f0.e1), Vector3::from(f0.e2));
    let velocity: Vec<Vector3<f64>> = frames
        .iter()
        .zip(&u)
        .map(|(f, &(v, _))| Vector3::from(f.e2) * v.re - Vector3::from(f.e1) * v.im)
        .collect();
    let mut pos = Vector3::zeros();
    let mut positions = Vec::with_capacity(t_grid.len());
    positions.push(Complex64::new(0.0, 0.0));
    for k in 1..t_grid.len() {
        let h = t_grid[k] - t_grid[k - 1];
        pos += (velocity[k - 1] + velocity[k]) * (0.5 * h);
        positions.push(Complex64::new(pos.dot(&b2), -pos.dot(&b1)));
    }
    Ok(Trajectory {
        t_grid: t_grid.to_vec(),
        positions,
    })
}

pub fn sup_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `min_φ sup_k |a_k - e^{iφ} b_k|`: the gap between two planar curves up
/// to a rotation of the plane.
pub fn aligned_sup_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let cost = |phi: f64| {
        let r = Complex64::from_polar(1.0, phi);
        a.iter().zip(b).map(|(x, y)| (x - r * y).norm()).fold(0.0, f64::max)
    };
    let tau = std::f64::consts::TAU;
    let coarse = 720;
    let best = (0..coarse)
        .map(|k| tau * k as f64 / coarse as f64)
        .min_by(|x, y| cost(*x).total_cmp(&cost(*y)))
        .unwrap_or(0.0);
    // golden-section refinement inside the neighbouring coarse cells
    let (mut lo, mut hi) = (best - tau / coarse as f64, best + tau / coarse as f64);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..60 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if cost(m1) < cost(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    cost(0.5 * (lo + hi)).min(cost(best))
}

/// `|z_h - z_{h/2}| / |z_{h/2} - z_{h/4}|` for the endpoint of
/// [`corner_trajectory`] on uniform grids with `steps`, `2 steps` and
/// `4 steps` intervals. Close to 4 for a second-order integrator.
pub fn step_convergence_ratio(x0: f64, m: u64, t_end: f64, steps: usize) -> Result<f64> {
    if steps == 0 || !(t_end > 0.0) {
        return invalid("need positive steps and t_end");
    }
    let end = |k: usize| -> Result<Complex64> {
        let g: Vec<f64> = (0..=k).map(|i| t_end * i as f64 / k as f64).collect();
        Ok(*corner_trajectory(x0, m, &g)?.positions.last().unwrap())
    };
    let (a, b, c) = (end(steps)?, end(2 * steps)?, end(4 * steps)?);
    Ok((a - b).norm() / (b - c).norm())
}

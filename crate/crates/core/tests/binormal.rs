use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riemann_lab::binormal::{corner_trajectory, frame_evolve, sup_distance, trajectory_leading, Frame};
use riemann_lab::exp_sums::{eval_r_tilde, nls_truncated_with_derivative};
use std::f64::consts::TAU;

fn grid(steps: usize, end: f64) -> Vec<f64> {
    (0..=steps).map(|k| end * k as f64 / steps as f64).collect()
}

#[test]
fn leading_trajectory_is_rotated_r_tilde() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..20 {
        let x0 = rng.random_range(0.0..TAU);
        let t = rng.random_range(-TAU..TAU);
        let m = rng.random_range(0..2000);
        let lead = trajectory_leading(x0, m, &[0.0, t]).unwrap();
        assert_eq!(lead.positions[0], Complex64::new(0.0, 0.0));
        let expected = Complex64::new(0.0, -1.0) * eval_r_tilde(x0, t, m).unwrap();
        assert!((lead.positions[1] - expected).norm() < 1e-12);
    }
}

#[test]
fn free_mode_moves_straight() {
    let g = grid(64, TAU);
    let corner = corner_trajectory(0.4, 0, &g).unwrap();
    let lead = trajectory_leading(0.4, 0, &g).unwrap();
    for ((c, l), &t) in corner.positions.iter().zip(&lead.positions).zip(&g) {
        assert!((c - Complex64::new(t, 0.0)).norm() < 1e-12);
        assert!((l - Complex64::new(t, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn leading_tail_bound() {
    let g = grid(4000, TAU);
    for x0 in [0.0, 0.1, 1.3] {
        for m in [8u64, 64, 512] {
            let a = trajectory_leading(x0, m, &g).unwrap();
            let b = trajectory_leading(x0, 2 * m, &g).unwrap();
            assert!(sup_distance(&a.positions, &b.positions) <= 4.0 / m as f64);
        }
    }
}

#[test]
fn leading_closes_at_full_period() {
    for m in [8u64, 64, 512] {
        let end = trajectory_leading(0.7, m, &[TAU]).unwrap().positions[0];
        assert!((end - Complex64::new(TAU, 0.0)).norm() <= 4.0 / m as f64);
    }
}

#[test]
fn frames_stay_in_so3() {
    let g = grid(10_000, TAU);
    let u: Vec<_> = g.iter().map(|&t| nls_truncated_with_derivative(8, t, 1.1)).collect();
    for gauge in [0.0, 17.0] {
        let frames = frame_evolve(&u, |_| gauge, Frame::default(), &g).unwrap();
        for f in &frames {
            assert!(f.orthonormality_error() <= 1e-10);
            assert!((f.determinant() - 1.0).abs() <= 1e-10);
        }
    }
}

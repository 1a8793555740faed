//! Parallel-transport frames driven by truncated NLS sums, and the
//! trajectory of a filament point.

mod frame;
mod trajectory;

pub use frame::{frame_evolve, generator, Frame, ORTHONORMAL_TOL};
pub use trajectory::{
    aligned_sup_distance, corner_trajectory, step_convergence_ratio, sup_distance, trajectory_leading, Trajectory,
};

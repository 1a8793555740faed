//! Results must not depend on the number of worker threads.

use riemann_lab::diophantine::{jarnik_count, limsup_union, LimsupSetSpec};
use riemann_lab::exp_sums::{curve_trace, eval_r};
use riemann_lab::holder::holder_exponent_estimate;
use riemann_lab::turbulence::{flatness, FlatnessMethod};

fn with_threads<T: Send>(k: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn bitwise_identical_across_thread_counts() {
    let run = || {
        let r = eval_r(0.3, 0.123456789, 1 << 20).unwrap();
        let tr = curve_trace(0.1, 0.0, 1.0, 100, 5000).unwrap();
        let u = limsup_union(&LimsupSetSpec::inverse_square_multiples(1), 1, 3000).unwrap();
        let j = jarnik_count(3.0, 1, 18);
        let h = holder_exponent_estimate(0.0, 0.6180339887498949, 6, 18, 1 << 16).unwrap();
        let f = flatness(0.0, 16, 64, 1 << 13, FlatnessMethod::Quadrature).unwrap();
        (r, tr.points, u.total_length, u.intervals.len(), j, h.alpha_fit, f.value)
    };
    let one = with_threads(1, run);
    let four = with_threads(4, run);
    let seven = with_threads(7, run);
    assert_eq!(one, four);
    assert_eq!(one, seven);
}

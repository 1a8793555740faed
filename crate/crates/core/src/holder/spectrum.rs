use super::ALPHA_MAX;
use crate::error::{ensure_finite, invalid, Error};
use crate::exp_sums::{check_terms, eval_r_grid, weierstrass_dyadic};
use crate::numeric::fit_line;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Per-box oscillations of a periodic signal on `2^level` equal boxes.
pub trait BoxSampler: Sync {
    fn box_oscillations(&self, level: u32) -> Result<Vec<f64>>;
}

/// `R_{x0}` sampled on a grid 16 times finer than the boxes; each box
/// oscillation is the sup of `|R(s) - R(anchor)|` over fine points within
/// one box width on either side of the anchor.
#[derive(Debug, Clone, Copy)]
pub struct RiemannBoxes {
    pub x0: f64,
    pub n: u64,
}

const SUB_BITS: u32 = 4;

impl BoxSampler for RiemannBoxes {
    fn box_oscillations(&self, level: u32) -> Result<Vec<f64>> {
        let fine = eval_r_grid(self.x0, level + SUB_BITS, self.n)?;
        let len = fine.len();
        let sub = 1usize << SUB_BITS;
        Ok((0..1usize << level)
            .map(|i| {
                let a = i * sub;
                let base = fine[a];
                (1..=sub)
                    .flat_map(|o| [(a + o) % len, (a + len - o) % len])
                    .map(|k| (fine[k] - base).norm())
                    .fold(0.0, f64::max)
            })
            .collect())
    }
}

/// The Weierstrass function in units of its period.
///
/// A dyadic grid would alias every high mode `4^k` onto the anchors, so the
/// offsets inside each box follow the Weyl sequence `{k φ}`; the phases stay
/// exact through integer reduction.
#[derive(Debug, Clone, Copy)]
pub struct WeierstrassBoxes {
    pub n: u64,
}

const WEYL_OFFSETS: usize = 16;

impl BoxSampler for WeierstrassBoxes {
    fn box_oscillations(&self, level: u32) -> Result<Vec<f64>> {
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let base = weierstrass_dyadic(level, 0.0, self.n)?;
        let mut osc = vec![0.0f64; base.len()];
        let offsets = (1..=WEYL_OFFSETS).map(|k| (k as f64 * golden).fract()).chain([1.0]);
        for u in offsets {
            for sign in [1.0, -1.0] {
                let shifted = weierstrass_dyadic(level, sign * u, self.n)?;
                for ((o, s), b) in osc.iter_mut().zip(&shifted).zip(&base) {
                    *o = o.max((s - b).abs());
                }
            }
        }
        Ok(osc)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaBins {
    pub centers: Vec<f64>,
    pub width: f64,
}

impl Default for AlphaBins {
    /// Centres `0.45, 0.50, …, 1.60`, width `0.05`.
    fn default() -> Self {
        Self {
            centers: (9..=32).map(|k| k as f64 * 0.05).collect(),
            width: 0.05,
        }
    }
}

impl AlphaBins {
    pub fn index_of(&self, alpha: f64) -> Option<usize> {
        let half = self.width / 2.0;
        self.centers
            .iter()
            .position(|&c| alpha >= c - half - 1e-12 && alpha < c + half - 1e-12)
    }

    pub fn index_of_center(&self, center: f64) -> Option<usize> {
        self.centers.iter().position(|&c| (c - center).abs() < 1e-9)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub bins: AlphaBins,
    /// `log2 N_j(α) / j`, or `-∞` (null in JSON) for empty bins.
    pub d_estimates: Vec<f64>,
    pub counts: Vec<u64>,
    /// Boxes whose exponent fell below or above every bin.
    pub below: u64,
    pub above: u64,
    /// Extreme box exponents after clipping.
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub j: u32,
    /// Slope of the median oscillation across the calibration scales.
    pub typical_exponent: f64,
    /// Amplitude `C` in `osc ≈ C h^α`, fitted on the calibration scales.
    pub amplitude: f64,
    pub calibration_levels: (u32, u32),
}

impl SpectrumTable {
    pub fn d_at(&self, center: f64) -> Option<f64> {
        self.bins.index_of_center(center).map(|i| self.d_estimates[i])
    }
}

/// Number of coarser scales used to calibrate the amplitude.
const CALIBRATION_DEPTH: u32 = 8;

fn median(v: &mut [f64]) -> f64 {
    v.sort_unstable_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Coarse-grained spectrum at scale `2^-j`.
///
/// Box exponents are `α_i = log(osc_i / C) / log(2^-j)`, where the amplitude
/// `C` comes from a power-law fit of the median oscillation over the levels
/// `j - 8 ..= j`. Without it the `O(1)` prefactor shifts every exponent by
/// `log2 C / j`, which is not small at `j ≈ 18`.
pub fn spectrum_from_sampler<B: BoxSampler>(sampler: &B, j: u32, bins: &AlphaBins) -> Result<SpectrumTable> {
    if j <= CALIBRATION_DEPTH {
        return invalid(format!("j must exceed {CALIBRATION_DEPTH}"));
    }
    if bins.centers.is_empty() || !(bins.width > 0.0) {
        return invalid("bins must be non-empty with positive width");
    }
    let levels: Vec<u32> = (j - CALIBRATION_DEPTH..=j).collect();
    let mut finest = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &l in &levels {
        let osc = sampler.box_oscillations(l)?;
        let mut logs: Vec<f64> = osc.iter().map(|o| o.log2()).collect();
        let med = median(&mut logs);
        if !med.is_finite() {
            return Err(Error::DegenerateFit(format!(
                "median oscillation vanishes at level {l}"
            )));
        }
        xs.push(-(l as f64));
        ys.push(med);
        if l == j {
            finest = osc;
        }
    }
    let fit = fit_line(&xs, &ys).ok_or_else(|| Error::DegenerateFit("calibration fit".into()))?;
    let log2_c = fit.intercept;
    let mut counts = vec![0u64; bins.centers.len()];
    let (mut below, mut above) = (0u64, 0u64);
    let lowest = bins.centers.iter().copied().fold(f64::INFINITY, f64::min);
    let (mut alpha_min, mut alpha_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for o in finest {
        let alpha = ((o.log2() - log2_c) / -(j as f64)).clamp(0.0, ALPHA_MAX);
        alpha_min = alpha_min.min(alpha);
        alpha_max = alpha_max.max(alpha);
        match bins.index_of(alpha) {
            Some(i) => counts[i] += 1,
            None if alpha < lowest => below += 1,
            None => above += 1,
        }
    }
    let d_estimates = counts
        .iter()
        .map(|&c| {
            if c == 0 {
                f64::NEG_INFINITY
            } else {
                (c as f64).log2() / j as f64
            }
        })
        .collect();
    Ok(SpectrumTable {
        bins: bins.clone(),
        d_estimates,
        counts,
        below,
        above,
        alpha_min,
        alpha_max,
        j,
        typical_exponent: fit.slope,
        amplitude: 2f64.powf(log2_c),
        calibration_levels: (levels[0], j),
    })
}

/// Spectrum of `R_{x0}` on `grid_size = 2^j` boxes.
pub fn spectrum_estimate(x0: f64, grid_size: u64, j: u32, bins: &AlphaBins, n: u64) -> Result<SpectrumTable> {
    ensure_finite("x0", x0)?;
    check_terms(n)?;
    if !grid_size.is_power_of_two() || grid_size < 1 << 14 {
        return invalid("grid size must be a power of two, at least 2^14");
    }
    if grid_size != 1u64 << j {
        return invalid(format!("grid size must equal 2^j = {}", 1u64 << j.min(63)));
    }
    if j > 24 {
        return invalid("j above 24 is not supported");
    }
    spectrum_from_sampler(&RiemannBoxes { x0, n }, j, bins)
}

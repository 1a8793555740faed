use crate::output::{num, Report};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riemann_lab::binormal::{aligned_sup_distance, corner_trajectory, trajectory_leading};
use riemann_lab::diophantine::{
    continued_fraction, duffin_schaeffer_partial_sums, irrationality_exponent_estimate, jarnik_box_dimension,
    limsup_union, ExponentEstimate, LimsupSetSpec, Radius,
};
use riemann_lab::exp_sums::{curve_trace, gauss_sum, SeriesKind, SeriesParams};
use riemann_lab::holder::{holder_exponent_estimate, rational_scaling_fit, spectrum_estimate, AlphaBins};
use riemann_lab::turbulence::{flatness_curve, frisch_parisi_check, structure_function_exponents};
use riemann_lab::{Error, Result};
use serde::Serialize;
use serde_json::json;

fn z(v: Complex64) -> [serde_json::Value; 2] {
    [num(v.re), num(v.im)]
}

/// Parses `P/Q` or a bare integer `P` (then `Q = 1`).
pub fn parse_rational(s: &str) -> std::result::Result<(i64, u64), String> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: u64 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if q == 0 {
        return Err("denominator must be positive".into());
    }
    Ok((p, q))
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    R,
    RTilde,
    Weierstrass,
}

/// Columns: kind, x0, t, n, re, im, tail_bound.
#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    /// Truncation: terms 0 < |n| ≤ N.
    #[arg(long = "N", default_value_t = 100_000)]
    pub n: u64,
    #[arg(long, value_enum, default_value = "r")]
    pub kind: Kind,
}

pub fn eval(a: &EvalArgs) -> Result<Report> {
    let kind = match a.kind {
        Kind::R => SeriesKind::R,
        Kind::RTilde => SeriesKind::RTilde,
        Kind::Weierstrass => SeriesKind::Weierstrass,
    };
    let params = SeriesParams {
        kind,
        x0: a.x0,
        n: a.n,
        eps: 2.0 / a.n as f64,
    };
    let v = params.eval(a.t)?;
    let mut r = Report::new(vec!["kind", "x0", "t", "n", "re", "im", "tail_bound"]);
    let [re, im] = z(v);
    r.push(vec![
        json!(a.kind),
        num(a.x0),
        num(a.t),
        json!(a.n),
        re,
        im,
        num(params.tail_bound()),
    ]);
    r.summary = format!("value = {} + {}i", v.re, v.im);
    Ok(r)
}

/// Samples of the curve `R̃_{x0}` on a uniform grid. Columns: t, re, im.
#[derive(Debug, Args, Serialize)]
pub struct TraceArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t_start: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU, allow_negative_numbers = true)]
    pub t_end: f64,
    #[arg(long, default_value_t = 2001)]
    pub samples: usize,
    #[arg(long = "N", default_value_t = 10_000)]
    pub n: u64,
}

pub fn trace(a: &TraceArgs) -> Result<Report> {
    let tr = curve_trace(a.x0, a.t_start, a.t_end, a.samples, a.n)?;
    let mut r = Report::new(vec!["t", "re", "im"]);
    for (&t, &p) in tr.t_grid.iter().zip(&tr.points) {
        let [re, im] = z(p);
        r.push(vec![num(t), re, im]);
    }
    r.summary = format!("{} points, x0 = {}", tr.points.len(), a.x0);
    Ok(r)
}

/// Quadratic Gauss sum. Columns: p, b, q, re, im, modulus, zero_class.
#[derive(Debug, Args, Serialize)]
pub struct GaussArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: i64,
    #[arg(long)]
    pub q: u64,
}

pub fn gauss(a: &GaussArgs) -> Result<Report> {
    let g = gauss_sum(a.p, a.b, a.q)?;
    let mut r = Report::new(vec!["p", "b", "q", "re", "im", "modulus", "zero_class"]);
    let [re, im] = z(g.value);
    r.push(vec![
        json!(a.p),
        json!(a.b),
        json!(a.q),
        re,
        im,
        num(g.modulus),
        json!(g.zero_class),
    ]);
    r.summary = format!(
        "G({},{},{}) = {:.12} + {:.12}i, |G| = {:.12}, class {}",
        a.p,
        a.b,
        a.q,
        g.value.re,
        g.value.im,
        g.modulus,
        if g.zero_class { "zero" } else { "nonzero" }
    );
    Ok(r)
}

/// Continued fraction. Columns: k, a, p, q, residual, mu.
#[derive(Debug, Args, Serialize)]
pub struct CfArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
}

pub fn cf(a: &CfArgs) -> Result<Report> {
    let cf = continued_fraction(a.t, a.depth)?;
    let mut r = Report::new(vec!["k", "a", "p", "q", "residual", "mu"]);
    for (k, (c, &coef)) in cf.convergents.iter().zip(&cf.coefficients).enumerate() {
        r.push(vec![
            json!(k),
            json!(coef),
            json!(c.p),
            json!(c.q),
            num(c.residual),
            c.mu.map_or(json!(""), num),
        ]);
    }
    let estimate = match irrationality_exponent_estimate(&cf) {
        Ok(ExponentEstimate::Rational { p, q }) => format!("rational {p}/{q}, μ undefined"),
        Ok(ExponentEstimate::Irrational { estimate, .. }) => format!("μ̂ = {estimate:.4}"),
        Err(e) => format!("no estimate ({e})"),
    };
    r.summary = format!(
        "{} convergents, stop {:?}, {estimate}",
        cf.convergents.len(),
        cf.termination
    );
    r.extra = json!({ "termination": cf.termination, "resolution": cf.resolution });
    Ok(r)
}

/// Radius `ψ(q) = scale · q^{-exponent}` on denominators divisible by `modulus`.
#[derive(Debug, Args, Serialize)]
pub struct RadiusArgs {
    #[arg(long, default_value_t = 2.0)]
    pub exponent: f64,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Keep only denominators divisible by this (1 keeps all).
    #[arg(long, default_value_t = 4)]
    pub modulus: u64,
}

impl RadiusArgs {
    fn spec(&self) -> Result<LimsupSetSpec> {
        if !(self.scale > 0.0 && self.exponent.is_finite()) || self.modulus == 0 {
            return Err(Error::InvalidInput(
                "need scale > 0, finite exponent, modulus ≥ 1".into(),
            ));
        }
        Ok(LimsupSetSpec::new(
            Radius::Power {
                scale: self.scale,
                exponent: self.exponent,
            },
            self.modulus,
        ))
    }
}

/// Partial sums of `Σ ψ(q)φ(q)`. Columns: x, partial_sum (at checkpoints).
#[derive(Debug, Args, Serialize)]
pub struct DiophSumArgs {
    #[command(flatten)]
    pub radius: RadiusArgs,
    #[arg(long, default_value_t = 10_000)]
    pub q_max: u64,
}

pub fn dioph_sum(a: &DiophSumArgs) -> Result<Report> {
    let rep = duffin_schaeffer_partial_sums(&a.radius.spec()?, a.q_max)?;
    let mut r = Report::new(vec!["x", "partial_sum"]);
    for &(x, s) in &rep.checkpoints {
        r.push(vec![json!(x), num(s)]);
    }
    r.summary = format!("diagnostic {:?}", rep.diagnostic);
    r.extra = json!({ "diagnostic": rep.diagnostic });
    Ok(r)
}

/// Exact union of the balls. Columns: start, end.
#[derive(Debug, Args, Serialize)]
pub struct DiophMeasureArgs {
    #[command(flatten)]
    pub radius: RadiusArgs,
    #[arg(long, default_value_t = 1)]
    pub q_min: u64,
    #[arg(long, default_value_t = 1000)]
    pub q_max: u64,
    /// Monte-Carlo points for a cross-check (0 skips it).
    #[arg(long, default_value_t = 0)]
    pub mc_samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn dioph_measure(a: &DiophMeasureArgs) -> Result<Report> {
    let u = limsup_union(&a.radius.spec()?, a.q_min, a.q_max)?;
    let mut r = Report::new(vec!["start", "end"]);
    for &(s, e) in &u.intervals {
        r.push(vec![num(s), num(e)]);
    }
    r.summary = format!("measure {} in {} intervals", u.total_length, u.intervals.len());
    if a.mc_samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let hits = (0..a.mc_samples).filter(|_| u.contains(rng.random::<f64>())).count();
        let est = hits as f64 / a.mc_samples as f64;
        let sigma = (est * (1.0 - est) / a.mc_samples as f64).sqrt();
        r.summary += &format!(", Monte Carlo {est} ± {sigma:.2e}");
        r.extra = json!({ "measure": u.total_length, "monte_carlo": est, "sigma": sigma });
    } else {
        r.extra = json!({ "measure": u.total_length });
    }
    Ok(r)
}

/// Box-counting dimension of the `μ`-approximable set. Columns: j, count.
#[derive(Debug, Args, Serialize)]
pub struct DiophDimArgs {
    #[arg(long)]
    pub mu: f64,
    /// Restrict denominators to `4Q·N`.
    #[arg(long = "Q")]
    pub big_q: Option<u64>,
    #[arg(long, default_value_t = 10)]
    pub j_min: u32,
    #[arg(long, default_value_t = 22)]
    pub j_max: u32,
}

pub fn dioph_dim(a: &DiophDimArgs) -> Result<Report> {
    let est = jarnik_box_dimension(a.big_q, a.mu, a.j_min..=a.j_max)?;
    let mut r = Report::new(vec!["j", "count"]);
    for &(j, c) in &est.counts {
        r.push(vec![json!(j), json!(c)]);
    }
    r.summary = format!("slope {:.4} (2/μ = {:.4})", est.slope, 2.0 / a.mu);
    r.extra = json!({ "slope": est.slope, "intercept": est.intercept });
    Ok(r)
}

/// Increments of `R_{P/Q}` at `p/q`. Columns: h, increment.
#[derive(Debug, Args, Serialize)]
pub struct ScalingArgs {
    /// Base point as `P/Q`.
    #[arg(long, default_value = "0", value_parser = parse_rational)]
    pub x0: (i64, u64),
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 12)]
    pub j_min: u32,
    #[arg(long, default_value_t = 30)]
    pub j_max: u32,
    #[arg(long = "N", default_value_t = 1 << 21)]
    pub n: u64,
}

pub fn scaling(a: &ScalingArgs) -> Result<Report> {
    let fit = rational_scaling_fit(a.x0, a.p, a.q, a.j_min..=a.j_max, a.n)?;
    let mut r = Report::new(vec!["h", "increment"]);
    for &(h, d) in &fit.table {
        r.push(vec![num(h), num(d)]);
    }
    r.summary = format!(
        "slope {:.4}, prefactor {:.4} (·√q = {:.4}), class {}",
        fit.slope,
        fit.prefactor,
        fit.normalized_prefactor,
        fit.classified_exponent.map_or("unclassified".into(), |e| e.to_string())
    );
    r.extra = serde_json::to_value(&fit).map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(r)
}

/// Pointwise Hölder exponent. Columns: h, osc.
#[derive(Debug, Args, Serialize)]
pub struct HolderArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 6)]
    pub j_min: u32,
    #[arg(long, default_value_t = 26)]
    pub j_max: u32,
    #[arg(long = "N", default_value_t = 1 << 18)]
    pub n: u64,
}

pub fn holder(a: &HolderArgs) -> Result<Report> {
    let est = holder_exponent_estimate(a.x0, a.t, a.j_min, a.j_max, a.n)?;
    let mut r = Report::new(vec!["h", "osc"]);
    for &(h, o) in &est.table {
        r.push(vec![num(h), num(o)]);
    }
    r.summary = format!(
        "alpha_fit {:.4}, residual {:.3}{}",
        est.alpha_fit,
        est.residual,
        if est.flagged { " (flagged)" } else { "" }
    );
    r.extra = json!({ "alpha_fit": est.alpha_fit, "residual": est.residual, "flagged": est.flagged });
    Ok(r)
}

/// Coarse spectrum of singularities. Columns: alpha_bin, d_hat, count.
#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    /// Number of boxes; must equal 2^j.
    #[arg(long, default_value_t = 1 << 18)]
    pub grid: u64,
    #[arg(long, default_value_t = 18)]
    pub j: u32,
    #[arg(long = "N", default_value_t = 1 << 21)]
    pub n: u64,
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Report> {
    let t = spectrum_estimate(a.x0, a.grid, a.j, &AlphaBins::default(), a.n)?;
    let mut r = Report::new(vec!["alpha_bin", "d_hat", "count"]);
    for ((&c, &d), &n) in t.bins.centers.iter().zip(&t.d_estimates).zip(&t.counts) {
        r.push(vec![num(c), num(d), json!(n)]);
    }
    r.summary = format!(
        "box exponents in [{:.3}, {:.3}], typical {:.3}",
        t.alpha_min, t.alpha_max, t.typical_exponent
    );
    r.extra = json!({
        "below": t.below, "above": t.above, "alpha_min": t.alpha_min, "alpha_max": t.alpha_max,
        "typical_exponent": t.typical_exponent, "amplitude": t.amplitude,
    });
    Ok(r)
}

/// Flatness `F(2^k)`. Columns: n_cut, quadrature, convolution.
#[derive(Debug, Args, Serialize)]
pub struct FlatnessArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 2)]
    pub k_min: u32,
    #[arg(long, default_value_t = 8)]
    pub k_max: u32,
    /// Upper band edge as a multiple of the cutoff.
    #[arg(long, default_value_t = 4)]
    pub m_factor: u64,
}

pub fn flatness(a: &FlatnessArgs) -> Result<Report> {
    if a.k_min > a.k_max {
        return Err(Error::InvalidInput("k_min must not exceed k_max".into()));
    }
    let ks: Vec<u32> = (a.k_min..=a.k_max).collect();
    let c = flatness_curve(a.x0, &ks, a.m_factor)?;
    let mut r = Report::new(vec!["n_cut", "quadrature", "convolution"]);
    for ((&n, &q), &v) in c.n_values.iter().zip(&c.quadrature).zip(&c.convolution) {
        r.push(vec![json!(n), num(q), num(v)]);
    }
    r.summary = format!("growth N^{:.3}, method gap {:.1e}", c.growth_exponent, c.method_gap);
    r.extra = json!({ "growth_exponent": c.growth_exponent, "method_gap": c.method_gap });
    Ok(r)
}

fn default_orders() -> Vec<f64> {
    (1..=12).map(|k| 0.5 * k as f64).collect()
}

/// Structure-function exponents. Columns: p, zeta, residual.
#[derive(Debug, Args, Serialize)]
pub struct SfArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    /// Orders, comma separated (default 0.5, 1, ..., 6).
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[arg(long, default_value_t = 8)]
    pub j_min: u32,
    #[arg(long, default_value_t = 18)]
    pub j_max: u32,
    #[arg(long, default_value_t = 20)]
    pub grid_level: u32,
    #[arg(long = "N", default_value_t = 1 << 21)]
    pub n: u64,
}

impl SfArgs {
    fn orders(&self) -> Vec<f64> {
        if self.p.is_empty() {
            default_orders()
        } else {
            self.p.clone()
        }
    }
}

pub fn sf(a: &SfArgs) -> Result<Report> {
    let t = structure_function_exponents(a.x0, &a.orders(), a.j_min..=a.j_max, a.grid_level, a.n)?;
    let mut r = Report::new(vec!["p", "zeta", "residual"]);
    for ((&p, &zeta), &res) in t.p.iter().zip(&t.zeta).zip(&t.residuals) {
        r.push(vec![num(p), num(zeta), num(res)]);
    }
    r.summary = format!("{} orders fitted over 2^-{}..2^-{}", t.p.len(), a.j_min, a.j_max);
    Ok(r)
}

/// Legendre transform of `ζ(p)` against the spectrum.
/// Columns: alpha, d_hat, legendre, theory, argmin_p, boundary.
#[derive(Debug, Args, Serialize)]
pub struct FpArgs {
    #[command(flatten)]
    pub sf: SfArgs,
    #[arg(long, default_value_t = 1 << 18)]
    pub grid: u64,
    #[arg(long, default_value_t = 18)]
    pub j: u32,
    #[arg(long, default_value_t = 0.55)]
    pub alpha_lo: f64,
    #[arg(long, default_value_t = 0.70)]
    pub alpha_hi: f64,
}

pub fn fp_check(a: &FpArgs) -> Result<Report> {
    let s = &a.sf;
    let table = structure_function_exponents(s.x0, &s.orders(), s.j_min..=s.j_max, s.grid_level, s.n)?;
    let spec = spectrum_estimate(s.x0, a.grid, a.j, &AlphaBins::default(), s.n)?;
    let rep = frisch_parisi_check(&spec, &table, (a.alpha_lo, a.alpha_hi))?;
    let mut r = Report::new(vec!["alpha", "d_hat", "legendre", "theory", "argmin_p", "boundary"]);
    for row in &rep.rows {
        r.push(vec![
            num(row.alpha),
            num(row.d_hat),
            num(row.legendre),
            num(row.theory),
            num(row.argmin_p),
            json!(row.boundary),
        ]);
    }
    r.summary = format!(
        "max deviation {:.4} from d_hat, {:.4} from 4α-2",
        rep.max_dev_measured, rep.max_dev_theory
    );
    r.extra = json!({ "max_dev_measured": rep.max_dev_measured, "max_dev_theory": rep.max_dev_theory });
    Ok(r)
}

/// Binormal-flow trajectories. Columns: t, lead_re, lead_im, corner_re, corner_im.
#[derive(Debug, Args, Serialize)]
pub struct TrajArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long = "M", default_value_t = 8)]
    pub m: u64,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    pub t_end: f64,
    #[arg(long, default_value_t = 4000)]
    pub steps: usize,
}

pub fn bf_traj(a: &TrajArgs) -> Result<Report> {
    if a.steps == 0 || !(a.t_end > 0.0) {
        return Err(Error::InvalidInput("need steps ≥ 1 and t_end > 0".into()));
    }
    let grid: Vec<f64> = (0..=a.steps).map(|k| a.t_end * k as f64 / a.steps as f64).collect();
    let lead = trajectory_leading(a.x0, a.m, &grid)?;
    let corner = corner_trajectory(a.x0, a.m, &grid)?;
    let mut r = Report::new(vec!["t", "lead_re", "lead_im", "corner_re", "corner_im"]);
    for ((&t, &l), &c) in grid.iter().zip(&lead.positions).zip(&corner.positions) {
        let [lr, li] = z(l);
        let [cr, ci] = z(c);
        r.push(vec![num(t), lr, li, cr, ci]);
    }
    let gap = aligned_sup_distance(&corner.positions, &lead.positions);
    r.summary = format!("sup gap after alignment {gap:.4}");
    r.extra = json!({ "aligned_gap": gap });
    Ok(r)
}

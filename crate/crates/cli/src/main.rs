//! Command-line front end for the `riemann-lab` experiments.
//!
//! Every subcommand writes a CSV (with a `#` header echoing the flags), a JSON
//! mirror and a run manifest with SHA-256 digests of both.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use commands::*;
use output::Report;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// Environment variable naming the default output directory.
const OUT_ENV: &str = "RIEMANN_LAB_OUT";

#[derive(Parser)]
#[command(
    name = "riemann-lab",
    version,
    about = "Experiments on Riemann-type exponential sums"
)]
struct Cli {
    /// Output CSV path. Defaults to `$RIEMANN_LAB_OUT/<command>.csv`,
    /// or `riemann-lab-out/<command>.csv`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(untagged)]
enum Command {
    /// Evaluate R, R̃ or the Weierstrass sum at one point.
    Eval(EvalArgs),
    /// Sample the curve R̃_{x0} on [t_start, t_end].
    Trace(TraceArgs),
    /// Quadratic Gauss sum G(p, b, q).
    Gauss(GaussArgs),
    /// Continued fraction and irrationality-exponent estimate.
    Cf(CfArgs),
    /// Partial sums of Σ ψ(q)φ(q) with a divergence diagnostic.
    DiophSum(DiophSumArgs),
    /// Exact Lebesgue measure of a finite union of balls B(p/q, ψ(q)).
    DiophMeasure(DiophMeasureArgs),
    /// Box-counting dimension of the μ-approximable set.
    DiophDim(DiophDimArgs),
    /// Increment scaling of R_{P/Q} at a rational p/q.
    Scaling(ScalingArgs),
    /// Pointwise Hölder exponent from oscillations.
    Holder(HolderArgs),
    /// Coarse spectrum of singularities d̂(α).
    Spectrum(SpectrumArgs),
    /// Flatness of dyadic high-pass bands.
    Flatness(FlatnessArgs),
    /// Structure-function exponents ζ(p).
    Sf(SfArgs),
    /// Legendre transform of ζ(p) compared with the spectrum.
    FpCheck(FpArgs),
    /// Binormal-flow corner trajectory against its leading term.
    BfTraj(TrajArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Trace(_) => "trace",
            Command::Gauss(_) => "gauss",
            Command::Cf(_) => "cf",
            Command::DiophSum(_) => "dioph-sum",
            Command::DiophMeasure(_) => "dioph-measure",
            Command::DiophDim(_) => "dioph-dim",
            Command::Scaling(_) => "scaling",
            Command::Holder(_) => "holder",
            Command::Spectrum(_) => "spectrum",
            Command::Flatness(_) => "flatness",
            Command::Sf(_) => "sf",
            Command::FpCheck(_) => "fp-check",
            Command::BfTraj(_) => "bf-traj",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::DiophMeasure(a) if a.mc_samples > 0 => Some(a.seed),
            _ => None,
        }
    }

    fn run(&self) -> riemann_lab::Result<Report> {
        match self {
            Command::Eval(a) => eval(a),
            Command::Trace(a) => trace(a),
            Command::Gauss(a) => gauss(a),
            Command::Cf(a) => cf(a),
            Command::DiophSum(a) => dioph_sum(a),
            Command::DiophMeasure(a) => dioph_measure(a),
            Command::DiophDim(a) => dioph_dim(a),
            Command::Scaling(a) => scaling(a),
            Command::Holder(a) => holder(a),
            Command::Spectrum(a) => spectrum(a),
            Command::Flatness(a) => flatness(a),
            Command::Sf(a) => sf(a),
            Command::FpCheck(a) => fp_check(a),
            Command::BfTraj(a) => bf_traj(a),
        }
    }
}

fn default_out(name: &str) -> PathBuf {
    let dir = std::env::var_os(OUT_ENV).map_or_else(|| PathBuf::from("riemann-lab-out"), PathBuf::from);
    dir.join(format!("{name}.csv"))
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let name = cli.command.name();
    let start = Instant::now();
    let report = match cli.command.run() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_numerical() { 3 } else { 2 });
        }
    };
    let elapsed = start.elapsed();
    let flags = serde_json::to_value(&cli.command).expect("flags serialize");
    let out = cli.out.unwrap_or_else(|| default_out(name));
    // the CSV echoes only flags that affect results; the manifest gets all
    let mut all_flags = flags.clone();
    all_flags["threads"] = serde_json::json!(cli.threads);
    all_flags["out"] = serde_json::json!(out.display().to_string());
    let run = output::Run {
        command: name,
        flags: &flags,
        all_flags: &all_flags,
        seed: cli.command.seed(),
    };
    match output::write_all(&out, &run, &report, elapsed) {
        Ok(manifest) => {
            println!(
                "{name}: {} [{} rows -> {}; manifest {}]",
                report.summary,
                report.rows.len(),
                out.display(),
                manifest.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", out.display());
            ExitCode::from(2)
        }
    }
}

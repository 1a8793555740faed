use super::StructureFunctionTable;
use crate::error::{invalid, Error};
use crate::holder::SpectrumTable;
use crate::Result;
use serde::{Deserialize, Serialize};

/// `inf_p { α p - ζ(p) + 1 }` and the index of the minimising `p`.
///
/// ```
/// # use riemann_lab::turbulence::legendre;
/// let p = [2.0, 4.0, 6.0];
/// let zeta = [1.5, 3.0, 4.0];
/// let (v, i) = legendre(0.6, &p, &zeta);
/// assert!((v - 0.4).abs() < 1e-12 && i == 1);
/// ```
pub fn legendre(alpha: f64, p: &[f64], zeta: &[f64]) -> (f64, usize) {
    p.iter()
        .zip(zeta)
        .map(|(&p, &z)| alpha * p - z + 1.0)
        .enumerate()
        .fold(
            (f64::INFINITY, 0),
            |best, (i, v)| if v < best.0 { (v, i) } else { best },
        )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FpRow {
    pub alpha: f64,
    pub d_hat: f64,
    pub legendre: f64,
    pub theory: f64,
    pub argmin_p: f64,
    /// The infimum sits on the first or last order supplied.
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FpReport {
    pub rows: Vec<FpRow>,
    /// `max |legendre - d_hat|` over the rows.
    pub max_dev_measured: f64,
    /// `max |legendre - (4α - 2)|` over the rows.
    pub max_dev_theory: f64,
}

/// Compares the Legendre transform of `ζ` with the spectrum on the bins
/// whose centres lie in `alpha_range`.
pub fn frisch_parisi_check(
    spectrum: &SpectrumTable,
    sf: &StructureFunctionTable,
    alpha_range: (f64, f64),
) -> Result<FpReport> {
    if sf.p.len() < 2 || sf.p.len() != sf.zeta.len() {
        return invalid("need at least two orders with matching exponents");
    }
    let rows: Vec<FpRow> = spectrum
        .bins
        .centers
        .iter()
        .zip(&spectrum.d_estimates)
        .filter(|(&a, _)| a >= alpha_range.0 - 1e-9 && a <= alpha_range.1 + 1e-9)
        .map(|(&alpha, &d_hat)| {
            let (value, i) = legendre(alpha, &sf.p, &sf.zeta);
            FpRow {
                alpha,
                d_hat,
                legendre: value,
                theory: 4.0 * alpha - 2.0,
                argmin_p: sf.p[i],
                boundary: i == 0 || i + 1 == sf.p.len(),
            }
        })
        .collect();
    if rows.is_empty() {
        return Err(Error::InsufficientOverlap(format!(
            "no spectrum bins inside [{}, {}]",
            alpha_range.0, alpha_range.1
        )));
    }
    let max_dev = |f: &dyn Fn(&FpRow) -> f64| rows.iter().map(|r| (r.legendre - f(r)).abs()).fold(0.0, f64::max);
    Ok(FpReport {
        max_dev_measured: max_dev(&|r| r.d_hat),
        max_dev_theory: max_dev(&|r| r.theory),
        rows,
    })
}

use std::f64::consts::PI;

use super::nodal::{l1_norm_exact, sign_pattern};
use super::series::FourierSeries;
use crate::error::{Error, Result};

/// Below this the quotient is reported as degenerate.
pub const MIN_DENOMINATOR: f64 = 1e-12;

/// Grid used when the caller does not specify one: `4N`, at least 64.
pub fn default_grid(max_mode: usize) -> usize {
    (4 * max_mode).max(64)
}

/// `∫(u'² − u²) = π Σ_{k≥2} (k² − 1)(a_k² + b_k²)` for a constrained series.
pub fn energy_numerator(series: &FourierSeries) -> Result<f64> {
    series.check_constraints()?;
    let sum: f64 = (2..=series.max_mode())
        .map(|k| {
            let kf = k as f64;
            (kf * kf - 1.0) * (series.a(k).powi(2) + series.b(k).powi(2))
        })
        .sum();
    Ok(PI * sum)
}

/// `∫_{−π}^{π} |u|`, with zeros located on `grid_size` samples and integrated exactly.
pub fn l1_norm(series: &FourierSeries, grid_size: usize) -> Result<f64> {
    let pattern = sign_pattern(series, grid_size)?;
    Ok(l1_norm_exact(series, &pattern))
}

/// `J(u) = ∫(u'² − u²) / (∫|u|)²`.
pub fn rayleigh_j(series: &FourierSeries, grid_size: usize) -> Result<f64> {
    let num = energy_numerator(series)?;
    let l1 = l1_norm(series, grid_size)?;
    if l1 < MIN_DENOMINATOR {
        return Err(Error::DegenerateDenominator(l1));
    }
    Ok(num / (l1 * l1))
}

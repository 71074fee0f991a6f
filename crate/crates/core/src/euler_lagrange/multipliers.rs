use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{l1_norm_exact, sign_moments, sign_pattern, FourierSeries, MIN_DENOMINATOR};

/// Coefficients of `−u'' − u = m·sgn(u) + λ₀ + λ₁ cos θ + λ₂ sin θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Multipliers {
    pub m: f64,
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl Multipliers {
    pub fn new(m: f64, lambda0: f64, lambda1: f64, lambda2: f64) -> Self {
        Multipliers { m, lambda0, lambda1, lambda2 }
    }

    /// Only `m` nonzero, as for the minimizer.
    pub fn trivial(m: f64) -> Self {
        Self::new(m, 0.0, 0.0, 0.0)
    }

    /// `m + λ₀ > 0` and `λ₀ − m < 0`.
    pub fn signs_admissible(&self) -> bool {
        self.m + self.lambda0 > 0.0 && self.lambda0 - self.m < 0.0
    }
}

/// Projections of the Euler equation onto `1, cos, sin`.
pub fn compute_multipliers(u: &FourierSeries, grid_size: usize, m: f64) -> Result<Multipliers> {
    let pattern = sign_pattern(u, grid_size)?;
    let l1 = l1_norm_exact(u, &pattern);
    if l1 < MIN_DENOMINATOR {
        return Err(Error::DegenerateDenominator(l1));
    }
    let (c, s) = sign_moments(&pattern, 1);
    Ok(Multipliers {
        m,
        lambda0: -m / (2.0 * PI) * c[0],
        lambda1: -m / PI * c[1],
        lambda2: -m / PI * s[1],
    })
}

/// Translates `u` so that `λ₂ = 0`, choosing the root with `λ₁ ≤ 0`.
///
/// Under `u ↦ u(· + a)` the pair rotates: `λ₂(a) = λ₂ cos a − λ₁ sin a`.
/// Returns the shift together with the translated series.
pub fn phase_align(u: &FourierSeries, grid_size: usize, m: f64) -> Result<(f64, FourierSeries, Multipliers)> {
    let mult = compute_multipliers(u, grid_size, m)?;
    if mult.lambda1.hypot(mult.lambda2) < 1e-14 {
        return Ok((0.0, u.clone(), mult));
    }
    // the root of λ₂(a) at which λ₁(a) = −√(λ₁² + λ₂²)
    let a = (-mult.lambda2).atan2(-mult.lambda1).rem_euclid(2.0 * PI);
    let shifted = u.translated(a);
    let aligned = compute_multipliers(&shifted, grid_size, m)?;
    Ok((a, shifted, aligned))
}

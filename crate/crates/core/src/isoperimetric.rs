//! Planar star-shaped sets `r = 1 + u(θ)` near the unit disk.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{rayleigh_j, sign_pattern, FourierSeries};
use crate::MINIMUM_VALUE;

/// Threshold the limit constant has to beat.
pub const STADIUM_CONSTANT: f64 = 0.406;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialShape {
    u: FourierSeries,
    grid_size: usize,
}

impl RadialShape {
    /// Requires `1 + u > 0` on the grid.
    pub fn new(u: FourierSeries, grid_size: usize) -> Result<Self> {
        let samples = u.sample(grid_size)?;
        if let Some(j) = samples.values().iter().position(|&v| !(1.0 + v > 0.0)) {
            return Err(Error::InvalidInput(format!(
                "radius 1 + u is not positive at θ = {}",
                samples.theta(j)
            )));
        }
        Ok(RadialShape { u, grid_size })
    }

    pub fn perturbation(&self) -> &FourierSeries {
        &self.u
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }
}

/// `(π/2) ∫[√((1+u)² + u'²) − 1] / (½ ∫|(1+u)² − 1|)²`.
///
/// The perimeter excess is integrated on the grid in the cancellation-free form
/// `x / (√(1+x) + 1)`, `x = 2u + u² + u'²`. Since `2 + u > 0`, the sign of
/// `(1+u)² − 1` is that of `u`, so the area term is integrated exactly between nodes.
pub fn shape_h(shape: &RadialShape) -> Result<f64> {
    let u = &shape.u;
    let m = shape.grid_size;
    let vals = u.sample(m)?;
    let dvals = u.sample_derivative(m)?;
    let excess: f64 = vals
        .values()
        .iter()
        .zip(dvals.values())
        .map(|(&v, &d)| {
            let x = 2.0 * v + v * v + d * d;
            x / ((1.0 + x).sqrt() + 1.0)
        })
        .sum::<f64>()
        * vals.step();
    let w = u.scaled(2.0).add_scaled(1.0, &u.product(u));
    let pattern = sign_pattern(u, m)?;
    let area: f64 = pattern.arcs().iter().map(|&(a, b, s)| s * w.integral(a, b)).sum();
    let half = 0.5 * area;
    if half * half < 1e-300 || half <= 0.0 {
        return Err(Error::DegenerateDenominator(area));
    }
    Ok(0.5 * PI * excess / (half * half))
}

/// Residuals of the area and barycenter constraints:
/// `(1/2π)∫(1+u)² − 1`, `∫cos θ (1+u)³`, `∫sin θ (1+u)³`, all exact in coefficient space.
pub fn nl_constraints(shape: &RadialShape) -> [f64; 3] {
    let u = &shape.u;
    let area = (4.0 * PI * u.a(0) + u.l2_norm_sq()) / (2.0 * PI);
    let r = u.add_scaled(1.0, &FourierSeries::zeros(0).with_mode(0, 1.0, 0.0));
    let cube = r.product(&r).product(&r);
    [area, PI * cube.a(1), PI * cube.b(1)]
}

/// `εv + c` with the constant `c` chosen so the area is exactly `π`.
///
/// With `t = 1 + c`, `μ = ∫v/2π`, `q = ∫v²/2π` the condition is
/// `t² + 2εμ t + ε²q − 1 = 0`; the larger root is taken.
pub fn perturb_project(v: &FourierSeries, epsilon: f64, grid_size: usize) -> Result<RadialShape> {
    if !epsilon.is_finite() {
        return Err(Error::NonFinite("epsilon".into()));
    }
    let mu = v.a(0);
    let q = v.l2_norm_sq() / (2.0 * PI);
    let disc = 1.0 + epsilon * epsilon * (mu * mu - q);
    if disc < 0.0 {
        return Err(Error::InvalidInput(format!("epsilon {epsilon} too large: no real area correction")));
    }
    let root = disc.sqrt();
    let c = epsilon * epsilon * (mu * mu - q) / (root + 1.0) - epsilon * mu;
    let u = v.scaled(epsilon);
    let u = u.clone().with_mode(0, u.a(0) + c, 0.0);
    RadialShape::new(u, grid_size).map_err(|e| Error::InvalidInput(format!("epsilon {epsilon} too large: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    /// `(π/4)·m = π/(8(4−π))`.
    pub pi4m: f64,
    pub threshold: f64,
    pub threshold_ok: bool,
    /// `(π/4)·3/(2π) = 3/8` from the Cauchy–Schwarz estimate alone.
    pub fallback: f64,
    pub fallback_ok: bool,
}

pub fn bound_check() -> BoundCheck {
    let pi4m = 0.25 * PI * MINIMUM_VALUE;
    let fallback = 0.25 * PI * crate::minimizer::cauchy_schwarz_bound();
    BoundCheck {
        pi4m,
        threshold: STADIUM_CONSTANT,
        threshold_ok: pi4m > STADIUM_CONSTANT,
        fallback,
        fallback_ok: fallback > STADIUM_CONSTANT,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RichardsonReport {
    pub epsilons: [f64; 3],
    pub values: [f64; 3],
    /// Eliminates the `ε` and `ε²` terms.
    pub limit: f64,
    /// `(π/4)·J(v)`.
    pub target: f64,
}

/// `H(εv)` at `ε, ε/2, ε/4` and the extrapolated `ε → 0` limit.
pub fn richardson_limit(v: &FourierSeries, epsilon: f64, grid_size: usize) -> Result<RichardsonReport> {
    let epsilons = [epsilon, 0.5 * epsilon, 0.25 * epsilon];
    let mut values = [0.0; 3];
    for (slot, &e) in values.iter_mut().zip(&epsilons) {
        *slot = shape_h(&perturb_project(v, e, grid_size)?)?;
    }
    let limit = (values[0] - 6.0 * values[1] + 8.0 * values[2]) / 3.0;
    let target = 0.25 * PI * rayleigh_j(&v.project_constraints(), grid_size)?;
    Ok(RichardsonReport { epsilons, values, limit, target })
}

use serde::Serialize;

use super::{
    interval_relation_residual, nodal_partition, phase_align, three_interval_system, Multipliers, NodalPartition,
    Sign,
};
use crate::error::{Error, Result};
use crate::fourier::{l1_norm, rayleigh_j, FourierSeries, MIN_DENOMINATOR};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreeIntervalSummary {
    pub lengths: [f64; 4],
    pub det: f64,
    pub sum_first: Option<f64>,
    pub sum_last: Option<f64>,
    /// Cross-multiplied `sum_first`/`sum_last` relations evaluated at the multipliers.
    pub sum_residuals: (f64, f64),
}

/// Euler–Lagrange data read off a numerical minimizer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    /// `J(u)`, used as `m` once `∫|u| = 1`.
    pub value: f64,
    /// Translation applied to make `λ₂` vanish.
    pub shift: f64,
    pub multipliers: Multipliers,
    pub partition: NodalPartition,
    pub lengths: Vec<f64>,
    /// Interval relation for every cyclically consecutive pair.
    pub relation_residuals: Vec<f64>,
    pub three_interval: Option<ThreeIntervalSummary>,
}

impl StructureReport {
    pub fn max_relation_residual(&self) -> f64 {
        self.relation_residuals.iter().fold(0.0, |a, r| a.max(r.abs()))
    }
}

/// Normalizes `u` to `∫|u| = 1`, aligns it, and evaluates partition, multipliers and relations.
pub fn analyze_structure(u: &FourierSeries, grid_size: usize) -> Result<StructureReport> {
    let l1 = l1_norm(u, grid_size)?;
    if l1 < MIN_DENOMINATOR {
        return Err(Error::DegenerateDenominator(l1));
    }
    let u = u.scaled(1.0 / l1);
    let value = rayleigh_j(&u, grid_size)?;
    let (shift, aligned, multipliers) = phase_align(&u, grid_size, value)?;
    let partition = nodal_partition(&aligned, grid_size)?;
    let lengths = partition.lengths();
    let n = partition.count();
    let relation_residuals = (0..n)
        .map(|i| {
            let (a, _) = partition.interval(i);
            let (l1, l2) = (lengths[i], lengths[(i + 1) % n]);
            interval_relation_residual(l1, l2, a, a + l1 + l2, partition.sign(i), &multipliers)
        })
        .collect();
    let three_interval = if n >= 4 {
        let p = partition.starting_with(Sign::Positive);
        let l = p.lengths();
        let quad = [l[0], l[1], l[2], l[3]];
        three_interval_system(quad, p.endpoints()[0], 1e-9).ok().map(|sys| ThreeIntervalSummary {
            lengths: quad,
            det: sys.det,
            sum_first: sys.sum_first,
            sum_last: sys.sum_last,
            sum_residuals: sys.sum_residuals(&multipliers),
        })
    } else {
        None
    };
    Ok(StructureReport { value, shift, multipliers, partition, lengths, relation_residuals, three_interval })
}

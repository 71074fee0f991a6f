//! Grid certification of the scalar inequalities behind the nodal-length
//! estimates.
//!
//! Every claim is reduced to a margin `φ` that must be positive. A sample
//! `x_i` passes when `φ(x_i) > L_i·h`, where `h` is the largest axis step and
//! `L_i` is twice the steepest finite-difference slope between `x_i` and its
//! grid neighbours. Near a boundary face on which equality holds, the rule is
//! replaced by positivity of `φ` together with a positive inward difference
//! quotient, and a sequence of probes marching into the face. This is numerical
//! evidence, not interval arithmetic.

mod catalog;
pub mod formulas;
mod scan;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use catalog::{catalog, falsified_g_bound, lookup};

use crate::error::{Error, Result};

/// Margin function; positive where the claim holds.
pub type MarginFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    /// `f < 0`, margin `−f`.
    Negative,
    /// `f ≤ g`, margin `g − f`.
    Bound,
    /// `f` increasing in the first coordinate, margin `∂₁f`.
    Increasing,
    /// `f` vanishes only on the excepted faces.
    UniqueRoot,
    /// Pointwise identity; margin `tol − |residual|`, no Lipschitz rule.
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

/// Boundary face `x[axis] = domain[axis].lower|upper` on which the margin vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub axis: usize,
    pub side: Side,
}

impl Face {
    pub fn lower(axis: usize) -> Self {
        Face { axis, side: Side::Lower }
    }

    pub fn upper(axis: usize) -> Self {
        Face { axis, side: Side::Upper }
    }
}

/// Second pass around the worst coarse sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub step: f64,
    pub half_width: f64,
}

#[derive(Clone)]
pub struct InequalitySpec {
    pub id: String,
    pub claim: String,
    pub kind: ClaimKind,
    pub variables: Vec<&'static str>,
    pub domain: Vec<(f64, f64)>,
    pub exceptions: Vec<Face>,
    pub margin: MarginFn,
    pub default_step: f64,
    pub refinement: Option<Refinement>,
    /// Identity claims only.
    pub tolerance: f64,
}

impl fmt::Debug for InequalitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InequalitySpec")
            .field("id", &self.id)
            .field("claim", &self.claim)
            .field("kind", &self.kind)
            .field("domain", &self.domain)
            .field("exceptions", &self.exceptions)
            .finish_non_exhaustive()
    }
}

impl InequalitySpec {
    pub fn arity(&self) -> usize {
        self.domain.len()
    }

    pub fn margin_at(&self, x: &[f64]) -> f64 {
        (self.margin)(x)
    }

    fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.arity()) || self.variables.len() != self.arity() {
            return Err(Error::InvalidInput(format!("{}: arity must be 1–3", self.id)));
        }
        for &(lo, hi) in &self.domain {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidInput(format!("{}: bad interval [{lo}, {hi}]", self.id)));
            }
        }
        if self.exceptions.iter().any(|f| f.axis >= self.arity()) {
            return Err(Error::InvalidInput(format!("{}: exception face outside the domain", self.id)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive,
    Violated,
}

impl Verdict {
    fn worst(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Certified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneReport {
    pub face: Face,
    /// Width of the band where the face rule replaces the margin rule.
    pub radius: f64,
    pub max_face_value: f64,
    pub min_inward_slope: f64,
    pub probes: usize,
    pub probes_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub step: f64,
    pub window: Vec<(f64, f64)>,
    pub verdict: Verdict,
    pub worst_margin: f64,
    pub worst_point: Vec<f64>,
    pub lipschitz_estimate: f64,
    pub samples: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub id: String,
    pub claim: String,
    pub verdict: Verdict,
    /// Smallest margin outside the face bands.
    pub worst_margin: f64,
    pub worst_point: Vec<f64>,
    pub grid_step: f64,
    /// `L_i` at the worst point.
    pub lipschitz_estimate: f64,
    pub lipschitz_max: f64,
    pub samples: u64,
    pub margin_rule: String,
    pub exception_zones: Vec<ZoneReport>,
    pub refinement: Option<RefinementReport>,
    /// First offending point when not certified.
    pub witness: Option<Vec<f64>>,
    pub note: Option<String>,
}

/// Scans `spec` on a uniform grid with axis steps at most `grid_step`.
pub fn certify(spec: &InequalitySpec, grid_step: f64) -> Result<CertificationReport> {
    spec.validate()?;
    if !(grid_step > 0.0 && grid_step.is_finite()) {
        return Err(Error::InvalidInput(format!("grid step {grid_step} must be positive")));
    }
    for (axis, &(lo, hi)) in spec.domain.iter().enumerate() {
        let n = ((hi - lo) / grid_step).ceil() as u64 + 1;
        if n < 100 {
            return Err(Error::InvalidInput(format!(
                "{}: step {grid_step} leaves {n} < 100 samples on axis {axis}",
                spec.id
            )));
        }
    }
    let coarse = scan::scan(spec, &spec.domain, grid_step, &spec.exceptions);
    let rule = if spec.kind == ClaimKind::Identity {
        format!("|residual| <= {:e} at every sample", spec.tolerance)
    } else {
        "phi_i > L_i*h off face bands (L_i = 2*max neighbour slope); on bands phi > 0 with positive inward slope"
            .to_string()
    };
    let mut report = CertificationReport {
        id: spec.id.clone(),
        claim: spec.claim.clone(),
        verdict: coarse.verdict,
        worst_margin: coarse.worst_margin,
        worst_point: coarse.worst_point.clone(),
        grid_step,
        lipschitz_estimate: coarse.lipschitz_at_worst,
        lipschitz_max: coarse.lipschitz_max,
        samples: coarse.samples,
        margin_rule: rule,
        exception_zones: coarse.zones.clone(),
        refinement: None,
        witness: coarse.witness.clone(),
        note: coarse.note.clone(),
    };
    if let (Some(r), false) = (spec.refinement, coarse.worst_point.is_empty()) {
        let window: Vec<(f64, f64)> = spec
            .domain
            .iter()
            .zip(&coarse.worst_point)
            .map(|(&(lo, hi), &c)| ((c - r.half_width).max(lo), (c + r.half_width).min(hi)))
            .collect();
        // only faces that survive clipping stay excepted
        let faces: Vec<Face> = spec
            .exceptions
            .iter()
            .copied()
            .filter(|f| match f.side {
                Side::Lower => window[f.axis].0 == spec.domain[f.axis].0,
                Side::Upper => window[f.axis].1 == spec.domain[f.axis].1,
            })
            .collect();
        let fine = scan::scan(spec, &window, r.step, &faces);
        report.verdict = report.verdict.worst(fine.verdict);
        if report.witness.is_none() {
            report.witness = fine.witness.clone();
        }
        report.samples += fine.samples;
        report.refinement = Some(RefinementReport {
            step: r.step,
            window,
            verdict: fine.verdict,
            worst_margin: fine.worst_margin,
            worst_point: fine.worst_point,
            lipschitz_estimate: fine.lipschitz_at_worst,
            samples: fine.samples,
        });
    }
    Ok(report)
}

/// Certifies at the spec's own default step.
pub fn certify_default(spec: &InequalitySpec) -> Result<CertificationReport> {
    certify(spec, spec.default_step)
}

/// Default step by arity.
pub fn default_step(arity: usize) -> f64 {
    match arity {
        1 => 1e-4,
        2 => 1e-3,
        _ => 2e-3,
    }
}

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::sampled::SampledFunction;
use super::transform;
use crate::error::{ensure_finite, Error, Result};

/// Tolerance used to decide whether the low modes have been removed.
pub const CONSTRAINT_TOL: f64 = 1e-14;

/// Truncated real trigonometric series
/// `u(θ) = a_0 + Σ_{k=1}^{N} (a_k cos kθ + b_k sin kθ)`.
///
/// The constant term is stored as-is (not halved).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesWire", into = "SeriesWire")]
pub struct FourierSeries {
    cos: Vec<f64>,
    // sin[0] is kept at zero so that sin[k] = b_k.
    sin: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    max_mode: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TryFrom<SeriesWire> for FourierSeries {
    type Error = Error;

    fn try_from(w: SeriesWire) -> Result<Self> {
        if w.cos.len() != w.max_mode + 1 {
            return Err(Error::InvalidInput(format!(
                "cos has {} entries, expected max_mode+1 = {}",
                w.cos.len(),
                w.max_mode + 1
            )));
        }
        FourierSeries::from_coefficients(w.cos, w.sin)
    }
}

impl From<FourierSeries> for SeriesWire {
    fn from(s: FourierSeries) -> Self {
        SeriesWire { max_mode: s.max_mode(), sin: s.sin[1..].to_vec(), cos: s.cos }
    }
}

impl FourierSeries {
    /// The zero series with modes `0..=max_mode`.
    pub fn zeros(max_mode: usize) -> Self {
        FourierSeries { cos: vec![0.0; max_mode + 1], sin: vec![0.0; max_mode + 1] }
    }

    /// `cos = [a_0, …, a_N]`, `sin = [b_1, …, b_N]`.
    pub fn from_coefficients(cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if cos.is_empty() {
            return Err(Error::InvalidInput("cosine coefficients are empty".into()));
        }
        if sin.len() + 1 != cos.len() {
            return Err(Error::InvalidInput(format!(
                "sin has {} entries, expected {}",
                sin.len(),
                cos.len() - 1
            )));
        }
        if cos.iter().chain(&sin).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("series coefficient".into()));
        }
        let mut full = Vec::with_capacity(cos.len());
        full.push(0.0);
        full.extend(sin);
        Ok(FourierSeries { cos, sin: full })
    }

    pub fn max_mode(&self) -> usize {
        self.cos.len() - 1
    }

    /// `a_k`, zero beyond the truncation.
    pub fn a(&self, k: usize) -> f64 {
        self.cos.get(k).copied().unwrap_or(0.0)
    }

    /// `b_k`, zero for `k = 0` and beyond the truncation.
    pub fn b(&self, k: usize) -> f64 {
        self.sin.get(k).copied().unwrap_or(0.0)
    }

    pub fn cos_coefficients(&self) -> &[f64] {
        &self.cos
    }

    /// `[b_1, …, b_N]`.
    pub fn sin_coefficients(&self) -> &[f64] {
        &self.sin[1..]
    }

    /// Sets `(a_k, b_k)`; `b_0` is ignored.
    pub fn set_mode(&mut self, k: usize, a: f64, b: f64) {
        self.cos[k] = a;
        if k > 0 {
            self.sin[k] = b;
        }
    }

    pub fn with_mode(mut self, k: usize, a: f64, b: f64) -> Self {
        self.set_mode(k, a, b);
        self
    }

    /// Copy truncated or zero-padded to `max_mode`.
    pub fn resized(&self, max_mode: usize) -> Self {
        let mut out = FourierSeries::zeros(max_mode);
        let n = max_mode.min(self.max_mode());
        out.cos[..=n].copy_from_slice(&self.cos[..=n]);
        out.sin[..=n].copy_from_slice(&self.sin[..=n]);
        out
    }

    pub fn scaled(&self, c: f64) -> Self {
        FourierSeries {
            cos: self.cos.iter().map(|x| x * c).collect(),
            sin: self.sin.iter().map(|x| x * c).collect(),
        }
    }

    /// `self + c·other`, on the larger of the two truncations.
    pub fn add_scaled(&self, c: f64, other: &FourierSeries) -> Self {
        let n = self.max_mode().max(other.max_mode());
        let mut out = self.resized(n);
        for k in 0..=n {
            out.cos[k] += c * other.a(k);
            out.sin[k] += c * other.b(k);
        }
        out
    }

    /// Value and derivative at `θ`, via the angle-addition recurrence (O(N)).
    pub fn value_and_derivative(&self, theta: f64) -> (f64, f64) {
        let (s1, c1) = theta.sin_cos();
        let (mut sk, mut ck) = (0.0_f64, 1.0_f64);
        let mut v = self.cos[0];
        let mut d = 0.0;
        for k in 1..self.cos.len() {
            let (sn, cn) = (sk * c1 + ck * s1, ck * c1 - sk * s1);
            sk = sn;
            ck = cn;
            let (a, b) = (self.cos[k], self.sin[k]);
            v += a * ck + b * sk;
            d += k as f64 * (b * ck - a * sk);
        }
        (v, d)
    }

    pub fn evaluate(&self, theta: f64) -> Result<f64> {
        ensure_finite("evaluation point", theta)?;
        ensure_finite("series value", self.value_and_derivative(theta).0)
    }

    /// Antiderivative `a_0 θ + Σ (a_k sin kθ − b_k cos kθ)/k` (not periodic when `a_0 ≠ 0`).
    pub fn antiderivative(&self, theta: f64) -> f64 {
        let (s1, c1) = theta.sin_cos();
        let (mut sk, mut ck) = (0.0_f64, 1.0_f64);
        let mut acc = self.cos[0] * theta;
        for k in 1..self.cos.len() {
            let (sn, cn) = (sk * c1 + ck * s1, ck * c1 - sk * s1);
            sk = sn;
            ck = cn;
            acc += (self.cos[k] * sk - self.sin[k] * ck) / k as f64;
        }
        acc
    }

    /// `∫_α^β u`.
    pub fn integral(&self, alpha: f64, beta: f64) -> f64 {
        self.antiderivative(beta) - self.antiderivative(alpha)
    }

    pub fn derivative(&self) -> Self {
        let n = self.max_mode();
        let mut out = FourierSeries::zeros(n);
        for k in 1..=n {
            let kf = k as f64;
            out.cos[k] = kf * self.sin[k];
            out.sin[k] = -kf * self.cos[k];
        }
        out
    }

    /// `θ ↦ u(θ + shift)`.
    pub fn translated(&self, shift: f64) -> Self {
        let n = self.max_mode();
        let mut out = self.clone();
        for k in 1..=n {
            let (s, c) = (k as f64 * shift).sin_cos();
            let (a, b) = (self.cos[k], self.sin[k]);
            out.cos[k] = a * c + b * s;
            out.sin[k] = b * c - a * s;
        }
        out
    }

    /// Zeroes `a_0`, `a_1`, `b_1`.
    pub fn project_constraints(&self) -> Self {
        let mut out = self.clone();
        out.cos[0] = 0.0;
        if out.cos.len() > 1 {
            out.cos[1] = 0.0;
            out.sin[1] = 0.0;
        }
        out
    }

    /// First violated low-mode constraint, if any.
    pub fn check_constraints(&self) -> Result<()> {
        for (what, value) in [("a_0", self.a(0)), ("a_1", self.a(1)), ("b_1", self.b(1))] {
            if value.abs() > CONSTRAINT_TOL {
                return Err(Error::ConstraintViolation { what, value, tol: CONSTRAINT_TOL });
            }
        }
        Ok(())
    }

    /// `∫_{-π}^{π} u²` by Parseval.
    pub fn l2_norm_sq(&self) -> f64 {
        let tail: f64 = (1..self.cos.len()).map(|k| self.cos[k].powi(2) + self.sin[k].powi(2)).sum();
        2.0 * PI * self.cos[0].powi(2) + PI * tail
    }

    /// Samples on `θ_j = −π + 2πj/M`.
    pub fn sample(&self, grid_size: usize) -> Result<SampledFunction> {
        if grid_size <= self.max_mode() {
            return Err(Error::InvalidInput(format!(
                "grid size {grid_size} must exceed the highest mode {}",
                self.max_mode()
            )));
        }
        let values = transform::synthesize(&self.cos, &self.sin, grid_size);
        SampledFunction::new(values)
    }

    /// Sample values of `u'` on the same grid.
    pub fn sample_derivative(&self, grid_size: usize) -> Result<SampledFunction> {
        self.derivative().sample(grid_size)
    }

    /// Coefficients of a band-limited function from its samples; requires `2·max_mode < M`.
    pub fn from_samples(samples: &SampledFunction, max_mode: usize) -> Result<Self> {
        let m = samples.grid_size();
        if 2 * max_mode >= m {
            return Err(Error::InvalidInput(format!(
                "max_mode {max_mode} needs more than {} samples, got {m}",
                2 * max_mode
            )));
        }
        let (cos, sin) = transform::analyze(samples.values(), max_mode);
        Ok(FourierSeries { cos, sin })
    }

    /// Exact product as a series of degree `N_1 + N_2`.
    pub fn product(&self, other: &FourierSeries) -> Self {
        let n = self.max_mode() + other.max_mode();
        let m = (2 * n + 2).next_power_of_two().max(8);
        let mut values = transform::synthesize(&self.cos, &self.sin, m);
        let other_values = transform::synthesize(&other.cos, &other.sin, m);
        for (v, w) in values.iter_mut().zip(other_values) {
            *v *= w;
        }
        let (cos, sin) = transform::analyze(&values, n);
        FourierSeries { cos, sin }
    }
}

use std::f64::consts::PI;
use std::io::{self, Write};

use crate::error::{Error, Result};

/// Values on the uniform periodic grid `θ_j = −π + 2πj/M`, `j = 0..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("empty sample vector".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("sample value".into()));
        }
        Ok(SampledFunction { values })
    }

    pub fn from_fn(grid_size: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..grid_size).map(|j| f(grid_theta(j, grid_size))).collect();
        Self::new(values)
    }

    pub fn grid_size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn theta(&self, j: usize) -> f64 {
        grid_theta(j, self.values.len())
    }

    pub fn step(&self) -> f64 {
        2.0 * PI / self.values.len() as f64
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.values.iter().map(|&v| f(v)).collect())
    }

    /// Periodic rectangle rule `(2π/M) Σ f_j`; spectrally accurate for smooth periodic data.
    pub fn quadrature(&self) -> f64 {
        self.step() * self.values.iter().sum::<f64>()
    }

    /// `theta,value` lines with 17 significant digits.
    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "theta,value")?;
        for (j, v) in self.values.iter().enumerate() {
            writeln!(out, "{:.16e},{:.16e}", self.theta(j), v)?;
        }
        Ok(())
    }
}

pub fn grid_theta(j: usize, grid_size: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / grid_size as f64
}

/// Free-function form of [`SampledFunction::quadrature`].
pub fn quadrature(f: &SampledFunction) -> f64 {
    f.quadrature()
}

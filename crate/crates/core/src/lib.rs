//! Minimization of `J(u) = ∫(u'² − u²) / (∫|u|)²` over 2π-periodic functions with
//! vanishing mean and first harmonics, together with the Euler–Lagrange structure of
//! the minimizer and grid certification of the scalar inequalities behind it.

pub mod certify;
pub mod error;
pub mod euler_lagrange;
pub mod fourier;
pub mod isoperimetric;
pub mod minimizer;

pub use error::{Error, Result};
pub use euler_lagrange::{Multipliers, NodalPartition, PiecewiseSolution, Sign};
pub use fourier::{FourierSeries, SampledFunction};

/// `1 / (2(4 − π))`, the minimum of `J`.
pub const MINIMUM_VALUE: f64 = 0.5 / (4.0 - std::f64::consts::PI);

mod nodal;
mod rayleigh;
mod sampled;
mod series;
mod transform;

pub use nodal::{l1_norm_exact, sign_moments, sign_pattern, SignPattern};
pub use rayleigh::{default_grid, energy_numerator, l1_norm, rayleigh_j, MIN_DENOMINATOR};
pub use sampled::{grid_theta, quadrature, SampledFunction};
pub use series::{FourierSeries, CONSTRAINT_TOL};

use serde::Serialize;

use super::{Multipliers, Sign};
use crate::error::{Error, Result};

fn s_half(x: f64) -> f64 {
    (0.5 * x).sin()
}

fn c_half(x: f64) -> f64 {
    (0.5 * x).cos()
}

/// Compatibility of `C¹` matching across the node between two consecutive intervals
/// `[a, a+ℓ₁]`, `[a+ℓ₁, c]` with `c = a + ℓ₁ + ℓ₂`; `first_sign` is the sign on the first.
///
/// `λ₀ sin((ℓ₁+ℓ₂)/2) − σ m sin((ℓ₂−ℓ₁)/2) − (λ₁/2) cos(ℓ₁/2) cos(ℓ₂/2) A`, where
/// `A = ℓ₁ sin a / sin ℓ₁ − ℓ₂ sin c / sin ℓ₂` and `σ = ±1`.
pub fn interval_relation_residual(l1: f64, l2: f64, a: f64, c: f64, first_sign: Sign, mult: &Multipliers) -> f64 {
    let lhs = mult.lambda0 * s_half(l1 + l2) - first_sign.as_f64() * mult.m * s_half(l2 - l1);
    let a_term = l1 * a.sin() / l1.sin() - l2 * c.sin() / l2.sin();
    lhs - 0.5 * mult.lambda1 * c_half(l1) * c_half(l2) * a_term
}

/// `(m + λ₀) − (λ₁/4) π sin a`: vanishes iff a positive interval `[a, a+π]` is possible.
pub fn fredholm_relation(a: f64, mult: &Multipliers) -> f64 {
    (mult.m + mult.lambda0) - 0.25 * mult.lambda1 * std::f64::consts::PI * a.sin()
}

/// `∫_a^b u` for the two-point solution on a nodal interval:
/// `κ(2 tan(ℓ/2) − ℓ) + λ₁ sin(ℓ/2) cos((a+b)/2) (ℓ/sin ℓ − 1)`, `κ = ±m + λ₀`.
pub fn nodal_integral(a: f64, b: f64, sign: Sign, mult: &Multipliers) -> Result<f64> {
    let len = b - a;
    if !(len > 0.0 && len < 2.0 * std::f64::consts::PI) {
        return Err(Error::InvalidInput(format!("interval length {len} outside (0, 2π)")));
    }
    if len.sin().abs() < 1e-9 {
        return Err(Error::Degenerate(format!("interval of length {len} is singular")));
    }
    let kappa = sign.as_f64() * mult.m + mult.lambda0;
    let mid = 0.5 * (a + b);
    Ok(kappa * (2.0 * (0.5 * len).tan() - len) + mult.lambda1 * s_half(len) * mid.cos() * (len / len.sin() - 1.0))
}

/// `A(I_k, I_{k+1})` for intervals of lengths `ℓ_k`, `ℓ_{k+1}` meeting at `a_k`:
/// `ℓ_k sin(a_k − ℓ_k)/sin ℓ_k − ℓ_{k+1} sin(a_k + ℓ_{k+1})/sin ℓ_{k+1}`.
pub fn a_quantity(a_k: f64, lk: f64, lk1: f64) -> f64 {
    lk / lk.sin() * (a_k - lk).sin() - lk1 / lk1.sin() * (a_k + lk1).sin()
}

/// The same quantity expanded around the shared node:
/// `(ℓ_k cot ℓ_k − ℓ_{k+1} cot ℓ_{k+1}) sin a_k − (ℓ_k + ℓ_{k+1}) cos a_k`.
pub fn a_quantity_rotated(a_k: f64, lk: f64, lk1: f64) -> f64 {
    (lk / lk.tan() - lk1 / lk1.tan()) * a_k.sin() - (lk + lk1) * a_k.cos()
}

/// The homogeneous system in `(λ₀, m, λ₁)` obtained by writing the interval relation for
/// three consecutive pairs among four intervals, the first one positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreeIntervalSystem {
    pub lengths: [f64; 4],
    pub nodes: [f64; 5],
    /// Rows act on `(λ₀, m, λ₁)`.
    pub matrix: [[f64; 3]; 3],
    pub det: f64,
    /// Third-column cofactor expansion after simplification; equals `−2·det`.
    pub det_cofactor: f64,
    /// `(λ₀+m)/(λ₁/2)` from the first two rows; `None` when `ℓ_k = ℓ_{k+2}`.
    pub sum_first: Option<f64>,
    /// `(λ₀+m)/(λ₁/2)` from the last two rows; `None` when `ℓ_{k+1} = ℓ_{k+3}`.
    pub sum_last: Option<f64>,
    pub a01: f64,
    pub a12: f64,
    pub a23: f64,
}

impl ThreeIntervalSystem {
    /// Cross-multiplied forms of the two `λ₀+m` expressions; defined even for equal lengths.
    pub fn sum_residuals(&self, mult: &Multipliers) -> (f64, f64) {
        let [l0, l1, l2, l3] = self.lengths;
        let sum = mult.lambda0 + mult.m;
        let half = 0.5 * mult.lambda1;
        let r1 = s_half(l2 - l0) * sum - half * c_half(l0) * c_half(l2) * (self.a12 - self.a01);
        let r2 = s_half(l2) * s_half(l3 - l1) * sum
            - half * c_half(l2) * (c_half(l1) * s_half(l3) * self.a12 - c_half(l3) * s_half(l1) * self.a23);
        (r1, r2)
    }

    pub fn apply(&self, mult: &Multipliers) -> [f64; 3] {
        let v = [mult.lambda0, mult.m, mult.lambda1];
        self.matrix.map(|row| row[0] * v[0] + row[1] * v[1] + row[2] * v[2])
    }
}

/// Builds the three-interval system for lengths `ℓ` and first node `a`.
pub fn three_interval_system(lengths: [f64; 4], a: f64, guard: f64) -> Result<ThreeIntervalSystem> {
    if lengths.iter().any(|&l| !(l > 0.0 && l < std::f64::consts::PI)) {
        return Err(Error::InvalidInput(format!("lengths must lie in (0, π): {lengths:?}")));
    }
    let [l0, l1, l2, l3] = lengths;
    let nodes = [a, a + l0, a + l0 + l1, a + l0 + l1 + l2, a + l0 + l1 + l2 + l3];
    let a01 = a_quantity(nodes[1], l0, l1);
    let a12 = a_quantity(nodes[2], l1, l2);
    let a23 = a_quantity(nodes[3], l2, l3);
    let (c0, c1, c2, c3) = (c_half(l0), c_half(l1), c_half(l2), c_half(l3));
    let matrix = [
        [s_half(l0 + l1), -s_half(l1 - l0), -0.5 * c0 * c1 * a01],
        [s_half(l1 + l2), s_half(l2 - l1), -0.5 * c1 * c2 * a12],
        [s_half(l2 + l3), -s_half(l3 - l2), -0.5 * c2 * c3 * a23],
    ];
    let det = det3(&matrix);
    let det_cofactor = a01 * c0 * c1 * l2.sin() * s_half(l1 - l3) + a23 * c2 * c3 * l1.sin() * s_half(l2 - l0)
        - a12 * c1 * c2 * (s_half(l1 - l3) * s_half(l0 + l2) + s_half(l2 - l0) * s_half(l1 + l3));
    let d02 = s_half(l2 - l0);
    let sum_first = (d02.abs() >= guard).then(|| c0 * c2 / d02 * (a12 - a01));
    let d13 = s_half(l2) * s_half(l3 - l1);
    let sum_last = (d13.abs() >= guard).then(|| c2 / d13 * (c1 * s_half(l3) * a12 - c3 * s_half(l1) * a23));
    Ok(ThreeIntervalSystem { lengths, nodes, matrix, det, det_cofactor, sum_first, sum_last, a01, a12, a23 })
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

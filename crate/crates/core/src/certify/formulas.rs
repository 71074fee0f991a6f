//! Scalar functions entering the nodal-length estimates, in forms that stay
//! accurate at their removable singularities.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::MINIMUM_VALUE;

const SERIES_CUTOFF: f64 = 1e-2;

/// `x / sin x`, finite on `(−π, π)`.
pub fn x_over_sin(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 + x2 / 6.0 + 7.0 * x2 * x2 / 360.0 + 31.0 * x2 * x2 * x2 / 15120.0
    } else {
        x / x.sin()
    }
}

/// `sin x / x`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0
    } else {
        x.sin() / x
    }
}

/// `2 tan(x/2) − x`.
pub fn tan_excess(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        x * x * x * tan_excess_over_cube(x)
    } else {
        2.0 * (0.5 * x).tan() - x
    }
}

/// `(2 tan(x/2) − x) / x³`, equal to `1/12` at the origin.
pub fn tan_excess_over_cube(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 / 12.0 + x2 / 120.0 + 17.0 * x2 * x2 / 20160.0 + 31.0 * x2 * x2 * x2 / 362880.0
    } else {
        (2.0 * (0.5 * x).tan() - x) / (x * x * x)
    }
}

/// `(2 sin(x/2) − x cos(x/2)) / x³`, equal to `1/12` at the origin.
fn half_angle_excess_over_cube(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 / 12.0 - x2 / 480.0 + x2 * x2 / 53760.0 - x2 * x2 * x2 / 11612160.0
    } else {
        let (s, c) = (0.5 * x).sin_cos();
        (2.0 * s - x * c) / (x * x * x)
    }
}

/// `h(x) = (2tan(x/2) − x) / (2 sin(x/2)(1 + x/sin x))`, rewritten as
/// `(2 sin(x/2) − x cos(x/2)) / (x + sin x)` so that it is regular at `π`.
pub fn h_ratio(x: f64) -> f64 {
    x * x * h_over_square(x)
}

/// `h(x) / x²`, equal to `1/24` at the origin.
pub fn h_over_square(x: f64) -> f64 {
    half_angle_excess_over_cube(x) / (1.0 + sinc(x))
}

/// `t cos t − sin t + (2t + sin 2t)/π`.
pub fn k_tail(t: f64) -> f64 {
    t * t.cos() - t.sin() + (2.0 * t + (2.0 * t).sin()) / PI
}

/// `ℓ − 2 tan(ℓ/2) + (4/π) sin(ℓ/2)(1 + ℓ/sin ℓ)` on `[π, 2π]`.
///
/// With `ℓ = π + 2e` the two poles at `ℓ = π` cancel and the function reads
/// `ℓ + (4/π) cos e − 2 tan(e/2) − (4/π) e/sin e`.
pub fn g_long(l: f64) -> f64 {
    let e = 0.5 * (l - PI);
    l + 4.0 / PI * e.cos() - 2.0 * (0.5 * e).tan() - 4.0 / PI * x_over_sin(e)
}

/// `3x + 2 sin x + x cos x − 6 sin(x/2)`.
pub fn k_trig(x: f64) -> f64 {
    3.0 * x + 2.0 * x.sin() + x * x.cos() - 6.0 * (0.5 * x).sin()
}

/// `0.45(2π − ℓ)ℓ³ / (8π(4−π))`, the contribution of the long negative
/// intervals to `1/2` in the first length estimate.
pub fn long_interval_share(l: f64) -> f64 {
    0.45 * (2.0 * PI - l) * l * l * l / (8.0 * PI * (4.0 - PI))
}

/// Right-hand side of the second-case length estimate, which has to reach `1/2`.
pub fn case2_share(l: f64) -> f64 {
    let tail = 2.0 * 0.114f64.sin() * (1.0 + x_over_sin(0.228));
    long_interval_share(l) + l / (2.0 * PI * (4.0 - PI)) * tail
}

/// `ℓ² (2π − ℓ₋) / (12 ℓ₋ min{1/√2, sin(ℓ/2)})`.
pub fn a_estimate(l: f64, l_minus: f64) -> f64 {
    let half = 0.5 * l;
    let s = half.sin();
    // ℓ²/sin(ℓ/2) = 2ℓ · (ℓ/2)/sin(ℓ/2) avoids 0/0 at the origin
    let ratio = if s < FRAC_1_SQRT_2 { 2.0 * l * x_over_sin(half) } else { l * l / FRAC_1_SQRT_2 };
    ratio * (2.0 * PI - l_minus) / (12.0 * l_minus)
}

/// Bound on `A` from a negative interval of length `ℓ_j` whose midpoint has `|cos m_j| = c`.
pub fn a_bound_negative(l_j: f64, l_minus: f64, c: f64) -> f64 {
    l_j * l_j * (2.0 * PI - l_minus) / (12.0 * l_minus * c)
}

/// Bound on `A` from a positive interval of length `ℓ_k` with `cos m_k = c`.
pub fn a_bound_positive(l_k: f64, c: f64) -> f64 {
    l_k * l_k / (12.0 * c)
}

/// `√(sin x sin y) / y`.
pub fn g_sqrt(x: f64, y: f64) -> f64 {
    (x.sin() * y.sin()).sqrt() / y
}

/// `m₃* = −π + arcsin(sin(ℓ₁/2)/sin(ℓ₃/2))`, the end of the admissible `m₃` range.
pub fn m3_star(l1: f64, l3: f64) -> f64 {
    -PI + ((0.5 * l1).sin() / (0.5 * l3).sin()).clamp(-1.0, 1.0).asin()
}

/// `I±(ℓ₁, ℓ₃, m₃)`: the integral of the Euler–Lagrange piece over the long
/// negative interval, up to a positive factor, for the two roots of the
/// quadratic relation between the midpoints.
pub fn i_pm(l1: f64, l3: f64, m3: f64, plus: bool) -> f64 {
    let s1 = (0.5 * l1).sin();
    let s3 = (0.5 * l3).sin();
    let (sm, cm) = m3.sin_cos();
    let root = (s1 * s1 - s3 * s3 * sm * sm).max(0.0).sqrt();
    let inner = s3 * cm + if plus { root } else { -root };
    (2.0 * PI - l1 - l3) * tan_excess(l3) - 4.0 * inner * s3 * cm * (1.0 + x_over_sin(l3))
}

/// `ℓ sin x cos(ℓ + x) − x sin ℓ`.
pub fn g_shift(x: f64, l: f64) -> f64 {
    l * x.sin() * (l + x).cos() - x * l.sin()
}

/// `m sin(πx/(mn)) − x sin(π/n)`.
pub fn f_lambda0(x: f64, m: f64, n: f64) -> f64 {
    m * (PI * x / (m * n)).sin() - x * (PI / n).sin()
}

/// Largest admissible value of `m`.
pub fn m_max() -> f64 {
    MINIMUM_VALUE
}

/// Solves `sin(ℓ₃/2) sin m₃ + sin(ℓ₁/2) sin m₁ = 0` for `m₃` on the branch
/// `cos m₃ ≤ 0`, returning `m₃ ∈ [π/2, 3π/2]`.
pub fn solve_midpoint(l1: f64, l3: f64, m1: f64) -> Option<f64> {
    let s = -(0.5 * l1).sin() * m1.sin() / (0.5 * l3).sin();
    if !(s.abs() <= 1.0) {
        return None;
    }
    Some(PI - s.asin())
}

/// `cos m₃ = −√(1 − sin²(ℓ₁/2) sin² m₁ / sin²(ℓ₃/2))`.
pub fn cos_m3(l1: f64, l3: f64, m1: f64) -> f64 {
    let r = (0.5 * l1).sin() * m1.sin() / (0.5 * l3).sin();
    -(1.0 - r * r).max(0.0).sqrt()
}

/// `A(ℓ₁, ℓ₃, m₁) = 2(√(sin²(ℓ₃/2) − sin²(ℓ₁/2) sin² m₁) − sin(ℓ₁/2) cos m₁)/(ℓ₁ + ℓ₃)`.
pub fn a_two_intervals(l1: f64, l3: f64, m1: f64) -> f64 {
    let s1 = (0.5 * l1).sin();
    let s3 = (0.5 * l3).sin();
    let sm = m1.sin();
    2.0 * ((s3 * s3 - s1 * s1 * sm * sm).max(0.0).sqrt() - s1 * m1.cos()) / (l1 + l3)
}

/// `λ₁/2 = (2m/π)(sin(ℓ₃/2) cos m₃ + sin(ℓ₁/2) cos m₁)`.
pub fn half_lambda1(m: f64, l1: f64, l3: f64, m1: f64, m3: f64) -> f64 {
    2.0 * m / PI * ((0.5 * l3).sin() * m3.cos() + (0.5 * l1).sin() * m1.cos())
}

/// `A = −(λ₁/2)/(m + λ₀)` with `m + λ₀ = mℓ₋/π` and `ℓ₋ = ℓ₁ + ℓ₃`.
pub fn a_from_multipliers(m: f64, half_lambda1: f64, l_minus: f64) -> f64 {
    -half_lambda1 / (m * l_minus / PI)
}

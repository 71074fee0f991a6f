//! Sign structure of a series and integrals weighted by `sgn u`.
//!
//! Zeros are bracketed on the sampling grid and polished to machine
//! precision, after which `∫|u|` and `∫ sgn(u) φ_k` follow exactly from
//! antiderivatives. A plain rectangle rule loses O(h²) at every kink of `|u|`.

use std::f64::consts::PI;

use super::series::FourierSeries;
use crate::error::Result;

/// Simple zeros of `u` in `[−π, π)` in increasing order, and the sign of `u`
/// on each arc `(z_i, z_{i+1})` (the last arc wraps to `z_0 + 2π`).
#[derive(Debug, Clone, PartialEq)]
pub struct SignPattern {
    pub zeros: Vec<f64>,
    pub signs: Vec<f64>,
    /// Sign when there are no crossings (`0.0` for a function vanishing on the grid).
    pub constant_sign: f64,
}

impl SignPattern {
    /// Arcs `(start, end, sign)` covering one period; `end` may exceed `π`.
    pub fn arcs(&self) -> Vec<(f64, f64, f64)> {
        let n = self.zeros.len();
        if n == 0 {
            return vec![(-PI, PI, self.constant_sign)];
        }
        (0..n)
            .map(|i| {
                let end = if i + 1 < n { self.zeros[i + 1] } else { self.zeros[0] + 2.0 * PI };
                (self.zeros[i], end, self.signs[i])
            })
            .collect()
    }
}

pub fn sign_pattern(series: &FourierSeries, grid_size: usize) -> Result<SignPattern> {
    let samples = series.sample(grid_size)?;
    let h = samples.step();
    let vals = samples.values();
    let nonzero: Vec<(usize, f64)> =
        vals.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(j, v)| (j, v.signum())).collect();
    if nonzero.is_empty() {
        return Ok(SignPattern { zeros: vec![], signs: vec![], constant_sign: 0.0 });
    }
    let mut crossings: Vec<(f64, f64)> = Vec::new();
    let count = nonzero.len();
    for idx in 0..count {
        let (i, si) = nonzero[idx];
        let (mut j, sj) = nonzero[(idx + 1) % count];
        if j <= i {
            j += grid_size;
        }
        if si == sj {
            continue;
        }
        let lo = samples.theta(0) + i as f64 * h;
        let hi = samples.theta(0) + j as f64 * h;
        let root = refine_root(series, lo, hi, si);
        crossings.push(((root + PI).rem_euclid(2.0 * PI) - PI, sj));
    }
    crossings.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(SignPattern {
        zeros: crossings.iter().map(|c| c.0).collect(),
        signs: crossings.iter().map(|c| c.1).collect(),
        constant_sign: if crossings.is_empty() { nonzero[0].1 } else { 0.0 },
    })
}

/// Safeguarded Newton on a bracket where `u(lo)` has sign `sign_lo`.
fn refine_root(series: &FourierSeries, mut lo: f64, mut hi: f64, sign_lo: f64) -> f64 {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (v, d) = series.value_and_derivative(x);
        if v == 0.0 {
            return x;
        }
        if v.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - v / d;
        let next = if d != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) || hi - lo <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            return next;
        }
        x = next;
    }
    x
}

/// `∫_{−π}^{π} |u|` from the exact nodal decomposition.
pub fn l1_norm_exact(series: &FourierSeries, pattern: &SignPattern) -> f64 {
    pattern.arcs().iter().map(|&(a, b, s)| s * series.integral(a, b)).sum()
}

/// `(∫ sgn(u) cos kθ, ∫ sgn(u) sin kθ)` for `k = 0..=max_mode`, exactly.
pub fn sign_moments(pattern: &SignPattern, max_mode: usize) -> (Vec<f64>, Vec<f64>) {
    let mut c = vec![0.0; max_mode + 1];
    let mut s = vec![0.0; max_mode + 1];
    for (a, b, sg) in pattern.arcs() {
        c[0] += sg * (b - a);
        for k in 1..=max_mode {
            let kf = k as f64;
            let (sa, ca) = (kf * a).sin_cos();
            let (sb, cb) = (kf * b).sin_cos();
            c[k] += sg * (sb - sa) / kf;
            s[k] += sg * (ca - cb) / kf;
        }
    }
    (c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos2_has_four_zeros_and_norm_four() {
        let s = FourierSeries::zeros(2).with_mode(2, 1.0, 0.0);
        let p = sign_pattern(&s, 64).unwrap();
        let expect = [-3.0 * PI / 4.0, -PI / 4.0, PI / 4.0, 3.0 * PI / 4.0];
        assert_eq!(p.zeros.len(), 4);
        for (z, e) in p.zeros.iter().zip(expect) {
            assert!((z - e).abs() < 4.0 * f64::EPSILON * e.abs(), "{z} {e}");
        }
        assert_eq!(p.signs, vec![-1.0, 1.0, -1.0, 1.0]);
        assert!((l1_norm_exact(&s, &p) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn zero_on_grid_point_is_handled() {
        // sin 2θ vanishes exactly at grid points 0, ±π/2, −π
        let s = FourierSeries::zeros(2).with_mode(2, 0.0, 1.0);
        let p = sign_pattern(&s, 16).unwrap();
        assert_eq!(p.zeros.len(), 4);
        assert!((l1_norm_exact(&s, &p) - 4.0).abs() < 1e-13);
    }

    #[test]
    fn touching_zero_is_not_a_crossing() {
        // 1 + cos 2θ ≥ 0 with double zeros at ±π/2
        let s = FourierSeries::zeros(2).with_mode(0, 1.0, 0.0).with_mode(2, 1.0, 0.0);
        let p = sign_pattern(&s, 32).unwrap();
        assert!(p.zeros.is_empty());
        assert_eq!(p.constant_sign, 1.0);
        assert!((l1_norm_exact(&s, &p) - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn moments_of_cos2() {
        // sgn(cos 2θ) = (4/π)(cos 2θ − cos 6θ/3 + …)
        let s = FourierSeries::zeros(2).with_mode(2, 1.0, 0.0);
        let p = sign_pattern(&s, 64).unwrap();
        let (c, sn) = sign_moments(&p, 6);
        assert!(c[0].abs() < 1e-14);
        assert!((c[2] - 4.0).abs() < 1e-14);
        assert!((c[6] + 4.0 / 3.0).abs() < 1e-14);
        assert!(c[1].abs() < 1e-14 && c[4].abs() < 1e-14);
        assert!(sn.iter().all(|x| x.abs() < 1e-14));
    }
}

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Multipliers, NodalPartition, Sign};
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;

/// `A cos x + B sin x + c + slope·x sin x` on `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub sign: Sign,
    #[serde(rename = "A")]
    pub cos_coeff: f64,
    #[serde(rename = "B")]
    pub sin_coeff: f64,
    pub c: f64,
    pub slope: f64,
}

impl Piece {
    pub fn value(&self, x: f64) -> f64 {
        let (s, c) = x.sin_cos();
        self.cos_coeff * c + self.sin_coeff * s + self.c + self.slope * x * s
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (s, c) = x.sin_cos();
        -self.cos_coeff * s + self.sin_coeff * c + self.slope * (s + x * c)
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let (s, c) = x.sin_cos();
        -self.cos_coeff * c - self.sin_coeff * s + self.slope * (2.0 * c - x * s)
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }
}

/// Solution of `−u'' − u = ±m + λ₀ + λ₁ cos x` on `(a, b)` vanishing at both ends.
///
/// `λ₂` is assumed to have been rotated away (see `phase_align`).
pub fn piece_coefficients(a: f64, b: f64, sign: Sign, mult: &Multipliers) -> Result<Piece> {
    let len = b - a;
    if !(len > 0.0 && len < 2.0 * PI) {
        return Err(Error::InvalidInput(format!("interval length {len} outside (0, 2π)")));
    }
    let sin_len = len.sin();
    if sin_len.abs() < 1e-12 {
        return Err(Error::Degenerate(format!(
            "interval of length {len} is singular for −u''−u; use the Fredholm relation"
        )));
    }
    let kappa = sign.as_f64() * mult.m + mult.lambda0;
    let half_l1 = 0.5 * mult.lambda1;
    let mid = 0.5 * (a + b);
    let ch = (0.5 * len).cos();
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    Ok(Piece {
        start: a,
        end: b,
        sign,
        cos_coeff: kappa * mid.cos() / ch - half_l1 * len * sa * sb / sin_len,
        sin_coeff: kappa * mid.sin() / ch + half_l1 * (b * sb * ca - a * sa * cb) / sin_len,
        c: -kappa,
        slope: -half_l1,
    })
}

/// Consecutive pieces covering `[a₀, a₀ + 2π]` (or a longer chain from [`shoot_chain`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseSolution {
    pub pieces: Vec<Piece>,
}

impl PiecewiseSolution {
    pub fn from_partition(partition: &NodalPartition, mult: &Multipliers) -> Result<Self> {
        let pieces = (0..partition.count())
            .map(|i| {
                let (a, b) = partition.interval(i);
                piece_coefficients(a, b, partition.sign(i), mult)
            })
            .collect::<Result<_>>()?;
        Ok(PiecewiseSolution { pieces })
    }

    /// The minimizer normalized to `∫|u| = 1`: four quarter periods starting with a
    /// positive one at `0`, `m(cos x + sin x − 1)` on `[0, π/2]`.
    pub fn closed_form(m: f64) -> Self {
        let partition = NodalPartition::new(
            (0..=4).map(|i| i as f64 * PI / 2.0).collect(),
            Sign::Positive,
        )
        .expect("quarter partition is valid");
        Self::from_partition(&partition, &Multipliers::trivial(m)).expect("quarter lengths are regular")
    }

    pub fn partition(&self) -> Result<NodalPartition> {
        let mut endpoints: Vec<f64> = self.pieces.iter().map(|p| p.start).collect();
        endpoints.push(self.pieces.last().map_or(0.0, |p| p.end));
        NodalPartition::new(endpoints, self.pieces[0].sign)
    }

    fn locate(&self, theta: f64) -> &Piece {
        let start = self.pieces[0].start;
        let x = start + (theta - start).rem_euclid(2.0 * PI);
        self.pieces.iter().find(|p| x <= p.end).unwrap_or(&self.pieces[self.pieces.len() - 1])
    }

    /// Periodic evaluation; assumes the pieces span one period.
    pub fn evaluate(&self, theta: f64) -> f64 {
        let start = self.pieces[0].start;
        let x = start + (theta - start).rem_euclid(2.0 * PI);
        self.locate(theta).value(x)
    }

    /// Exact Fourier coefficients up to `max_mode`, from closed-form integrals of each piece.
    pub fn fourier_series(&self, max_mode: usize) -> FourierSeries {
        let mut series = FourierSeries::zeros(max_mode);
        for k in 0..=max_mode {
            let (mut ck, mut sk) = (0.0, 0.0);
            for p in &self.pieces {
                let (ic, is) = piece_moments(p, k as f64);
                ck += ic;
                sk += is;
            }
            let norm = if k == 0 { 2.0 * PI } else { PI };
            series.set_mode(k, ck / norm, sk / norm);
        }
        series
    }
}

/// Integrals of a piecewise solution over one period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseIntegrals {
    /// `∫(u'² − u²)`.
    pub energy: f64,
    pub l1: f64,
    pub mean: f64,
    pub cos1: f64,
    pub sin1: f64,
}

impl PiecewiseIntegrals {
    pub fn rayleigh(&self) -> f64 {
        self.energy / (self.l1 * self.l1)
    }
}

impl PiecewiseSolution {
    /// Composite Simpson on each piece separately, `grid_size` panels in total.
    ///
    /// `u''` jumps at the nodes, so a global rule on the period only reaches `O(h²)`;
    /// per piece the integrands are smooth and the error is `O(h⁴)`.
    pub fn integrals(&self, grid_size: usize) -> PiecewiseIntegrals {
        let mut out = PiecewiseIntegrals { energy: 0.0, l1: 0.0, mean: 0.0, cos1: 0.0, sin1: 0.0 };
        for p in &self.pieces {
            let share = (grid_size as f64 * p.length() / (2.0 * PI)).ceil() as usize;
            let panels = share.max(2).next_multiple_of(2);
            let h = p.length() / panels as f64;
            let s = p.sign.as_f64();
            for i in 0..=panels {
                let x = if i == panels { p.end } else { p.start + i as f64 * h };
                let w = if i == 0 || i == panels { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 } * h / 3.0;
                let (v, d) = (p.value(x), p.derivative(x));
                out.energy += w * (d * d - v * v);
                out.l1 += w * s * v;
                out.mean += w * v;
                out.cos1 += w * v * x.cos();
                out.sin1 += w * v * x.sin();
            }
        }
        out
    }
}

/// `∫_a^b x^d cos(px)` and `∫_a^b x^d sin(px)` for `d ∈ {0, 1}`.
fn trig_moment(p: f64, d: u32, a: f64, b: f64) -> (f64, f64) {
    if p == 0.0 {
        return match d {
            0 => (b - a, 0.0),
            _ => (0.5 * (b * b - a * a), 0.0),
        };
    }
    let (sa, ca) = (p * a).sin_cos();
    let (sb, cb) = (p * b).sin_cos();
    match d {
        0 => ((sb - sa) / p, (ca - cb) / p),
        _ => (
            (b * sb - a * sa) / p + (cb - ca) / (p * p),
            -(b * cb - a * ca) / p + (sb - sa) / (p * p),
        ),
    }
}

/// `(∫ u cos kx, ∫ u sin kx)` over one piece, by product-to-sum.
fn piece_moments(piece: &Piece, k: f64) -> (f64, f64) {
    let (a, b) = (piece.start, piece.end);
    let (c_lo, s_lo) = trig_moment(k - 1.0, 0, a, b);
    let (c_hi, s_hi) = trig_moment(k + 1.0, 0, a, b);
    let (c_k, s_k) = trig_moment(k, 0, a, b);
    let (xc_lo, _) = trig_moment(k - 1.0, 1, a, b);
    let (xc_hi, _) = trig_moment(k + 1.0, 1, a, b);
    let (_, xs_lo) = trig_moment(k - 1.0, 1, a, b);
    let (_, xs_hi) = trig_moment(k + 1.0, 1, a, b);
    let (pa, pb, pc, ps) = (piece.cos_coeff, piece.sin_coeff, piece.c, piece.slope);
    // cos x cos kx = ½[cos(k−1)x + cos(k+1)x], sin x cos kx = ½[sin(k+1)x − sin(k−1)x], …
    let with_cos = pa * 0.5 * (c_lo + c_hi) + pb * 0.5 * (s_hi - s_lo) + pc * c_k + ps * 0.5 * (xs_hi - xs_lo);
    let with_sin = pa * 0.5 * (s_hi + s_lo) + pb * 0.5 * (c_lo - c_hi) + pc * s_k + ps * 0.5 * (xc_lo - xc_hi);
    (with_cos, with_sin)
}

/// `sup |−u'' − u − (m·sgn + λ₀ + λ₁ cos + λ₂ sin)|` on interior samples of every piece,
/// staying `1e−6` away from the nodes.
pub fn euler_residual(pw: &PiecewiseSolution, mult: &Multipliers) -> f64 {
    const SAMPLES: usize = 256;
    const GAP: f64 = 1e-6;
    let mut worst: f64 = 0.0;
    for p in &pw.pieces {
        let (lo, hi) = (p.start + GAP, p.end - GAP);
        for i in 0..=SAMPLES {
            let x = lo + (hi - lo) * i as f64 / SAMPLES as f64;
            let lhs = -p.second_derivative(x) - p.value(x);
            let rhs = mult.m * p.sign.as_f64() + mult.lambda0 + mult.lambda1 * x.cos() + mult.lambda2 * x.sin();
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// Largest jump of `u` or `u'` across interior junctions and the periodic wrap-around.
pub fn c1_mismatch(pw: &PiecewiseSolution) -> f64 {
    let n = pw.pieces.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let left = &pw.pieces[i];
        let (right, x_right) = if i + 1 < n {
            (&pw.pieces[i + 1], left.end)
        } else {
            (&pw.pieces[0], left.end - 2.0 * PI)
        };
        let x = left.end;
        worst = worst
            .max((left.value(x) - right.value(x_right)).abs())
            .max((left.derivative(x) - right.derivative(x_right)).abs());
    }
    worst
}

/// A genuine solution of the Euler equation grown interval by interval.
///
/// The first piece is the two-point solution on `[start, start + first_len]`; each later
/// piece continues it C¹ across the node with the opposite sign, and ends at its next
/// sign change. The chain is not periodic; it supplies consecutive-interval data on which
/// every local relation must hold exactly.
pub fn shoot_chain(mult: &Multipliers, start: f64, first_len: f64, first_sign: Sign, count: usize) -> Result<PiecewiseSolution> {
    let mut pieces = vec![piece_coefficients(start, start + first_len, first_sign, mult)?];
    while pieces.len() < count {
        let prev = *pieces.last().expect("non-empty");
        let sign = prev.sign.flip();
        let x0 = prev.end;
        let slope = -0.5 * mult.lambda1;
        let c = -(sign.as_f64() * mult.m + mult.lambda0);
        let (s0, c0) = x0.sin_cos();
        // A cos x0 + B sin x0 = −c − slope·x0 sin x0
        // −A sin x0 + B cos x0 = u'(x0) − slope (sin x0 + x0 cos x0)
        let v = -c - slope * x0 * s0;
        let d = prev.derivative(x0) - slope * (s0 + x0 * c0);
        let mut next = Piece {
            start: x0,
            end: f64::NAN,
            sign,
            cos_coeff: v * c0 - d * s0,
            sin_coeff: v * s0 + d * c0,
            c,
            slope,
        };
        next.end = next_zero(&next).ok_or_else(|| Error::Degenerate(format!("no sign change after node {x0}")))?;
        pieces.push(next);
    }
    Ok(PiecewiseSolution { pieces })
}

fn next_zero(p: &Piece) -> Option<f64> {
    const H: f64 = 1e-3;
    let s = p.sign.as_f64();
    let mut x = p.start + H;
    if s * p.value(x) <= 0.0 {
        return None;
    }
    while x < p.start + 2.0 * PI {
        let y = x + H;
        if s * p.value(y) <= 0.0 {
            let (mut lo, mut hi) = (x, y);
            while hi - lo > 4.0 * f64::EPSILON * hi.abs().max(1.0) {
                let mid = 0.5 * (lo + hi);
                if s * p.value(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        x = y;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MINIMUM_VALUE;

    #[test]
    fn closed_form_pieces() {
        let m = MINIMUM_VALUE;
        let pw = PiecewiseSolution::closed_form(m);
        let p0 = pw.pieces[0];
        assert!((p0.cos_coeff - m).abs() < 1e-15 && (p0.sin_coeff - m).abs() < 1e-15);
        assert_eq!(p0.c, -m);
        // negative quarter: m(cos x − sin x + 1)
        let p1 = pw.pieces[1];
        assert!((p1.cos_coeff - m).abs() < 1e-15 && (p1.sin_coeff + m).abs() < 1e-15 && p1.c == m);
        for p in &pw.pieces {
            assert!(p.value(p.start).abs() < 1e-15 && p.value(p.end).abs() < 1e-15);
        }
        // odd symmetry
        for x in [0.3, 1.0, 2.0, 2.9] {
            assert!((pw.evaluate(-x) + pw.evaluate(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_interval_has_no_sine_part() {
        let p = piece_coefficients(-0.7, 0.7, Sign::Positive, &Multipliers::new(0.6, 0.1, 0.0, 0.0)).unwrap();
        assert_eq!(p.sin_coeff, 0.0);
    }

    #[test]
    fn singular_length_is_rejected() {
        let r = piece_coefficients(0.0, PI, Sign::Positive, &Multipliers::trivial(0.5));
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn exact_coefficients_match_quadrature() {
        let pw = shoot_chain(&Multipliers::new(0.6, 0.1, -0.3, 0.0), -2.0, 1.3, Sign::Positive, 2).unwrap();
        let p = pw.pieces[1];
        let (ic, is) = piece_moments(&p, 3.0);
        let n = 200_000;
        let h = p.length() / n as f64;
        let (mut qc, mut qs) = (0.0, 0.0);
        for i in 0..n {
            let x = p.start + (i as f64 + 0.5) * h;
            qc += p.value(x) * (3.0 * x).cos() * h;
            qs += p.value(x) * (3.0 * x).sin() * h;
        }
        assert!((ic - qc).abs() < 1e-9 && (is - qs).abs() < 1e-9, "{ic} {qc} {is} {qs}");
    }

    #[test]
    fn shooting_produces_c1_euler_solution() {
        let mult = Multipliers::new(0.6, 0.1, -0.3, 0.0);
        let pw = shoot_chain(&mult, -2.0, 1.3, Sign::Positive, 5).unwrap();
        assert_eq!(pw.pieces.len(), 5);
        assert!(euler_residual(&pw, &mult) < 1e-12);
        for w in pw.pieces.windows(2) {
            let x = w[0].end;
            assert!((w[0].value(x) - w[1].value(x)).abs() < 1e-12);
            assert!((w[0].derivative(x) - w[1].derivative(x)).abs() < 1e-12);
        }
        // each shot piece also vanishes at its right end
        for p in &pw.pieces {
            assert!(p.value(p.end).abs() < 1e-12);
            assert!(p.value(0.5 * (p.start + p.end)) * p.sign.as_f64() > 0.0);
        }
    }
}

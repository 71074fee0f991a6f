use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};
use std::sync::Arc;

use super::formulas::*;
use super::{default_step, ClaimKind, Face, InequalitySpec, Refinement};
use crate::error::{Error, Result};

fn spec(
    id: &str,
    claim: &str,
    kind: ClaimKind,
    variables: &[&'static str],
    domain: &[(f64, f64)],
    exceptions: &[Face],
    margin: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
) -> InequalitySpec {
    InequalitySpec {
        id: id.to_string(),
        claim: claim.to_string(),
        kind,
        variables: variables.to_vec(),
        domain: domain.to_vec(),
        exceptions: exceptions.to_vec(),
        margin: Arc::new(margin),
        default_step: default_step(domain.len()),
        refinement: None,
        tolerance: 0.0,
    }
}

const TWO_OVER_PI: f64 = 2.0 / PI;
/// Central-difference step for monotonicity claims.
const DIFF_STEP: f64 = 1e-6;
/// Keeps `tan(ℓ₃/2)` finite at the top of the `I±` boxes.
const L3_TOP: f64 = PI - 1e-3;

fn g_pi6(bound: f64, id: &str) -> InequalitySpec {
    let mut s = spec(
        id,
        &format!("sqrt(sin t sin(t+pi/6))/(t+pi/6) <= {bound} on [0, pi/3]"),
        ClaimKind::Bound,
        &["t"],
        &[(0.0, FRAC_PI_3)],
        &[],
        move |x| bound - g_sqrt(x[0], x[0] + FRAC_PI_6),
    );
    s.refinement = Some(Refinement { step: 1e-6, half_width: 1e-3 });
    s
}

/// `I±` over `ℓ₁ = t·min(cap, π − ℓ₃)`, `m₃ = −π + s(m₃* + π)`.
fn i_pm_spec(id: &str, plus: bool, cap: f64, cap_text: &str) -> InequalitySpec {
    spec(
        id,
        &format!(
            "I{}(l1, l3, m3) < 0 for l1 <= {cap_text}, l1 + l3 <= pi, 1.17 <= l3 <= pi - 1e-3, -pi <= m3 <= m3*(l1, l3)",
            if plus { "+" } else { "-" }
        ),
        ClaimKind::Negative,
        &["t", "l3", "s"],
        &[(0.0, 1.0), (1.17, L3_TOP), (0.0, 1.0)],
        &[],
        move |x| {
            let l3 = x[1];
            let l1 = x[0] * cap.min(PI - l3);
            let m3 = -PI + x[2] * (m3_star(l1, l3) + PI);
            -i_pm(l1, l3, m3, plus)
        },
    )
}

/// `A ≤ ℓ²(2π−ℓ₋)/(12·ℓ₋·min{1/√2, sin(ℓ/2)}) < 2/π` for `ℓ` up to `top`.
fn a_estimate_spec(id: &str, l_minus: f64, top: f64) -> InequalitySpec {
    spec(
        id,
        &format!("l^2 (2pi - {l_minus}) / (12*{l_minus}*min(1/sqrt2, sin(l/2))) < 2/pi on [0, {top}]"),
        ClaimKind::Bound,
        &["l"],
        &[(0.0, top)],
        &[],
        move |x| TWO_OVER_PI - a_estimate(x[0], l_minus),
    )
}

/// The shipped inequality catalog.
pub fn catalog() -> Vec<InequalitySpec> {
    let m_max = m_max();
    let mut v = vec![
        spec(
            "h_quadratic_bound",
            "h(x) <= x^2/12 on (0, pi], h = (2tan(x/2)-x)/(2sin(x/2)(1+x/sin x)); scanned as 1/12 - h(x)/x^2",
            ClaimKind::Bound,
            &["x"],
            &[(0.0, PI)],
            &[],
            |x| 1.0 / 12.0 - h_over_square(x[0]),
        ),
        spec(
            "k_negative_beyond_half_pi",
            "t cos t - sin t + (2t + sin 2t)/pi < 0 on (pi/2, pi], zero at pi/2",
            ClaimKind::Negative,
            &["t"],
            &[(FRAC_PI_2, PI)],
            &[Face::lower(0)],
            |x| -k_tail(x[0]),
        ),
        spec(
            "g_positive_pi_to_2pi",
            "l - 2tan(l/2) + (4/pi) sin(l/2)(1 + l/sin l) > 0 on [pi, 2pi] (continuous extension at pi)",
            ClaimKind::Bound,
            &["l"],
            &[(PI, 2.0 * PI)],
            &[],
            |x| g_long(x[0]),
        ),
        spec(
            "k_trig_nonnegative",
            "3x + 2 sin x + x cos x - 6 sin(x/2) >= 0 on [0, pi], zero at 0",
            ClaimKind::Bound,
            &["x"],
            &[(0.0, PI)],
            &[Face::lower(0)],
            |x| k_trig(x[0]),
        ),
        spec(
            "tan_cubic_bound",
            "2tan(x/2) - x <= 0.45 x^3/4 on [0, 0.8]; scanned as 0.1125 - (2tan(x/2)-x)/x^3",
            ClaimKind::Bound,
            &["x"],
            &[(0.0, 0.8)],
            &[],
            |x| 0.1125 - tan_excess_over_cube(x[0]),
        ),
        spec(
            "long_negative_length_case1",
            "0.45(2pi - l) l^3/(8pi(4-pi)) < 1/2 on [0, 1.74], hence l_- >= 1.74",
            ClaimKind::Bound,
            &["l"],
            &[(0.0, 1.74)],
            &[],
            |x| 0.5 - long_interval_share(x[0]),
        ),
        spec(
            "long_negative_length_case2",
            "0.45(2pi - l) l^3/(8pi(4-pi)) + l/(2pi(4-pi)) 2sin(0.114)(1 + 0.228/sin 0.228) < 1/2 on [0, 1.55], hence l_- >= 1.55",
            ClaimKind::Bound,
            &["l"],
            &[(0.0, 1.55)],
            &[],
            |x| 0.5 - case2_share(x[0]),
        ),
        a_estimate_spec("a_estimate_middle_point", 1.55, 1.17),
        spec(
            "square_over_half_sine_increasing",
            "x^2/sin(x/2) is increasing on (0, pi/2]",
            ClaimKind::Increasing,
            &["x"],
            &[(0.0, FRAC_PI_2)],
            &[],
            |x| {
                let f = |t: f64| 2.0 * t * x_over_sin(0.5 * t);
                (f(x[0] + DIFF_STEP) - f(x[0] - DIFF_STEP)) / (2.0 * DIFF_STEP)
            },
        ),
        g_pi6(TWO_OVER_PI, "g_sqrt_shifted_pi6"),
        spec(
            "cos19_first_case",
            "l(pi - l)/(12|cos 1.9|) <= pi^2/(48|cos 1.9|) < 2/pi on [0, pi]",
            ClaimKind::Bound,
            &["l1"],
            &[(0.0, PI)],
            &[],
            |x| TWO_OVER_PI - x[0] * (PI - x[0]) / (12.0 * 1.9f64.cos().abs()),
        ),
        spec(
            "cos19_second_case",
            "l3^2(2pi - l_-)/(12 l_- sqrt(1 - sin^2(1.9 - l_-/2)/sin^2 1.9)) < 2/pi, l_- = 0.62 + l3, l3 in [1.17, pi - 0.62]",
            ClaimKind::Bound,
            &["l3"],
            &[(1.17, PI - 0.62)],
            &[],
            |x| {
                let l3 = x[0];
                let lm = 0.62 + l3;
                let r = (1.9 - 0.5 * lm).sin() / 1.9f64.sin();
                TWO_OVER_PI - l3 * l3 * (2.0 * PI - lm) / (12.0 * lm * (1.0 - r * r).sqrt())
            },
        ),
        i_pm_spec("i_plus_negative", true, FRAC_PI_6, "pi/6"),
        i_pm_spec("i_minus_negative", false, 0.62, "0.62"),
        spec(
            "g_shift_negative",
            "l sin x cos(l + x) - x sin l < 0 for x in (0, pi/2], l in [0.01, pi - 0.01]; scanned divided by l",
            ClaimKind::Negative,
            &["x", "l"],
            &[(0.0, FRAC_PI_2), (0.01, PI - 0.01)],
            &[Face::lower(0)],
            |x| -g_shift(x[0], x[1]) / x[1],
        ),
        spec(
            "f_lambda0_only_root_zero",
            "m sin(pi x/(m n)) - x sin(pi/n) > 0 for x = s m, s in (0, 1), m in [1e-3, 1/(2(4-pi))], n in {2,4,6,8}; scanned as min over n of f/m",
            ClaimKind::UniqueRoot,
            &["s", "m"],
            &[(0.0, 1.0), (1e-3, m_max)],
            &[Face::lower(0), Face::upper(0)],
            |x| {
                [2.0, 4.0, 6.0, 8.0]
                    .iter()
                    .map(|&n| f_lambda0(x[0] * x[1], x[1], n) / x[1])
                    .fold(f64::INFINITY, f64::min)
            },
        ),
        a_estimate_spec("a_estimate_case2_193", 1.93, 1.532),
        a_estimate_spec("a_estimate_case2_267", 2.67, 1.532),
        spec(
            "a_estimate_case2_half_pi",
            "l^2(2pi - 2.67)/(12*2.67*sqrt2/2) < 2/pi on [0, pi/2]",
            ClaimKind::Bound,
            &["l"],
            &[(0.0, FRAC_PI_2)],
            &[],
            |x| TWO_OVER_PI - x[0] * x[0] * (2.0 * PI - 2.67) / (12.0 * 2.67 * std::f64::consts::FRAC_1_SQRT_2),
        ),
        spec(
            "a_bound_negative_interval",
            "h(l_j)(2pi - l_-)/(l_- c) <= l_j^2(2pi - l_-)/(12 l_- c) on l_j in [0, 1.6], l_- in [1.55, 1.95], c = |cos m_j| in [0.5, 0.9]",
            ClaimKind::Bound,
            &["l_j", "l_minus", "c"],
            &[(0.0, 1.6), (1.55, 1.95), (0.5, 0.9)],
            &[Face::lower(0)],
            |x| {
                let (l, lm, c) = (x[0], x[1], x[2]);
                a_bound_negative(l, lm, c) - h_ratio(l) * (2.0 * PI - lm) / (lm * c)
            },
        ),
        spec(
            "a_bound_positive_interval",
            "h(l_k)/c <= l_k^2/(12 c) on l_k in [0, pi], c = cos m_k in [0.05, 1]",
            ClaimKind::Bound,
            &["l_k", "c"],
            &[(0.0, PI), (0.05, 1.0)],
            &[Face::lower(0)],
            |x| a_bound_positive(x[0], x[1]) - h_ratio(x[0]) / x[1],
        ),
    ];
    let mut chain = spec(
        "rel_chain_consistency",
        "m3 from sin(l3/2) sin m3 + sin(l1/2) sin m1 = 0 (cos m3 <= 0), lambda1/2 from the cosine relation: \
         A(l1, l3, m1) equals -(lambda1/2)/(m + lambda0), m + lambda0 = m l_-/pi",
        ClaimKind::Identity,
        &["l1", "l3", "m1"],
        &[(0.05, 0.62), (1.17, PI - 0.62), (0.0, 1.9)],
        &[],
        move |x| {
            let (l1, l3, m1) = (x[0], x[1], x[2]);
            let Some(m3) = solve_midpoint(l1, l3, m1) else { return f64::NAN };
            let rel1 = (0.5 * l3).sin() * m3.sin() + (0.5 * l1).sin() * m1.sin();
            let cos_gap = m3.cos() - cos_m3(l1, l3, m1);
            let a = a_from_multipliers(m_max, half_lambda1(m_max, l1, l3, m1, m3), l1 + l3);
            let gap = a - a_two_intervals(l1, l3, m1);
            1e-12 - rel1.abs().max(cos_gap.abs()).max(gap.abs())
        },
    );
    chain.tolerance = 1e-12;
    v.push(chain);
    v
}

/// Looks up a catalog entry by id.
pub fn lookup(id: &str) -> Result<InequalitySpec> {
    catalog().into_iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// The `G` bound tightened by `1e−3`: false near the interior maximum.
pub fn falsified_g_bound() -> InequalitySpec {
    g_pi6(TWO_OVER_PI - 1e-3, "g_sqrt_shifted_pi6_tightened")
}

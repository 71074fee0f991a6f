//! Streaming grid scan: slabs orthogonal to axis 0 are evaluated in parallel
//! and analysed with their two neighbours, so memory stays at three slabs.

use rayon::prelude::*;

use super::{ClaimKind, Face, InequalitySpec, Side, Verdict, ZoneReport};

/// Allowed `|φ|` on a face where equality is claimed.
const FACE_TOL: f64 = 1e-12;
const PROBE_LEVELS: i32 = 24;
const PROBES_PER_AXIS: usize = 9;

pub(super) struct ScanOutcome {
    pub verdict: Verdict,
    pub worst_margin: f64,
    pub worst_point: Vec<f64>,
    pub lipschitz_at_worst: f64,
    pub lipschitz_max: f64,
    pub samples: u64,
    pub zones: Vec<ZoneReport>,
    pub witness: Option<Vec<f64>>,
    pub note: Option<String>,
}

#[derive(Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    h: f64,
    n: usize,
}

impl Axis {
    fn coord(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.hi
        } else {
            self.lo + i as f64 * self.h
        }
    }
}

/// Running minima for one group of samples; points are kept as flat indices.
#[derive(Clone, Copy)]
struct Stats {
    count: u64,
    min_phi: (f64, u64, f64),
    min_slack: (f64, u64),
    min_inward: (f64, u64),
    max_face_abs: f64,
}

impl Default for Stats {
    fn default() -> Self {
        Stats {
            count: 0,
            min_phi: (f64::INFINITY, 0, 0.0),
            min_slack: (f64::INFINITY, 0),
            min_inward: (f64::INFINITY, 0),
            max_face_abs: 0.0,
        }
    }
}

impl Stats {
    fn zone_ok(&self) -> bool {
        self.count == 0 || (self.min_inward.0 > 0.0 && self.min_phi.0 > 0.0)
    }

    fn slack_ok(&self) -> bool {
        self.count == 0 || self.min_slack.0 > 0.0
    }
}

struct FaceState {
    face: Face,
    radii: Vec<f64>,
    buckets: Vec<Stats>,
}

struct Grid {
    axes: Vec<Axis>,
    slab_len: usize,
    strides: Vec<usize>,
}

impl Grid {
    fn indices(&self, flat: u64) -> [usize; 3] {
        let mut idx = [0usize; 3];
        idx[0] = (flat / self.slab_len as u64) as usize;
        let mut j = (flat % self.slab_len as u64) as usize;
        for k in 1..self.axes.len() {
            idx[k] = j / self.strides[k];
            j %= self.strides[k];
        }
        idx
    }

    fn point(&self, idx: &[usize; 3]) -> [f64; 3] {
        let mut x = [0.0; 3];
        for (k, a) in self.axes.iter().enumerate() {
            x[k] = a.coord(idx[k]);
        }
        x
    }

    fn point_vec(&self, flat: u64) -> Vec<f64> {
        let x = self.point(&self.indices(flat));
        x[..self.axes.len()].to_vec()
    }
}

pub(super) fn scan(spec: &InequalitySpec, domain: &[(f64, f64)], step: f64, faces: &[Face]) -> ScanOutcome {
    let axes: Vec<Axis> = domain
        .iter()
        .map(|&(lo, hi)| {
            let n = ((hi - lo) / step).ceil() as usize + 1;
            Axis { lo, hi, h: (hi - lo) / (n - 1) as f64, n }
        })
        .collect();
    let d = axes.len();
    let h_max = axes.iter().map(|a| a.h).fold(0.0, f64::max);
    let mut strides = vec![1usize; d];
    for k in (1..d.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * axes[k + 1].n;
    }
    let slab_len: usize = axes[1..].iter().map(|a| a.n).product();
    let grid = Grid { axes, slab_len, strides };
    let identity = spec.kind == ClaimKind::Identity;

    let mut face_states: Vec<FaceState> = faces
        .iter()
        .map(|&face| {
            let a = grid.axes[face.axis];
            let limit = 0.1 * (a.hi - a.lo);
            let mut radii = vec![8.0 * a.h];
            while radii[radii.len() - 1] * 2.0 <= limit {
                let next = radii[radii.len() - 1] * 2.0;
                radii.push(next);
            }
            let buckets = vec![Stats::default(); radii.len()];
            FaceState { face, radii, buckets }
        })
        .collect();
    let mut outside = Stats::default();
    let mut lipschitz_max: f64 = 0.0;
    let mut nonfinite: Option<u64> = None;
    let mut violation: Option<(f64, u64)> = None;

    let eval_slab = |i0: usize| -> Vec<f64> {
        (0..grid.slab_len)
            .into_par_iter()
            .map(|j| {
                let mut idx = grid.indices(j as u64);
                idx[0] = i0;
                let x = grid.point(&idx);
                (spec.margin)(&x[..d])
            })
            .collect()
    };

    let n0 = grid.axes[0].n;
    let mut prev: Option<Vec<f64>> = None;
    let mut cur = eval_slab(0);
    for i0 in 0..n0 {
        let next = if i0 + 1 < n0 { Some(eval_slab(i0 + 1)) } else { None };
        for j in 0..grid.slab_len {
            let flat = (i0 * grid.slab_len + j) as u64;
            let phi = cur[j];
            if !phi.is_finite() {
                nonfinite.get_or_insert(flat);
                continue;
            }
            let mut idx = grid.indices(j as u64);
            idx[0] = i0;
            // value of the neighbour one step along `axis` in direction `dir`
            let neighbour = |axis: usize, dir: isize| -> Option<f64> {
                let i = idx[axis] as isize + dir;
                if i < 0 || i as usize >= grid.axes[axis].n {
                    return None;
                }
                if axis == 0 {
                    if dir < 0 { prev.as_ref().map(|s| s[j]) } else { next.as_ref().map(|s| s[j]) }
                } else {
                    let off = grid.strides[axis];
                    Some(if dir < 0 { cur[j - off] } else { cur[j + off] })
                }
            };
            let mut slope: f64 = 0.0;
            for axis in 0..d {
                for dir in [-1isize, 1] {
                    if let Some(v) = neighbour(axis, dir) {
                        slope = slope.max((v - phi).abs() / grid.axes[axis].h);
                    }
                }
            }
            let lip = if identity { 0.0 } else { 2.0 * slope };
            lipschitz_max = lipschitz_max.max(lip);
            let slack = phi - lip * h_max;

            let mut nearest: Option<(usize, usize, usize)> = None; // (face, bucket, steps from face)
            for (fi, fs) in face_states.iter().enumerate() {
                let a = grid.axes[fs.face.axis];
                let steps = match fs.face.side {
                    Side::Lower => idx[fs.face.axis],
                    Side::Upper => a.n - 1 - idx[fs.face.axis],
                };
                let dist = steps as f64 * a.h;
                if let Some(b) = fs.radii.iter().position(|&r| dist < r) {
                    if nearest.is_none_or(|(_, _, s)| steps < s) {
                        nearest = Some((fi, b, steps));
                    }
                }
            }

            let on_face = matches!(nearest, Some((_, _, 0)));
            if phi < 0.0 && !(on_face && phi >= -FACE_TOL) && violation.is_none_or(|(v, _)| phi < v) {
                violation = Some((phi, flat));
            }
            let stats = match nearest {
                Some((fi, b, _)) => {
                    let fs = &face_states[fi];
                    let dir = if fs.face.side == Side::Lower { 1 } else { -1 };
                    let inward = neighbour(fs.face.axis, dir)
                        .map(|v| (v - phi) / grid.axes[fs.face.axis].h)
                        .unwrap_or(f64::NEG_INFINITY);
                    let st = &mut face_states[fi].buckets[b];
                    if inward < st.min_inward.0 {
                        st.min_inward = (inward, flat);
                    }
                    st
                }
                None => &mut outside,
            };
            if on_face {
                stats.max_face_abs = stats.max_face_abs.max(phi.abs());
                continue;
            }
            stats.count += 1;
            if phi < stats.min_phi.0 {
                stats.min_phi = (phi, flat, lip);
            }
            if slack < stats.min_slack.0 {
                stats.min_slack = (slack, flat);
            }
        }
        prev = Some(std::mem::replace(&mut cur, next.unwrap_or_default()));
    }

    let samples = grid.axes.iter().map(|a| a.n as u64).product();
    let mut verdict = Verdict::Certified;
    let mut witness: Option<Vec<f64>> = None;
    let mut notes: Vec<String> = Vec::new();
    let mut fail = |verdict: &mut Verdict, at: u64, why: String, grid: &Grid| {
        *verdict = verdict.worst(Verdict::Inconclusive);
        if witness.is_none() {
            witness = Some(grid.point_vec(at));
        }
        notes.push(why);
    };

    if let Some(at) = nonfinite {
        fail(&mut verdict, at, "non-finite margin".into(), &grid);
    }

    let mut worst = outside.min_phi;
    if !outside.slack_ok() {
        fail(&mut verdict, outside.min_slack.1, format!("margin rule fails (slack {:e})", outside.min_slack.0), &grid);
    }
    let mut zones = Vec::new();
    for fs in &face_states {
        let m = fs.buckets.len();
        let chosen = (0..m).find(|&jz| fs.buckets[..=jz].iter().all(Stats::zone_ok) && fs.buckets[jz + 1..].iter().all(Stats::slack_ok));
        let jz = chosen.unwrap_or(m - 1);
        if chosen.is_none() {
            let bad = fs.buckets.iter().find(|s| !s.zone_ok()).map(|s| {
                if s.min_phi.0 <= 0.0 { s.min_phi.1 } else { s.min_inward.1 }
            });
            fail(&mut verdict, bad.unwrap_or(0), format!("face band on axis {} fails", fs.face.axis), &grid);
        }
        for st in &fs.buckets[jz + 1..] {
            if st.min_phi.0 < worst.0 {
                worst = st.min_phi;
            }
        }
        let max_face_abs = fs.buckets[0].max_face_abs;
        if max_face_abs > FACE_TOL {
            fail(&mut verdict, 0, format!("margin {max_face_abs:e} on the excepted face"), &grid);
        }
        let radius = fs.radii[jz];
        let (probes, probes_ok) = probe_face(spec, &grid, fs.face, radius);
        if !probes_ok {
            fail(&mut verdict, 0, format!("probes towards face on axis {} fail", fs.face.axis), &grid);
        }
        zones.push(ZoneReport {
            face: fs.face,
            radius,
            max_face_value: max_face_abs,
            min_inward_slope: fs.buckets[..=jz].iter().map(|s| s.min_inward.0).fold(f64::INFINITY, f64::min),
            probes,
            probes_ok,
        });
    }
    if worst.0 == f64::INFINITY {
        // everything lies in face bands
        for fs in &face_states {
            for st in &fs.buckets {
                if st.min_phi.0 < worst.0 {
                    worst = st.min_phi;
                }
            }
        }
    }
    if let Some((v, at)) = violation {
        verdict = Verdict::Violated;
        witness = Some(grid.point_vec(at));
        notes.insert(0, format!("margin {v:e} < 0"));
    }
    ScanOutcome {
        verdict,
        worst_margin: worst.0,
        worst_point: if worst.0.is_finite() { grid.point_vec(worst.1) } else { vec![] },
        lipschitz_at_worst: worst.2,
        lipschitz_max,
        samples,
        zones,
        witness,
        note: if notes.is_empty() { None } else { Some(notes.join("; ")) },
    }
}

/// Marches into the face from a lattice of face points along `r·2^{−k}`;
/// the margin must be positive and shrink monotonically towards the face.
fn probe_face(spec: &InequalitySpec, grid: &Grid, face: Face, radius: f64) -> (usize, bool) {
    let d = grid.axes.len();
    let ticks = |a: &Axis| -> Vec<f64> {
        let k = PROBES_PER_AXIS.min(a.n);
        (0..k).map(|i| a.lo + (a.hi - a.lo) * i as f64 / (k - 1) as f64).collect()
    };
    let mut lattice: Vec<[f64; 3]> = vec![[0.0; 3]];
    for (k, a) in grid.axes.iter().enumerate() {
        let vals = if k == face.axis {
            vec![if face.side == Side::Lower { a.lo } else { a.hi }]
        } else {
            ticks(a)
        };
        lattice = lattice
            .iter()
            .flat_map(|p| {
                vals.iter().map(move |&v| {
                    let mut q = *p;
                    q[k] = v;
                    q
                })
            })
            .collect();
    }
    let sign = if face.side == Side::Lower { 1.0 } else { -1.0 };
    let mut count = 0;
    let mut ok = true;
    for base in lattice {
        if (spec.margin)(&base[..d]).abs() > FACE_TOL {
            ok = false;
        }
        let mut last = f64::INFINITY;
        for k in 0..=PROBE_LEVELS {
            let mut x = base;
            x[face.axis] += sign * radius * 0.5f64.powi(k);
            let v = (spec.margin)(&x[..d]);
            count += 1;
            if !(v > 0.0 && v < last) {
                ok = false;
            }
            last = v;
        }
    }
    (count, ok)
}

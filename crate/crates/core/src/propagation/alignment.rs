//! Alignment of primal and dual scalar pairs, the quadruple set `M`, and the
//! R-partition of a supporting cone.

use serde::{Deserialize, Serialize};

use crate::geometry::SupportCone;
use crate::linalg::normalized;
use crate::plant::{Model, PlantSpec};

/// `(y, v)` is aligned at time k with `(y*, v*)`: a nonzero dual pins the
/// primal to the matching bound, and a primal strictly inside its bound forces
/// the dual to zero.
pub fn aligned(y: f64, v: f64, y_star: f64, v_star: f64, z: f64, tol: f64) -> bool {
    let v_ok = if v_star > tol {
        (v - 1.0).abs() <= tol
    } else if v_star < -tol {
        (v + 1.0).abs() <= tol
    } else {
        true
    };
    let v_inner = v.abs() < 1.0 - tol;
    let e = y - z;
    let y_ok = if y_star > tol {
        (e - 1.0).abs() <= tol
    } else if y_star < -tol {
        (e + 1.0).abs() <= tol
    } else {
        true
    };
    let y_inner = e.abs() < 1.0 - tol;
    v_ok && y_ok && (!v_inner || v_star.abs() <= tol) && (!y_inner || y_star.abs() <= tol)
}

/// Sign of a dual component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: f64) -> Self {
        if x > 0.0 {
            Sign::Pos
        } else if x < 0.0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    fn value(self) -> f64 {
        match self {
            Sign::Neg => -1.0,
            Sign::Zero => 0.0,
            Sign::Pos => 1.0,
        }
    }
}

/// An element `(v, y, v*, y*)` of `M` with its sign class `(sign v*, sign y*)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadruple {
    pub v: f64,
    pub y: f64,
    pub v_star: f64,
    pub y_star: f64,
    pub pattern: (Sign, Sign),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MKind {
    Empty,
    Finite,
    /// A continuum of primal points along the measurement line; only the
    /// endpoints are listed.
    Segment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MResult {
    pub kind: MKind,
    pub quadruples: Vec<Quadruple>,
    pub v_range: Option<(f64, f64)>,
}

impl MResult {
    fn empty() -> Self {
        Self { kind: MKind::Empty, quadruples: vec![], v_range: None }
    }
}

/// The v-extent of the line `y - n_1 v = s` inside the square
/// `|v| <= 1, |y - z| <= 1`.
pub fn line_square_interval(s: f64, n1: f64, z: f64, tol: f64) -> Option<(f64, f64)> {
    if n1 == 0.0 {
        return ((s - z).abs() <= 1.0 + tol).then_some((-1.0, 1.0));
    }
    let a = (z - 1.0 - s) / n1;
    let b = (z + 1.0 - s) / n1;
    let lo = a.min(b).max(-1.0);
    let hi = a.max(b).min(1.0);
    if lo <= hi {
        Some((lo, hi))
    } else if lo - hi <= tol {
        let mid = 0.5 * (lo + hi);
        Some((mid, mid))
    } else {
        None
    }
}

/// Range of v over which `x_prev` has successors given measurement `z`.
/// Each v in the range yields the successor `A x_prev + B v`.
pub fn successor_interval(model: &Model, x_prev: &[f64], z: f64) -> Option<(f64, f64)> {
    let s = model.est.output_offset(x_prev);
    line_square_interval(s, model.plant.n_first(), z, 0.0)
}

/// Representative dual pair `(v*, y*)` for a sign class, or `None` when no
/// solution of `d_{m+1} v* + n_{m+1} y* = -t` has those signs.
fn dual_representative(sv: Sign, sy: Sign, t: f64, n: f64, d: f64) -> Option<(f64, f64)> {
    match (sv, sy) {
        (Sign::Zero, Sign::Zero) => (t == 0.0).then_some((0.0, 0.0)),
        (_, Sign::Zero) => {
            let vs = -t / d;
            (Sign::of(vs) == sv).then_some((vs, 0.0))
        }
        (Sign::Zero, _) => {
            if n == 0.0 {
                return None;
            }
            let ys = -t / n;
            (Sign::of(ys) == sy).then_some((0.0, ys))
        }
        _ => {
            if n == 0.0 {
                let vs = -t / d;
                let mag = (t / d).abs();
                return (Sign::of(vs) == sv).then_some((vs, sy.value() * mag));
            }
            let unit = if t == 0.0 { 1.0 } else { (t / n).abs() };
            [1.0, 0.5, 2.0].into_iter().find_map(|c| {
                let ys = sy.value() * c * unit;
                let vs = (-t - n * ys) / d;
                (Sign::of(vs) == sv).then_some((vs, ys))
            })
        }
    }
}

/// Canonical elements of `M(s, t, z)`: one quadruple per feasible sign class
/// of `(v*, y*)`, preferring `y* = 0`.
///
/// The primal part only depends on the signs of the duals, so one
/// representative per class loses no successors. When `t = 0` and the
/// measurement line crosses the square, every point of the crossing is
/// aligned with the zero dual and the result is a segment.
pub fn compute_m(s: f64, t: f64, z: f64, plant: &PlantSpec, tol: f64) -> MResult {
    let n1 = plant.n_first();
    let (n, d) = (plant.n_last(), plant.d_last());
    let scale = 1.0 + s.abs() + z.abs();
    let ptol = tol * scale;
    let t = if t.abs() <= 1e-15 { 0.0 } else { t };

    let Some((vlo, vhi)) = line_square_interval(s, n1, z, ptol) else {
        return MResult::empty();
    };
    let y_at = |v: f64| s + n1 * v;
    let in_band = |y: f64| (y - z).abs() <= 1.0 + ptol;

    let signs = [Sign::Neg, Sign::Zero, Sign::Pos];
    let mut quads: Vec<Quadruple> = Vec::new();
    let mut segment = None;
    for &sv in &signs {
        for &sy in &signs {
            let Some((vs, ys)) = dual_representative(sv, sy, t, n, d) else {
                continue;
            };
            let mut push = |v: f64| {
                quads.push(Quadruple { v, y: y_at(v), v_star: vs, y_star: ys, pattern: (sv, sy) });
            };
            match (sv, sy) {
                (Sign::Zero, Sign::Zero) => {
                    if vhi - vlo > ptol {
                        segment = Some((vlo, vhi));
                    }
                    push(vlo);
                    if vhi > vlo {
                        push(vhi);
                    }
                }
                (Sign::Zero, _) => {
                    let target = z + sy.value();
                    if n1 == 0.0 {
                        // line coincides with a horizontal edge of the square
                        if (s - target).abs() <= ptol {
                            push(-1.0);
                            push(1.0);
                        }
                    } else {
                        let v = (target - s) / n1;
                        if v.abs() <= 1.0 + ptol {
                            push(v.clamp(-1.0, 1.0));
                        }
                    }
                }
                (_, Sign::Zero) => {
                    let v = sv.value();
                    if in_band(y_at(v)) {
                        push(v);
                    }
                }
                _ => {
                    let v = sv.value();
                    if (y_at(v) - (z + sy.value())).abs() <= ptol {
                        push(v);
                    }
                }
            }
        }
    }

    // one entry per primal point, keeping a y* = 0 representative if any;
    // otherwise every sign class at that point is kept
    let mut out: Vec<Quadruple> = Vec::new();
    let mut done: Vec<f64> = Vec::new();
    for q in &quads {
        if done.iter().any(|v| (v - q.v).abs() <= ptol) {
            continue;
        }
        done.push(q.v);
        let group: Vec<&Quadruple> = quads.iter().filter(|r| (r.v - q.v).abs() <= ptol).collect();
        match group.iter().find(|r| r.y_star == 0.0) {
            Some(zero) => out.push(**zero),
            None => out.extend(group.into_iter().copied()),
        }
    }

    let kind = if out.is_empty() {
        MKind::Empty
    } else if segment.is_some() {
        MKind::Segment
    } else {
        MKind::Finite
    };
    MResult { kind, quadruples: out, v_range: segment }
}

/// Which part of a supporting cone governs propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RTag {
    /// Some direction in the cone has zero first component.
    R1,
    /// All directions have positive first component.
    R2,
    /// All directions have negative first component.
    R3,
}

/// Classify a cone by the sign of the first component of its directions and
/// pick a representative direction: for `R1` one with first component exactly
/// zero, otherwise the angular midpoint.
pub fn partition_r(cone: &SupportCone, tol: f64) -> (RTag, Vec<f64>) {
    let gens = &cone.generators;
    if let Some(g) = gens.iter().find(|g| g[0].abs() <= tol && g.len() > 1) {
        let mut r = g.clone();
        r[0] = 0.0;
        return (RTag::R1, normalized(&r).unwrap_or(r));
    }
    let pos = gens.iter().find(|g| g[0] > 0.0);
    let neg = gens.iter().find(|g| g[0] < 0.0);
    match (pos, neg) {
        (Some(p), Some(q)) => {
            let (a, b) = (p[0], -q[0]);
            let mut r: Vec<f64> = p.iter().zip(q).map(|(pi, qi)| b * pi + a * qi).collect();
            r[0] = 0.0;
            (RTag::R1, normalized(&r).unwrap_or(r))
        }
        (Some(_), None) => (RTag::R2, cone.midpoint()),
        _ => (RTag::R3, cone.midpoint()),
    }
}

use serde::{Deserialize, Serialize};

use super::alignment::{MKind, RTag};
use super::point::{propagate_point, PointPropagation};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, supporting_cone, Polytope, SupportCone};
use crate::linalg::{axpy, dist, dot, sub};
use crate::plant::Model;
use crate::tolerance::Tolerances;

/// A boundary point of the current set with its supporting cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub point: Vec<f64>,
    pub cone: SupportCone,
    /// Angular extent of the cone (planar sets only).
    pub cone_interval: Option<(f64, f64)>,
}

impl BoundaryPoint {
    pub fn new(point: Vec<f64>, cone: SupportCone) -> Self {
        let cone_interval = cone.angular_interval();
        Self { point, cone, cone_interval }
    }
}

/// The uncertainty set `S_k` with the vertex cones used to propagate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Front {
    pub polytope: Polytope,
    pub boundary_points: Vec<BoundaryPoint>,
    pub k: usize,
    pub z_history: Vec<f64>,
}

impl Front {
    /// Builds a front whose boundary points are the vertices of `poly` with
    /// their full normal cones.
    pub fn from_polytope(poly: Polytope, k: usize, z_history: Vec<f64>) -> Result<Self> {
        if !poly.has_interior() {
            return Err(Error::DegenerateFront { k });
        }
        let boundary_points = poly
            .vertices()
            .iter()
            .map(|v| Ok(BoundaryPoint::new(v.clone(), supporting_cone(&poly, v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { polytope: poly, boundary_points, k, z_history })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PropagationOptions {
    /// Points sampled from the interior of each edge of `S_{k-1}`.
    pub sample_density: usize,
    pub tol: Tolerances,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self { sample_density: 64, tol: Tolerances::default() }
    }
}

/// Where a propagated precursor came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// A vertex of `S_{k-1}`, propagated with its full cone.
    Vertex,
    /// An edge point where the measurement line passes a corner of the
    /// disturbance square.
    Breakpoint,
    /// A uniform sample along an edge.
    Sample,
}

/// One `(x_k, x*_k)` pair emitted by point propagation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmittedPair {
    pub precursor: Vec<f64>,
    pub x: Vec<f64>,
    pub x_star: Vec<f64>,
    pub tag: RTag,
    pub source: Source,
}

/// Summary of one `propagate_point` call.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub precursor: Vec<f64>,
    pub source: Source,
    pub tag: RTag,
    pub kind: MKind,
    pub distinct_successors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOutcome {
    pub front: Front,
    pub emitted: Vec<EmittedPair>,
    pub segments: Vec<(Vec<f64>, Vec<f64>)>,
    /// Successors of interior precursors (one-dimensional plants only).
    pub face_images: Vec<Vec<f64>>,
    /// Oracle vertices of `S_k` that the propagated candidates miss: no
    /// candidate within `DEFECT_TOL` (scaled) and outside the candidate hull by
    /// more than that.
    pub defects: Vec<Vec<f64>>,
    pub points: Vec<PointSummary>,
}

/// Distance below which an oracle vertex counts as reproduced.
pub const DEFECT_TOL: f64 = 1e-7;

fn precursors(front: &Front, model: &Model, z: f64, density: usize) -> Vec<(Vec<f64>, SupportCone, Source)> {
    let mut out: Vec<(Vec<f64>, SupportCone, Source)> = front
        .boundary_points
        .iter()
        .map(|b| (b.point.clone(), b.cone.clone(), Source::Vertex))
        .collect();
    let poly = &front.polytope;
    if poly.dim() != 2 {
        return out;
    }
    let n1 = model.plant.n_first();
    let verts = poly.vertices();
    let nv = verts.len();
    for (i, hs) in poly.halfspaces().iter().enumerate() {
        let (a, b) = (&verts[i], &verts[(i + 1) % nv]);
        let cone = |p: &Vec<f64>| SupportCone::new(p.clone(), vec![hs.normal.clone()]);
        let e = sub(b, a);
        let (ca, cb) = (model.est.output_offset(a), model.est.output_offset(b));
        for sv in [-1.0, 1.0] {
            for sy in [-1.0, 1.0] {
                let level = z + sy - n1 * sv;
                if (ca - level) * (cb - level) < 0.0 {
                    let p = axpy(a, (level - ca) / (cb - ca), &e);
                    out.push((p.clone(), cone(&p), Source::Breakpoint));
                }
            }
        }
        for j in 1..=density {
            let p = axpy(a, j as f64 / (density + 1) as f64, &e);
            out.push((p.clone(), cone(&p), Source::Sample));
        }
    }
    out
}

/// Successors of interior points of an interval `S_{k-1}` that saturate both
/// the disturbance and the measurement bound. For one-dimensional plants these
/// can be endpoints of `S_k` that no endpoint of `S_{k-1}` reaches.
fn face_images(poly: &Polytope, model: &Model, z: f64, tol: f64) -> Vec<Vec<f64>> {
    let Some((lo, hi)) = poly.bounds() else {
        return vec![];
    };
    let c = model.est.c_row[0];
    let n1 = model.plant.n_first();
    let mut out = Vec::new();
    for sv in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            let x = (z + sy - n1 * sv) / c;
            if x > lo - tol && x < hi + tol {
                let x = x.clamp(lo, hi);
                out.push(vec![model.est.a[(0, 0)] * x + model.est.b_col[0] * sv]);
            }
        }
    }
    out
}

/// One step of the primal/dual recursion: `(S_{k-1}, cones)` and `z_k` to
/// `(S_k, cones)`.
///
/// Every vertex of `S_{k-1}` is propagated with its full cone. For planar sets
/// each edge also contributes the points where the measurement line passes a
/// corner of the disturbance square, plus `sample_density` evenly spaced
/// samples. For intervals, successors of interior points are added. `S_k` is
/// the hull of everything emitted. When `oracle` is given, its vertices that
/// no candidate reproduces are returned as defects.
pub fn propagate_front(
    model: &Model,
    front: &Front,
    z: f64,
    opts: &PropagationOptions,
    oracle: Option<&Polytope>,
) -> Result<StepOutcome> {
    let k = front.k + 1;
    if !front.polytope.has_interior() {
        return Err(Error::DegenerateFront { k: front.k });
    }
    let tol = opts.tol.align;
    let mut emitted = Vec::new();
    let mut segments = Vec::new();
    let mut points = Vec::new();
    let mut candidates: Vec<Vec<f64>> = Vec::new();

    for (x_prev, cone, source) in precursors(front, model, z, opts.sample_density) {
        let prop: PointPropagation = propagate_point(model, &x_prev, &cone, z, tol)?;
        points.push(PointSummary {
            precursor: x_prev.clone(),
            source,
            tag: prop.tag,
            kind: prop.kind,
            distinct_successors: prop.distinct_successors(1e-9),
        });
        for s in prop.successors {
            candidates.push(s.x.clone());
            emitted.push(EmittedPair {
                precursor: x_prev.clone(),
                x: s.x,
                x_star: s.x_star,
                tag: prop.tag,
                source,
            });
        }
        if let Some((a, b)) = prop.segment {
            candidates.push(a.clone());
            candidates.push(b.clone());
            segments.push((a, b));
        }
    }
    let face_images = if front.polytope.dim() == 1 {
        face_images(&front.polytope, model, z, opts.tol.boundary * front.polytope.scale())
    } else {
        vec![]
    };
    candidates.extend(face_images.iter().cloned());

    if candidates.is_empty() {
        return Err(Error::EmptyFront { k });
    }
    let hull = convex_hull(&candidates);
    if !hull.has_interior() {
        return Err(Error::DegenerateFront { k });
    }

    let defects = match oracle {
        Some(o) => {
            let dtol = DEFECT_TOL * o.scale();
            // a vertex with no candidate nearby still counts as reproduced when
            // it sits on the candidate hull: that happens only for vertices
            // whose turn angle is at the level of rounding
            o.vertices()
                .iter()
                .filter(|v| !candidates.iter().any(|c| dist(c, v) <= dtol))
                .filter(|v| hull.distance_to(v) > dtol)
                .cloned()
                .collect()
        }
        None => vec![],
    };
    if !defects.is_empty() {
        log::debug!("step {k}: {} oracle vertices not reproduced", defects.len());
    }

    let mut z_history = front.z_history.clone();
    z_history.push(z);
    let front = Front::from_polytope(hull, k, z_history)?;
    Ok(StepOutcome { front, emitted, segments, face_images, defects, points })
}

/// Largest `|<x*, x> - h_S(x*)|` over emitted pairs, with `x*` normalized.
pub fn max_support_gap(outcome: &StepOutcome) -> f64 {
    let poly = &outcome.front.polytope;
    outcome
        .emitted
        .iter()
        .filter_map(|e| {
            let n = dot(&e.x_star, &e.x_star).sqrt();
            let h = poly.h(&e.x_star).ok()?;
            Some(((h - dot(&e.x_star, &e.x)) / n).abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> Model {
        Model::from_coefficients(&[0.0, 1.0], &[1.0, -0.5]).unwrap()
    }

    fn unit_front() -> Front {
        Front::from_polytope(Polytope::interval(-1.0, 1.0), 1, vec![0.0]).unwrap()
    }

    #[test]
    fn interval_examples() {
        let m = demo();
        let opts = PropagationOptions::default();
        let out = propagate_front(&m, &unit_front(), 0.0, &opts, None).unwrap();
        assert_eq!(out.front.polytope.bounds(), Some((-1.5, 1.5)));
        let out = propagate_front(&m, &unit_front(), 1.5, &opts, None).unwrap();
        assert_eq!(out.front.polytope.bounds(), Some((-0.75, 1.5)));
        let err = propagate_front(&m, &unit_front(), 10.0, &opts, None).unwrap_err();
        assert_eq!(err, Error::EmptyFront { k: 2 });
    }
}

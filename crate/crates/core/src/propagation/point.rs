use serde::{Deserialize, Serialize};

use super::alignment::{compute_m, partition_r, MKind, Quadruple, RTag};
use crate::error::{Error, Result};
use crate::geometry::SupportCone;
use crate::linalg::{dist, matvec, norm};
use crate::plant::Model;

/// Pairs with a propagated direction at or below this norm are dropped.
pub const ZERO_DIRECTION: f64 = 1e-12;

/// A successor `x_k` with a supporting direction `x*_k` of `S_k` at it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Successor {
    pub x: Vec<f64>,
    pub x_star: Vec<f64>,
    pub quadruple: Quadruple,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointPropagation {
    pub tag: RTag,
    pub representative: Vec<f64>,
    pub kind: MKind,
    pub successors: Vec<Successor>,
    /// Endpoints of the successor segment when the M-set is a segment.
    pub segment: Option<(Vec<f64>, Vec<f64>)>,
}

impl PointPropagation {
    /// Number of distinct successor points.
    pub fn distinct_successors(&self, tol: f64) -> usize {
        let mut seen: Vec<&Vec<f64>> = Vec::new();
        for s in &self.successors {
            if !seen.iter().any(|p| dist(p, &s.x) <= tol) {
                seen.push(&s.x);
            }
        }
        seen.len()
    }
}

/// Propagate a boundary point of `S_{k-1}` using the representative direction
/// that `partition_r` picks from its cone.
pub fn propagate_point(
    model: &Model,
    x_prev: &[f64],
    cone: &SupportCone,
    z: f64,
    tol: f64,
) -> Result<PointPropagation> {
    if cone.is_empty() {
        return Err(Error::ConePrecondition);
    }
    let (tag, rep) = partition_r(cone, tol);
    let mut out = propagate_point_with(model, x_prev, &rep, z, tol);
    out.tag = tag;
    Ok(out)
}

/// Propagate `x_prev` with an explicit supporting direction `x*_prev`.
pub fn propagate_point_with(
    model: &Model,
    x_prev: &[f64],
    x_star_prev: &[f64],
    z: f64,
    tol: f64,
) -> PointPropagation {
    let s = model.est.output_offset(x_prev);
    let t = x_star_prev[0];
    let m_set = compute_m(s, t, z, &model.plant, tol);
    let ax = matvec(&model.est.a, x_prev);
    let ax_star = matvec(&model.reg.a_star, x_star_prev);

    let successors: Vec<Successor> = m_set
        .quadruples
        .iter()
        .filter_map(|q| {
            let x: Vec<f64> = ax.iter().zip(&model.est.b_col).map(|(a, b)| a + b * q.v).collect();
            let x_star: Vec<f64> =
                ax_star.iter().zip(&model.reg.b_star).map(|(a, b)| a + b * q.y_star).collect();
            (norm(&x_star) > ZERO_DIRECTION).then_some(Successor { x, x_star, quadruple: *q })
        })
        .collect();

    let segment = m_set.v_range.map(|(lo, hi)| {
        let at = |v: f64| ax.iter().zip(&model.est.b_col).map(|(a, b)| a + b * v).collect();
        (at(lo), at(hi))
    });
    let tag = if t == 0.0 {
        RTag::R1
    } else if t > 0.0 {
        RTag::R2
    } else {
        RTag::R3
    };
    PointPropagation {
        tag,
        representative: x_star_prev.to_vec(),
        kind: m_set.kind,
        successors,
        segment,
    }
}

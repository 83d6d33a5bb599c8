use serde::{Deserialize, Serialize};

use super::{Polytope, Shape, BOUNDARY_TOL};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, normalized};

/// Outward normal cone of a polytope at a boundary point, stored by unit
/// generators. In the plane the cone is the closed angular interval swept
/// counter-clockwise from `generators[0]` to `generators[1]` (span < π); a
/// single generator means the point is interior to an edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportCone {
    pub base_point: Vec<f64>,
    pub generators: Vec<Vec<f64>>,
}

/// Angle between unit generators below which they are merged.
pub const ANGLE_TOL: f64 = 1e-9;

fn cross(a: &[f64], b: &[f64]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

impl SupportCone {
    /// Normalizes the generators and merges those within `ANGLE_TOL` of each
    /// other. Planar generators are put in counter-clockwise order.
    pub fn new(base_point: Vec<f64>, generators: Vec<Vec<f64>>) -> Self {
        let mut gens: Vec<Vec<f64>> = Vec::new();
        for g in generators.iter().filter_map(|g| normalized(g)) {
            let dup = gens.iter().any(|h| {
                let c = dot(h, &g).clamp(-1.0, 1.0);
                c.acos() <= ANGLE_TOL
            });
            if !dup {
                gens.push(g);
            }
        }
        if base_point.len() == 2 && gens.len() == 2 && cross(&gens[0], &gens[1]) < 0.0 {
            gens.swap(0, 1);
        }
        Self { base_point, generators: gens }
    }

    pub fn dim(&self) -> usize {
        self.base_point.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `(start, end)` angles in radians with `start <= end < start + π`, for
    /// planar cones.
    pub fn angular_interval(&self) -> Option<(f64, f64)> {
        if self.dim() != 2 || self.is_empty() {
            return None;
        }
        let a0 = self.generators[0][1].atan2(self.generators[0][0]);
        let g1 = self.generators.last().unwrap();
        let mut a1 = g1[1].atan2(g1[0]);
        while a1 < a0 {
            a1 += std::f64::consts::TAU;
        }
        Some((a0, a1))
    }

    /// Unit direction a fraction `t ∈ [0, 1]` of the way across the cone.
    pub fn direction_at(&self, t: f64) -> Vec<f64> {
        match self.angular_interval() {
            Some((a0, a1)) => {
                let a = a0 + t * (a1 - a0);
                vec![a.cos(), a.sin()]
            }
            None => self.generators[0].clone(),
        }
    }

    /// The angular midpoint (planar) or the normalized generator sum.
    pub fn midpoint(&self) -> Vec<f64> {
        if self.dim() == 2 {
            return self.direction_at(0.5);
        }
        let mut s = vec![0.0; self.dim()];
        for g in &self.generators {
            for (si, gi) in s.iter_mut().zip(g) {
                *si += gi;
            }
        }
        normalized(&s).unwrap_or_else(|| self.generators[0].clone())
    }

    /// Whether `dir` lies in the cone, allowing an angular slack of `tol`.
    pub fn contains(&self, dir: &[f64], tol: f64) -> bool {
        let Some(d) = normalized(dir) else {
            return false;
        };
        match (self.dim(), self.generators.len()) {
            (_, 0) => false,
            (2, 2) => {
                cross(&self.generators[0], &d) >= -tol && cross(&d, &self.generators[1]) >= -tol
                    && dot(&self.midpoint(), &d) > 0.0
            }
            _ => self.generators.iter().any(|g| norm(&crate::linalg::sub(g, &d)) <= tol),
        }
    }
}

/// Normal cone of `poly` at the boundary point `x`.
pub fn supporting_cone(poly: &Polytope, x: &[f64]) -> Result<SupportCone> {
    let tol = BOUNDARY_TOL * poly.scale();
    match poly.shape() {
        Shape::Empty => return Err(Error::ConePrecondition),
        Shape::Degenerate if poly.dim() >= 2 => return Err(Error::DegeneratePolytope),
        _ => {}
    }
    let excess = poly.max_excess(x);
    let gens: Vec<Vec<f64>> = poly
        .halfspaces()
        .iter()
        .filter(|h| h.excess(x).abs() <= tol)
        .map(|h| h.normal.clone())
        .collect();
    if excess > tol || gens.is_empty() {
        let distance = if excess > 0.0 { excess } else { -excess };
        return Err(Error::NotOnBoundary { distance });
    }
    Ok(SupportCone::new(x.to_vec(), gens))
}

//! Convex polytopes in R^m: intervals for m = 1, exact polygons for m = 2,
//! and support/hull queries for m = 3.
//!
//! Predicates are tolerance based. Absolute tolerances are scaled by
//! `1 + max |coordinate|` of the polytope so the same constants work for sets
//! of different size.

mod clip;
mod cone;
mod faces;
mod hull;

pub use clip::intersect_halfspaces;
pub use cone::{supporting_cone, SupportCone};
pub use faces::{face_tol, faces_f, Face, Faces};
pub use hull::convex_hull;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dist, dot, norm, sub};

/// Duplicate-point and collinearity tolerance used by the hull.
pub const HULL_TOL: f64 = 1e-10;
/// Boundary and face membership tolerance.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// `{x : <normal, x> <= offset}` with a unit outward normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// Signed excess `<normal, x> - offset`.
    pub fn excess(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Empty,
    /// Nonempty with empty interior (a point, or a segment in the plane).
    Degenerate,
    Full,
}

/// A convex polytope held in both vertex and halfspace form.
///
/// For m = 2 vertices are in counter-clockwise order. Degenerate sets keep an
/// H-rep that describes them exactly (a point or a segment is cut out by
/// opposite pairs of halfspaces).
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    halfspaces: Vec<Halfspace>,
    shape: Shape,
}

impl Polytope {
    pub(crate) fn from_parts(
        dim: usize,
        vertices: Vec<Vec<f64>>,
        halfspaces: Vec<Halfspace>,
        shape: Shape,
    ) -> Self {
        Self { dim, vertices, halfspaces, shape }
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, vertices: vec![], halfspaces: vec![], shape: Shape::Empty }
    }

    /// The closed interval `[lo, hi]` in R^1.
    pub fn interval(lo: f64, hi: f64) -> Self {
        convex_hull(&[vec![lo], vec![hi]])
    }

    pub fn point(x: &[f64]) -> Self {
        convex_hull(&[x.to_vec()])
    }

    /// The axis-aligned box `[-r, r]^dim`.
    pub fn cube(dim: usize, r: f64) -> Self {
        let pts: Vec<Vec<f64>> = (0..1usize << dim)
            .map(|mask| (0..dim).map(|i| if mask >> i & 1 == 1 { r } else { -r }).collect())
            .collect();
        convex_hull(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_empty(&self) -> bool {
        self.shape == Shape::Empty
    }

    pub fn is_degenerate(&self) -> bool {
        self.shape == Shape::Degenerate
    }

    pub fn has_interior(&self) -> bool {
        self.shape == Shape::Full
    }

    /// `1 + max |coordinate|`, the factor applied to absolute tolerances.
    pub fn scale(&self) -> f64 {
        1.0 + self.vertices.iter().flatten().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0_f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(dist(a, b));
            }
        }
        d
    }

    /// Interval endpoints for m = 1.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        if self.dim != 1 || self.is_empty() {
            return None;
        }
        let lo = self.vertices.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
        let hi = self.vertices.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max);
        Some((lo, hi))
    }

    /// `max_i <n_i, x> - b_i`: negative inside, zero on the boundary of a
    /// full-dimensional polytope, positive outside.
    pub fn max_excess(&self, x: &[f64]) -> f64 {
        self.halfspaces.iter().map(|h| h.excess(x)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        match self.shape {
            Shape::Empty => false,
            _ if self.halfspaces.is_empty() => self.vertices.iter().any(|v| dist(v, x) <= tol),
            _ => self.max_excess(x) <= tol,
        }
    }

    /// True when `x` lies on the boundary, up to `BOUNDARY_TOL` scaled.
    pub fn on_boundary(&self, x: &[f64]) -> bool {
        let tol = BOUNDARY_TOL * self.scale();
        match self.shape {
            Shape::Empty => false,
            Shape::Degenerate => self.contains(x, tol),
            Shape::Full => self.max_excess(x).abs() <= tol,
        }
    }

    /// Maximum of `<dir, x>` over the polytope together with every vertex
    /// attaining it.
    pub fn support(&self, dir: &[f64]) -> Result<(f64, Vec<Vec<f64>>)> {
        let dn = norm(dir);
        if dn == 0.0 || !dn.is_finite() {
            return Err(Error::ZeroDirection);
        }
        if self.is_empty() {
            return Ok((f64::NEG_INFINITY, vec![]));
        }
        let vals: Vec<f64> = self.vertices.iter().map(|v| dot(dir, v)).collect();
        let best = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let tol = BOUNDARY_TOL * dn * self.diameter().max(1.0);
        let argmax = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, &val)| best - val <= tol)
            .map(|(v, _)| v.clone())
            .collect();
        Ok((best, argmax))
    }

    /// Support value only.
    pub fn h(&self, dir: &[f64]) -> Result<f64> {
        Ok(self.support(dir)?.0)
    }

    /// Euclidean distance from `x` to the polytope (m ≤ 2).
    pub fn distance_to(&self, x: &[f64]) -> f64 {
        match (self.shape, self.vertices.len()) {
            (Shape::Empty, _) => f64::INFINITY,
            (_, 1) => dist(&self.vertices[0], x),
            _ if self.dim == 1 => {
                let (lo, hi) = self.bounds().unwrap();
                (lo - x[0]).max(x[0] - hi).max(0.0)
            }
            (Shape::Full, _) if self.max_excess(x) <= 0.0 => 0.0,
            _ => {
                let n = self.vertices.len();
                (0..n)
                    .map(|i| segment_distance(x, &self.vertices[i], &self.vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Two-sided Hausdorff distance between polytopes (m ≤ 2). For convex sets
    /// the directed distance is attained at a vertex.
    pub fn hausdorff(&self, other: &Polytope) -> f64 {
        let directed = |a: &Polytope, b: &Polytope| {
            a.vertices.iter().map(|v| b.distance_to(v)).fold(0.0_f64, f64::max)
        };
        match (self.is_empty(), other.is_empty()) {
            (true, true) => 0.0,
            (false, false) => directed(self, other).max(directed(other, self)),
            _ => f64::INFINITY,
        }
    }

    /// Vertex/halfspace consistency: every vertex satisfies every halfspace,
    /// and every halfspace is tight at `dim` or more vertices.
    pub fn check_representation(&self, tol: f64) -> bool {
        if self.shape != Shape::Full {
            return true;
        }
        self.halfspaces.iter().all(|h| {
            let mut tight = 0;
            for v in &self.vertices {
                let e = h.excess(v);
                if e > tol {
                    return false;
                }
                if e.abs() <= tol {
                    tight += 1;
                }
            }
            tight >= self.dim
        })
    }
}

/// Distance from `x` to the closed segment `[a, b]`.
pub fn segment_distance(x: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(&ab, &ab);
    if len2 == 0.0 {
        return dist(x, a);
    }
    let t = (dot(&sub(x, a), &ab) / len2).clamp(0.0, 1.0);
    let p: Vec<f64> = a.iter().zip(&ab).map(|(ai, di)| ai + t * di).collect();
    dist(x, &p)
}

#[derive(Serialize, Deserialize)]
struct PolytopeRepr {
    vertices: Vec<Vec<f64>>,
    halfspaces: Vec<Halfspace>,
}

impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeRepr { vertices: self.vertices.clone(), halfspaces: self.halfspaces.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolytopeRepr::deserialize(d)?;
        if repr.vertices.is_empty() {
            let dim = repr.halfspaces.first().map_or(0, |h| h.normal.len());
            return Ok(Polytope::empty(dim));
        }
        Ok(convex_hull(&repr.vertices))
    }
}

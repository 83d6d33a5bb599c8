use serde::{Deserialize, Serialize};

use super::{segment_distance, Polytope, BOUNDARY_TOL};
use crate::error::{Error, Result};
use crate::linalg::{dist, norm};

/// The face of a polytope maximizing a fixed direction, held by its vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<Vec<f64>>,
}

impl Face {
    pub fn is_point(&self) -> bool {
        self.vertices.len() <= 1
    }

    /// Membership in the relative interior. A face consisting of a single
    /// point is treated as having empty relative interior; for a segment the
    /// endpoints are excluded.
    pub fn relint_contains(&self, x: &[f64], tol: f64) -> bool {
        match self.vertices.as_slice() {
            [a, b] => {
                segment_distance(x, a, b) <= tol && dist(x, a) > tol && dist(x, b) > tol
            }
            _ => false,
        }
    }
}

/// The argmax faces of `+b_star` and `-b_star`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Faces {
    pub plus: Face,
    pub minus: Face,
}

impl Faces {
    /// Whether `x` lies in `relint F+ ∪ relint F-`.
    pub fn relint_contains(&self, x: &[f64], tol: f64) -> bool {
        self.plus.relint_contains(x, tol) || self.minus.relint_contains(x, tol)
    }
}

/// Faces of `poly` exposed by `±b_star`.
pub fn faces_f(poly: &Polytope, b_star: &[f64]) -> Result<Faces> {
    if !poly.has_interior() || poly.dim() > 2 {
        return Err(Error::DegeneratePolytope);
    }
    if norm(b_star) == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let (_, plus) = poly.support(b_star)?;
    let neg: Vec<f64> = b_star.iter().map(|c| -c).collect();
    let (_, minus) = poly.support(&neg)?;
    Ok(Faces { plus: Face { vertices: plus }, minus: Face { vertices: minus } })
}

/// Default membership tolerance for [`Face::relint_contains`], scaled to `poly`.
pub fn face_tol(poly: &Polytope) -> f64 {
    BOUNDARY_TOL * poly.scale()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_faces() {
        let sq = Polytope::cube(2, 1.0);
        let f = faces_f(&sq, &[0.0, 1.0]).unwrap();
        assert_eq!(f.plus.vertices.len(), 2);
        assert!(f.plus.relint_contains(&[0.3, 1.0], 1e-9));
        assert!(!f.plus.relint_contains(&[1.0, 1.0], 1e-9));
        assert!(!f.plus.relint_contains(&[-1.0, 1.0], 1e-9));

        let f = faces_f(&sq, &[1.0, 1.0]).unwrap();
        assert_eq!(f.plus.vertices, vec![vec![1.0, 1.0]]);
        assert!(!f.plus.relint_contains(&[1.0, 1.0], 1e-9));
    }

    #[test]
    fn interval_faces() {
        let f = faces_f(&Polytope::interval(-1.0, 1.0), &[1.0]).unwrap();
        assert_eq!(f.plus.vertices, vec![vec![1.0]]);
        assert_eq!(f.minus.vertices, vec![vec![-1.0]]);
    }

    #[test]
    fn degenerate_rejected() {
        let seg = Polytope::point(&[0.0, 0.0]);
        assert_eq!(faces_f(&seg, &[1.0, 0.0]), Err(Error::DegeneratePolytope));
    }
}

use super::{convex_hull, Halfspace, Polytope, HULL_TOL};
use crate::linalg::dot;

/// Clip `poly` by each halfspace in turn (Sutherland-Hodgman on the vertex
/// loop), then rebuild a minimal representation. The result may be empty or
/// degenerate; a cut along a supporting line keeps the touching face.
pub fn intersect_halfspaces(poly: &Polytope, cuts: &[Halfspace]) -> Polytope {
    let dim = poly.dim();
    if poly.is_empty() {
        return Polytope::empty(dim);
    }
    let tol = HULL_TOL * poly.scale();
    let mut ring: Vec<Vec<f64>> = poly.vertices().to_vec();
    for cut in cuts {
        if ring.is_empty() {
            break;
        }
        let s = dot(&cut.normal, &cut.normal).sqrt().max(f64::MIN_POSITIVE);
        let excess = |p: &[f64]| (dot(&cut.normal, p) - cut.offset) / s;
        let n = ring.len();
        let mut next = Vec::with_capacity(n + 1);
        for i in 0..n {
            let p = &ring[i];
            let q = &ring[(i + 1) % n];
            let (ep, eq) = (excess(p), excess(q));
            if ep <= tol {
                next.push(p.clone());
            }
            if (ep < -tol && eq > tol) || (ep > tol && eq < -tol) {
                let t = ep / (ep - eq);
                next.push(p.iter().zip(q).map(|(a, b)| a + t * (b - a)).collect());
            }
        }
        ring = next;
    }
    if ring.is_empty() {
        Polytope::empty(dim)
    } else {
        convex_hull(&ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Shape;

    #[test]
    fn clip_examples() {
        let sq = Polytope::cube(2, 1.0);
        let r = intersect_halfspaces(&sq, &[Halfspace::new(vec![1.0, 0.0], 0.5)]);
        let expected = crate::geometry::convex_hull(&[
            vec![-1.0, -1.0],
            vec![0.5, -1.0],
            vec![0.5, 1.0],
            vec![-1.0, 1.0],
        ]);
        assert_eq!(r.hausdorff(&expected), 0.0);

        let r = intersect_halfspaces(&sq, &[Halfspace::new(vec![1.0, 0.0], -2.0)]);
        assert!(r.is_empty());

        let r = intersect_halfspaces(
            &sq,
            &[Halfspace::new(vec![1.0, 0.0], 1.0), Halfspace::new(vec![-1.0, 0.0], -1.0)],
        );
        assert_eq!(r.shape(), Shape::Degenerate);
        assert_eq!(r.vertices().len(), 2);
    }

    #[test]
    fn interval_clip() {
        let iv = Polytope::interval(-1.0, 1.0);
        let r = intersect_halfspaces(&iv, &[Halfspace::new(vec![-1.0], -0.5)]);
        assert_eq!(r.bounds(), Some((0.5, 1.0)));
    }
}

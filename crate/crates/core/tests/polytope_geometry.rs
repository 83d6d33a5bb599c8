mod common;

use proptest::prelude::*;
use setmember::geometry::{convex_hull, faces_f, intersect_halfspaces, supporting_cone};
use setmember::linalg::{dot, norm};
use setmember::{Error, Halfspace, Polytope};

fn points(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    proptest::collection::vec(proptest::collection::vec(-5.0f64..5.0, 2), 3..n)
}

fn direction() -> impl Strategy<Value = Vec<f64>> {
    (0.0f64..std::f64::consts::TAU).prop_map(|t| vec![t.cos(), t.sin()])
}

/// Support value by brute force over the generating points.
fn h_brute(pts: &[Vec<f64>], d: &[f64]) -> f64 {
    pts.iter().map(|p| dot(p, d)).fold(f64::NEG_INFINITY, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hull_support_matches_brute_force(pts in points(30), d in direction()) {
        let poly = convex_hull(&pts);
        let h = poly.h(&d).unwrap();
        prop_assert!((h - h_brute(&pts, &d)).abs() <= 1e-9 * (1.0 + h.abs()));
        for p in &pts {
            prop_assert!(poly.contains(p, 1e-9 * poly.scale()));
        }
        for v in poly.vertices() {
            prop_assert!(pts.iter().any(|p| p == v));
        }
        prop_assert!(poly.check_representation(1e-9 * poly.scale()));
    }

    #[test]
    fn support_is_positively_homogeneous_and_subadditive(
        pts in points(20), a in direction(), b in direction(), t in 0.01f64..100.0,
    ) {
        let poly = convex_hull(&pts);
        let ha = poly.h(&a).unwrap();
        let scaled: Vec<f64> = a.iter().map(|x| x * t).collect();
        prop_assert!((poly.h(&scaled).unwrap() - t * ha).abs() <= 1e-9 * (1.0 + t * ha.abs()));
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        if norm(&sum) > 1e-6 {
            prop_assert!(poly.h(&sum).unwrap() <= ha + poly.h(&b).unwrap() + 1e-9 * poly.scale());
        }
    }

    #[test]
    fn clipping_agrees_with_a_grid(
        pts in points(12),
        cuts in proptest::collection::vec((direction(), -2.0f64..4.0), 1..4),
    ) {
        let poly = convex_hull(&pts);
        prop_assume!(poly.has_interior());
        let cuts: Vec<Halfspace> = cuts.into_iter().map(|(n, b)| Halfspace::new(n, b)).collect();
        let clipped = intersect_halfspaces(&poly, &cuts);
        let margin = 1e-6;
        for i in 0..=40 {
            for j in 0..=40 {
                let x = vec![-5.0 + 0.25 * i as f64, -5.0 + 0.25 * j as f64];
                let depth = cuts.iter().map(|c| c.excess(&x)).fold(poly.max_excess(&x), f64::max);
                if depth.abs() <= margin {
                    continue;
                }
                let inside = !clipped.is_empty() && clipped.distance_to(&x) <= 1e-9;
                prop_assert_eq!(inside, depth < 0.0, "grid point {:?}", x);
            }
        }
    }

    #[test]
    fn vertex_cone_is_the_set_of_maximizing_directions(pts in points(20), d in direction()) {
        let poly = convex_hull(&pts);
        prop_assume!(poly.has_interior());
        let (best, argmax) = poly.support(&d).unwrap();
        for v in poly.vertices() {
            let cone = supporting_cone(&poly, v).unwrap();
            // vertices that are clearly not maximizers must not claim d
            if best - dot(&d, v) > 1e-6 * poly.scale() {
                prop_assert!(!cone.contains(&d, 1e-9));
            }
        }
        for v in &argmax {
            prop_assert!(supporting_cone(&poly, v).unwrap().contains(&d, 1e-6));
        }
    }

    #[test]
    fn serde_round_trip_preserves_the_set(pts in points(15)) {
        let poly = convex_hull(&pts);
        let text = serde_json::to_string(&poly).unwrap();
        let back: Polytope = serde_json::from_str(&text).unwrap();
        prop_assert!(poly.hausdorff(&back) <= 1e-12);
        prop_assert_eq!(poly.shape(), back.shape());
    }
}

#[test]
fn degenerate_hulls() {
    let p = convex_hull(&[vec![1.0, 2.0]]);
    assert!(p.is_degenerate());
    assert_eq!(p.vertices(), &[vec![1.0, 2.0]]);
    let s = convex_hull(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]);
    assert!(s.is_degenerate());
    assert_eq!(s.vertices().len(), 2);
    assert!(s.contains(&[0.5, 0.5], 1e-12));
    assert!(!s.contains(&[0.5, 0.6], 1e-12));
    assert!(convex_hull(&[]).is_empty());
    let iv = convex_hull(&[vec![3.0], vec![-1.0], vec![0.5]]);
    assert_eq!(iv.bounds(), Some((-1.0, 3.0)));
}

#[test]
fn hausdorff_of_nested_squares() {
    let a = Polytope::cube(2, 1.0);
    let b = Polytope::cube(2, 2.0);
    assert!((a.hausdorff(&b) - 2.0_f64.sqrt()).abs() < 1e-12);
    assert_eq!(a.hausdorff(&a), 0.0);
    assert_eq!(a.hausdorff(&Polytope::empty(2)), f64::INFINITY);
}

#[test]
fn zero_direction_and_cone_preconditions() {
    let sq = Polytope::cube(2, 1.0);
    assert_eq!(sq.support(&[0.0, 0.0]).unwrap_err(), Error::ZeroDirection);
    assert_eq!(faces_f(&sq, &[0.0, 0.0]).unwrap_err(), Error::ZeroDirection);
    let seg = convex_hull(&[vec![0.0, 0.0], vec![1.0, 0.0]]);
    assert_eq!(supporting_cone(&seg, &[0.0, 0.0]).unwrap_err(), Error::DegeneratePolytope);
    assert_eq!(supporting_cone(&Polytope::empty(2), &[0.0, 0.0]).unwrap_err(), Error::ConePrecondition);
}

#[test]
fn faces_of_a_square() {
    let sq = Polytope::cube(2, 1.0);
    let f = faces_f(&sq, &[1.0, 0.0]).unwrap();
    assert_eq!(f.plus.vertices.len(), 2);
    assert!(f.relint_contains(&[1.0, 0.3], 1e-12));
    assert!(f.relint_contains(&[-1.0, 0.0], 1e-12));
    assert!(!f.relint_contains(&[1.0, 1.0], 1e-12));
    let diag = faces_f(&sq, &[1.0, 1.0]).unwrap();
    assert!(diag.plus.is_point());
    assert!(!diag.relint_contains(&[1.0, 1.0], 1e-12));
}

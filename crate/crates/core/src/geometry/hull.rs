use super::{Halfspace, Polytope, Shape, HULL_TOL};
use crate::linalg::{dist, dot, norm, normalized, scale, sub};

fn dedup(points: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| dist(p, q) <= tol) {
            out.push(p.clone());
        }
    }
    out
}

fn cross2(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull of a point cloud, with duplicate removal at `HULL_TOL` (scaled)
/// and collinear pruning in the plane. Degenerate results are tagged rather
/// than rejected.
pub fn convex_hull(points: &[Vec<f64>]) -> Polytope {
    let Some(first) = points.first() else {
        return Polytope::empty(0);
    };
    let dim = first.len();
    let s = 1.0 + points.iter().flatten().fold(0.0_f64, |m, c| m.max(c.abs()));
    let tol = HULL_TOL * s;
    match dim {
        1 => hull_1d(points, tol),
        2 => hull_2d(&dedup(points, tol), tol),
        3 => hull_3d(&dedup(points, tol), tol),
        _ => Polytope::from_parts(dim, dedup(points, tol), vec![], Shape::Degenerate),
    }
}

fn hull_1d(points: &[Vec<f64>], tol: f64) -> Polytope {
    let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= tol {
        let hs = vec![Halfspace::new(vec![-1.0], -lo), Halfspace::new(vec![1.0], lo)];
        return Polytope::from_parts(1, vec![vec![lo]], hs, Shape::Degenerate);
    }
    let hs = vec![Halfspace::new(vec![-1.0], -lo), Halfspace::new(vec![1.0], hi)];
    Polytope::from_parts(1, vec![vec![lo], vec![hi]], hs, Shape::Full)
}

fn hull_2d(points: &[Vec<f64>], tol: f64) -> Polytope {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));

    // a turn counts as convex only when its sine exceeds the tolerance
    let keeps = |o: &[f64], a: &[f64], b: &[f64]| {
        cross2(o, a, b) > tol * dist(o, a) * dist(o, b)
    };
    let mut lower: Vec<Vec<f64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !keeps(&lower[lower.len() - 2], &lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<f64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !keeps(&upper[upper.len() - 2], &upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    let mut ring = lower;
    ring.extend(upper);
    let ring = if pts.len() == 1 { pts } else { dedup(&ring, tol) };

    match ring.len() {
        1 => {
            let p = &ring[0];
            let hs = vec![
                Halfspace::new(vec![1.0, 0.0], p[0]),
                Halfspace::new(vec![-1.0, 0.0], -p[0]),
                Halfspace::new(vec![0.0, 1.0], p[1]),
                Halfspace::new(vec![0.0, -1.0], -p[1]),
            ];
            Polytope::from_parts(2, ring, hs, Shape::Degenerate)
        }
        2 => {
            let (a, b) = (&ring[0], &ring[1]);
            let u = normalized(&sub(b, a)).unwrap();
            let n = vec![u[1], -u[0]];
            let hs = vec![
                Halfspace::new(n.clone(), dot(&n, a)),
                Halfspace::new(scale(&n, -1.0), -dot(&n, a)),
                Halfspace::new(u.clone(), dot(&u, b)),
                Halfspace::new(scale(&u, -1.0), -dot(&u, a)),
            ];
            Polytope::from_parts(2, ring, hs, Shape::Degenerate)
        }
        n => {
            let hs = (0..n)
                .map(|i| {
                    let (a, b) = (&ring[i], &ring[(i + 1) % n]);
                    let e = sub(b, a);
                    let normal = normalized(&[e[1], -e[0]]).unwrap();
                    let offset = dot(&normal, a);
                    Halfspace::new(normal, offset)
                })
                .collect();
            Polytope::from_parts(2, ring, hs, Shape::Full)
        }
    }
}

fn cross3(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Brute-force facet enumeration: every plane through three input points that
/// leaves all points on one side is a facet plane.
fn hull_3d(points: &[Vec<f64>], tol: f64) -> Polytope {
    let n = points.len();
    let mut facets: Vec<Halfspace> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = cross3(&sub(&points[j], &points[i]), &sub(&points[k], &points[i]));
                if norm(&c) <= tol {
                    continue;
                }
                let normal = normalized(&c).unwrap();
                let off = dot(&normal, &points[i]);
                let vals: Vec<f64> = points.iter().map(|p| dot(&normal, p) - off).collect();
                let cand = if vals.iter().all(|&v| v <= tol) {
                    Halfspace::new(normal, off)
                } else if vals.iter().all(|&v| v >= -tol) {
                    Halfspace::new(scale(&normal, -1.0), -off)
                } else {
                    continue;
                };
                let dup = facets.iter().any(|f| {
                    dist(&f.normal, &cand.normal) <= 1e-9 && (f.offset - cand.offset).abs() <= tol
                });
                if !dup {
                    facets.push(cand);
                }
            }
        }
    }
    // fewer than four facet planes means the points are coplanar (two planes)
    // or collinear (none)
    if facets.len() < 4 {
        return Polytope::from_parts(3, points.to_vec(), vec![], Shape::Degenerate);
    }
    let vertices = points
        .iter()
        .filter(|p| facets.iter().filter(|f| f.excess(p).abs() <= tol).count() >= 3)
        .cloned()
        .collect();
    Polytope::from_parts(3, vertices, facets, Shape::Full)
}

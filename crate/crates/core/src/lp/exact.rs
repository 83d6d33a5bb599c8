use super::programs::ProblemHistory;
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Polytope};
use crate::linalg::{dot, matvec};
use crate::plant::Model;

/// `S_1, …, S_k` by direct geometry: lift `S_{j-1}` to `(x, v)` space with
/// `|v| <= 1`, cut by the measurement slab `|C x + D_1 v - z_j| <= 1`, and map
/// through `(x, v) ↦ A x + B v`.
///
/// The lifted polytope is a product, so its vertices are known. Its slab
/// section is the hull of the vertices inside the slab together with every
/// crossing of a vertex-to-vertex segment with the two slab planes; the image
/// of that hull is the hull of the mapped points.
pub fn exact_set_recursion(h: &ProblemHistory) -> Result<Vec<Polytope>> {
    let m = h.model.order();
    if m > 2 {
        return Err(Error::UnsupportedOrder { max: 2, got: m });
    }
    let mut current = Polytope::point(&h.x0);
    let mut out = Vec::with_capacity(h.horizon());
    for (j, &zj) in h.z.iter().enumerate() {
        current = exact_step(h.model, &current, zj, j + 1)?;
        out.push(current.clone());
    }
    Ok(out)
}

/// One step of [`exact_set_recursion`]: `S_k` from `S_{k-1}` and `z_k`.
/// `step` is only used to label an `EmptySet` error.
pub fn exact_step(model: &Model, prev: &Polytope, zj: f64, step: usize) -> Result<Polytope> {
    let est = &model.est;
    // lifted vertices with their measurement residual C x + D1 v - z
    let mut lifted: Vec<(Vec<f64>, f64, f64)> = Vec::new();
    for x in prev.vertices() {
        for v in [-1.0, 1.0] {
            let r = dot(&est.c_row, x) + est.d1 * v - zj;
            lifted.push((x.clone(), v, r));
        }
    }
    let mut kept: Vec<(Vec<f64>, f64)> = lifted
        .iter()
        .filter(|(_, _, r)| r.abs() <= 1.0)
        .map(|(x, v, _)| (x.clone(), *v))
        .collect();
    for a in 0..lifted.len() {
        for b in a + 1..lifted.len() {
            let (xa, va, ra) = &lifted[a];
            let (xb, vb, rb) = &lifted[b];
            for level in [-1.0, 1.0] {
                let (da, db) = (ra - level, rb - level);
                if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
                    let t = da / (da - db);
                    let x: Vec<f64> = xa.iter().zip(xb).map(|(p, q)| p + t * (q - p)).collect();
                    kept.push((x, va + t * (vb - va)));
                }
            }
        }
    }
    if kept.is_empty() {
        return Err(Error::EmptySet { step });
    }
    let images: Vec<Vec<f64>> = kept
        .iter()
        .map(|(x, v)| {
            let mut y = matvec(&est.a, x);
            for (yi, bi) in y.iter_mut().zip(&est.b_col) {
                *yi += bi * v;
            }
            y
        })
        .collect();
    Ok(convex_hull(&images))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_closed_forms() {
        let m = Model::from_coefficients(&[0.0, 1.0], &[1.0, -0.5]).unwrap();
        let s = exact_set_recursion(&ProblemHistory::new(&m, &[0.0], &[0.0])).unwrap();
        assert_eq!(s[0].bounds(), Some((-1.0, 1.0)));
        let s = exact_set_recursion(&ProblemHistory::new(&m, &[0.0], &[0.0, 0.0])).unwrap();
        assert_eq!(s[1].bounds(), Some((-1.5, 1.5)));
        let s = exact_set_recursion(&ProblemHistory::new(&m, &[0.0], &[0.0, 1.5])).unwrap();
        assert_eq!(s[1].bounds(), Some((-0.75, 1.5)));
        let e = exact_set_recursion(&ProblemHistory::new(&m, &[0.0], &[0.0, 10.0]));
        assert_eq!(e.unwrap_err(), Error::EmptySet { step: 2 });
    }
}

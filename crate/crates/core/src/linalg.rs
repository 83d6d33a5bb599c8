//! Small dense helpers. Points and m-vectors are plain `Vec<f64>`; matrices
//! are `nalgebra::DMatrix<f64>`.

use nalgebra::{DMatrix, DVector};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    (n > 0.0 && n.is_finite()).then(|| scale(a, 1.0 / n))
}

pub fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub fn matvec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(x)).as_slice().to_vec()
}

pub fn mat_t_vec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (m.transpose() * DVector::from_column_slice(x)).as_slice().to_vec()
}

/// k×k lower-triangular banded Toeplitz matrix whose first column is `coef`
/// (truncated or zero-padded to k).
pub fn lower_toeplitz(coef: &[f64], k: usize) -> DMatrix<f64> {
    DMatrix::from_fn(k, k, |i, j| {
        if i >= j {
            coef.get(i - j).copied().unwrap_or(0.0)
        } else {
            0.0
        }
    })
}

/// m×m upper-triangular Toeplitz block `[[c_{m+1}, c_m, .., c_2], [0, c_{m+1}, ..], ..]`
/// built from a length m+1 coefficient vector.
pub fn upper_block(coef: &[f64]) -> DMatrix<f64> {
    let m = coef.len() - 1;
    DMatrix::from_fn(m, m, |i, j| if j >= i { coef[m + i - j] } else { 0.0 })
}

/// Determinant by partial-pivot elimination, usable for any square size.
pub fn det(m: &DMatrix<f64>) -> f64 {
    m.clone().lu().determinant()
}

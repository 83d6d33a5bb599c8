//! Plant validation, the Toeplitz Bezoutian, and the two state-space
//! realizations (estimator and regulator).
//!
//! Coefficient vectors are stored in ascending-power order: `n[0]` is the
//! constant coefficient `n_1` of `n(λ) = n_1 + n_2 λ + … + n_{m+1} λ^m`, and
//! likewise for `d`. Index `i` in code is coefficient `i + 1` in the usual
//! one-based notation. Everything downstream relies on this ordering.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det, lower_toeplitz, mat_t_vec, matvec, upper_block};

/// Validated, normalized plant `P(λ) = n(λ) / d(λ)` with `d_1 = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantSpec {
    n: Vec<f64>,
    d: Vec<f64>,
}

impl PlantSpec {
    pub fn order(&self) -> usize {
        self.d.len() - 1
    }

    /// Numerator coefficients `n_1 .. n_{m+1}`.
    pub fn n(&self) -> &[f64] {
        &self.n
    }

    /// Denominator coefficients `d_1 .. d_{m+1}`, with `d_1 = 1`.
    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Direct feedthrough `n_1`.
    pub fn n_first(&self) -> f64 {
        self.n[0]
    }

    /// `n_{m+1}`
    pub fn n_last(&self) -> f64 {
        self.n[self.order()]
    }

    /// `d_{m+1}`
    pub fn d_last(&self) -> f64 {
        self.d[self.order()]
    }

    /// `D_L`, the m×m lower-left Toeplitz block of the denominator.
    pub fn d_lower(&self) -> DMatrix<f64> {
        lower_toeplitz(&self.d, self.order())
    }

    pub fn n_lower(&self) -> DMatrix<f64> {
        lower_toeplitz(&self.n, self.order())
    }

    /// `D_U`, the m×m upper Toeplitz block with `d_{m+1}` on the diagonal.
    pub fn d_upper(&self) -> DMatrix<f64> {
        upper_block(&self.d)
    }

    pub fn n_upper(&self) -> DMatrix<f64> {
        upper_block(&self.n)
    }
}

/// Sylvester resultant of the two degree-m polynomials (formal degree m).
pub fn resultant(n: &[f64], d: &[f64]) -> f64 {
    let m = n.len() - 1;
    if m == 0 {
        return 1.0;
    }
    let size = 2 * m;
    let mut s = DMatrix::zeros(size, size);
    for r in 0..m {
        for j in 0..=m {
            // descending powers: leading coefficient first
            s[(r, r + j)] = n[m - j];
            s[(m + r, r + j)] = d[m - j];
        }
    }
    det(&s)
}

/// Validate and normalize a plant. `d` is rescaled so that `d_1 = 1`; `n` is
/// divided by the same factor so the transfer function is unchanged.
pub fn validate_plant(n: &[f64], d: &[f64]) -> Result<PlantSpec> {
    if n.len() != d.len() || n.len() < 2 {
        return Err(Error::BadPlantShape { n: n.len(), d: d.len() });
    }
    if n.iter().chain(d).any(|c| !c.is_finite()) {
        return Err(Error::NonCausal("non-finite coefficient".into()));
    }
    let m = d.len() - 1;
    if d[0] == 0.0 {
        return Err(Error::NonCausal("d_1 = 0".into()));
    }
    let scale = d[0];
    let n: Vec<f64> = n.iter().map(|c| c / scale).collect();
    let d: Vec<f64> = d.iter().map(|c| c / scale).collect();
    if d[m] == 0.0 {
        return Err(Error::NonCausal(format!("d_{} = 0", m + 1)));
    }

    let res = resultant(&n, &d);
    let max_coef = n.iter().chain(&d).fold(0.0_f64, |a, c| a.max(c.abs()));
    let threshold = 1e-8 * max_coef.powi(2 * m as i32);
    if res.is_nan() || res.abs() <= threshold {
        return Err(Error::NotCoprime { resultant: res, threshold });
    }
    Ok(PlantSpec { n, d })
}

/// The m×m Toeplitz Bezoutian, its inverse, and its first row.
#[derive(Debug, Clone, PartialEq)]
pub struct Bezoutian {
    pub matrix: DMatrix<f64>,
    pub inverse: DMatrix<f64>,
    pub c_row: Vec<f64>,
}

/// `D_L N_U − N_L D_U`
pub fn gohberg_semencul_left(p: &PlantSpec) -> DMatrix<f64> {
    p.d_lower() * p.n_upper() - p.n_lower() * p.d_upper()
}

/// `N_U D_L − D_U N_L`
pub fn gohberg_semencul_right(p: &PlantSpec) -> DMatrix<f64> {
    p.n_upper() * p.d_lower() - p.d_upper() * p.n_lower()
}

/// Bezoutian entries read off the bivariate generating polynomial
/// `(ñ(s) d(t) − d̃(s) n(t)) / (1 − s t)`, where `ñ`, `d̃` are the reversed
/// coefficient vectors. Division by `1 − st` is carried out coefficient-wise:
/// `q_{a,b} = Σ_{r≥0} p_{a−r, b−r}`.
pub fn bezoutian_from_generating_polynomial(p: &PlantSpec) -> DMatrix<f64> {
    let m = p.order();
    let (n, d) = (p.n(), p.d());
    // numer[a][b] is the coefficient of t^a s^b
    let mut numer = vec![vec![0.0; m + 1]; m + 1];
    for a in 0..=m {
        for b in 0..=m {
            // ñ(s) has coefficient n[m - b] at s^b
            numer[a][b] = n[m - b] * d[a] - d[m - b] * n[a];
        }
    }
    DMatrix::from_fn(m, m, |i, j| {
        (0..=i.min(j)).map(|r| numer[i - r][j - r]).sum()
    })
}

pub fn build_bezoutian(p: &PlantSpec) -> Result<Bezoutian> {
    let matrix = gohberg_semencul_left(p);
    let inverse = matrix.clone().try_inverse().ok_or(Error::SingularBezoutian)?;
    if inverse.iter().any(|x| !x.is_finite()) {
        return Err(Error::SingularBezoutian);
    }
    let sv = matrix.singular_values();
    let cond = sv.max() / sv.min();
    if cond > 1e8 {
        log::warn!("Bezoutian condition number {cond:e} exceeds 1e8");
    }
    let c_row = matrix.row(0).iter().copied().collect();
    Ok(Bezoutian { matrix, inverse, c_row })
}

/// Second controllability canonical form of the estimation system:
/// `x_k = A x_{k-1} + B v_k`, `y_k = C x_{k-1} + D_1 v_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorRealization {
    pub a: DMatrix<f64>,
    pub b_col: Vec<f64>,
    pub c_row: Vec<f64>,
    pub d1: f64,
}

impl EstimatorRealization {
    /// One step: returns `(x_k, y_k)`.
    pub fn step(&self, x_prev: &[f64], v: f64) -> (Vec<f64>, f64) {
        let mut x = matvec(&self.a, x_prev);
        for (xi, bi) in x.iter_mut().zip(&self.b_col) {
            *xi += bi * v;
        }
        let y = crate::linalg::dot(&self.c_row, x_prev) + self.d1 * v;
        (x, y)
    }

    /// `C x`, the offset of the measurement line through `x`.
    pub fn output_offset(&self, x: &[f64]) -> f64 {
        crate::linalg::dot(&self.c_row, x)
    }
}

pub fn realize_estimator(p: &PlantSpec) -> EstimatorRealization {
    let m = p.order();
    let (n, d) = (p.n(), p.d());
    let a = DMatrix::from_fn(m, m, |i, j| {
        if i + 1 < m {
            if j == i + 1 {
                1.0
            } else {
                0.0
            }
        } else {
            // last row: (-d_{m+1}, ..., -d_2)
            -d[m - j]
        }
    });
    let mut b_col = vec![0.0; m];
    b_col[m - 1] = 1.0;
    let c_row = (0..m).map(|j| n[m - j] - d[m - j] * n[0]).collect();
    EstimatorRealization { a, b_col, c_row, d1: n[0] }
}

/// Minimal realization of the regulator system
/// `x*_k = A* x*_{k-1} + B* y*_k`, `v*_k = C* x*_{k-1} + D_1* y*_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegulatorRealization {
    pub a_star: DMatrix<f64>,
    pub b_star: Vec<f64>,
    pub c_star: Vec<f64>,
    pub d1_star: f64,
}

impl RegulatorRealization {
    /// One step: returns `(x*_k, v*_k)`.
    pub fn step(&self, xs_prev: &[f64], ys: f64) -> (Vec<f64>, f64) {
        let mut x = matvec(&self.a_star, xs_prev);
        for (xi, bi) in x.iter_mut().zip(&self.b_star) {
            *xi += bi * ys;
        }
        let vs = crate::linalg::dot(&self.c_star, xs_prev) + self.d1_star * ys;
        (x, vs)
    }
}

pub fn realize_regulator(p: &PlantSpec) -> RegulatorRealization {
    let m = p.order();
    let (n, d) = (p.n(), p.d());
    let dl = d[m];
    let nl = n[m];
    let a_star = DMatrix::from_fn(m, m, |i, j| {
        if j == 0 {
            // first column: (-d_m, ..., -d_1) / d_{m+1}
            -d[m - 1 - i] / dl
        } else if j == i + 1 {
            1.0
        } else {
            0.0
        }
    });
    let b_star = (0..m).map(|i| n[m - 1 - i] - d[m - 1 - i] * nl / dl).collect();
    let mut c_star = vec![0.0; m];
    c_star[0] = -1.0 / dl;
    RegulatorRealization { a_star, b_star, c_star, d1_star: -nl / dl }
}

/// Which window formula to use for the state at time k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// From the samples `k+1 .. k+m` (valid for k ≥ 0).
    Forward,
    /// From the samples `k-m+1 .. k` (valid for k ≥ m).
    Backward,
}

fn check_window(m: usize, a: &[f64], b: &[f64]) -> Result<()> {
    for len in [a.len(), b.len()] {
        if len != m {
            return Err(Error::WindowLength { expected: m, got: len });
        }
    }
    Ok(())
}

/// Estimator state from an m-sample window of `(y, v)`.
pub fn state_from_window(
    p: &PlantSpec,
    bez: &Bezoutian,
    y: &[f64],
    v: &[f64],
    side: Side,
) -> Result<Vec<f64>> {
    let m = p.order();
    check_window(m, y, v)?;
    let (py, pv) = match side {
        Side::Forward => (matvec(&p.d_lower(), y), matvec(&p.n_lower(), v)),
        Side::Backward => (matvec(&p.d_upper(), y), matvec(&p.n_upper(), v)),
    };
    let rhs: Vec<f64> = match side {
        Side::Forward => py.iter().zip(&pv).map(|(a, b)| a - b).collect(),
        Side::Backward => py.iter().zip(&pv).map(|(a, b)| b - a).collect(),
    };
    Ok(matvec(&bez.inverse, &rhs))
}

/// Regulator state from an m-sample window of `(y*, v*)`.
pub fn regulator_state_from_window(
    p: &PlantSpec,
    ys: &[f64],
    vs: &[f64],
    side: Side,
) -> Result<Vec<f64>> {
    let m = p.order();
    check_window(m, ys, vs)?;
    let out = match side {
        Side::Forward => {
            let a = mat_t_vec(&p.n_upper(), ys);
            let b = mat_t_vec(&p.d_upper(), vs);
            a.iter().zip(&b).map(|(x, y)| -x - y).collect()
        }
        Side::Backward => {
            let a = mat_t_vec(&p.n_lower(), ys);
            let b = mat_t_vec(&p.d_lower(), vs);
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        }
    };
    Ok(out)
}

/// A validated plant together with everything derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub plant: PlantSpec,
    pub bezoutian: Bezoutian,
    pub est: EstimatorRealization,
    pub reg: RegulatorRealization,
}

impl Model {
    pub fn new(plant: PlantSpec) -> Result<Self> {
        let bezoutian = build_bezoutian(&plant)?;
        let est = realize_estimator(&plant);
        let reg = realize_regulator(&plant);
        Ok(Self { plant, bezoutian, est, reg })
    }

    pub fn from_coefficients(n: &[f64], d: &[f64]) -> Result<Self> {
        Self::new(validate_plant(n, d)?)
    }

    pub fn order(&self) -> usize {
        self.plant.order()
    }
}

use serde::{Deserialize, Serialize};

use super::simplex::{solve, SimplexOptions, SimplexSolution, StandardLp};
use crate::error::{Error, Result};
use crate::linalg::{dot, lower_toeplitz, mat_t_vec, matvec, norm};
use crate::plant::{regulator_state_from_window, state_from_window, Model, Side};
use crate::propagation::aligned;
use crate::tolerance::Tolerances;
use crate::trajectory::{closed_form_state, convolution_residual};

/// Tolerance for alignment of LP outputs. Simplex solutions carry rounding of
/// order 1e-12 relative to the data, well inside this.
const LP_ALIGN_TOL: f64 = 1e-7;

/// Plant, known initial state, and measurements `z_1 .. z_k`.
#[derive(Debug, Clone)]
pub struct ProblemHistory<'a> {
    pub model: &'a Model,
    pub x0: Vec<f64>,
    pub z: Vec<f64>,
    pub tol: Tolerances,
}

impl<'a> ProblemHistory<'a> {
    pub fn new(model: &'a Model, x0: &[f64], z: &[f64]) -> Self {
        Self { model, x0: x0.to_vec(), z: z.to_vec(), tol: Tolerances::default() }
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn horizon(&self) -> usize {
        self.z.len()
    }

    /// The same history cut to its first `k` measurements.
    pub fn truncated(&self, k: usize) -> Self {
        Self { model: self.model, x0: self.x0.clone(), z: self.z[..k].to_vec(), tol: self.tol }
    }

    fn options(&self) -> SimplexOptions {
        SimplexOptions {
            feasibility_tol: self.tol.feasibility,
            optimality_tol: self.tol.optimality,
            ..SimplexOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub value: f64,
    pub primal: Vec<f64>,
    pub status: LpStatus,
    pub basis_note: String,
    /// Multipliers of the equality rows of the underlying standard-form LP.
    pub duals: Vec<f64>,
}

fn note(s: &SimplexSolution) -> String {
    format!(
        "{} pivots; {} nonbasic columns with zero reduced cost{}",
        s.iterations,
        s.zero_reduced_cost.len(),
        if s.zero_reduced_cost.is_empty() { "" } else { " (optimum may not be unique)" }
    )
}

/// Optimum of the estimator program `max <x*, x_k(y, v)>`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorSolution {
    pub solution: LpSolution,
    pub y: Vec<f64>,
    pub v: Vec<f64>,
    pub x_terminal: Vec<f64>,
}

/// Optimum of the regulator program.
#[derive(Debug, Clone, PartialEq)]
pub struct RegulatorSolution {
    pub solution: LpSolution,
    pub y_star: Vec<f64>,
    pub v_star: Vec<f64>,
    /// Dual multipliers `λ`; the last m of them are the optimal terminal state.
    pub lambda: Vec<f64>,
}

/// Terminal state of the estimation system after `(y, v)` have been applied.
fn terminal_state(h: &ProblemHistory, y: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let m = h.model.order();
    let k = y.len();
    if k >= m {
        state_from_window(
            &h.model.plant,
            &h.model.bezoutian,
            &y[k - m..],
            &v[k - m..],
            Side::Backward,
        )
    } else {
        Ok(closed_form_state(h.model, &h.x0, v))
    }
}

/// Linear objective `(c_y, c_v, c_0)` with `<x*, x_k> = c_y·y + c_v·v + c_0`
/// on the feasible set.
fn terminal_objective(h: &ProblemHistory, x_star: &[f64]) -> (Vec<f64>, Vec<f64>, f64) {
    let model = h.model;
    let (m, k) = (model.order(), h.horizon());
    let mut cy = vec![0.0; k];
    let mut cv = vec![0.0; k];
    if k >= m {
        let g = mat_t_vec(&model.bezoutian.inverse, x_star);
        let gy = mat_t_vec(&model.plant.d_upper(), &g);
        let gv = mat_t_vec(&model.plant.n_upper(), &g);
        for i in 0..m {
            cy[k - m + i] = -gy[i];
            cv[k - m + i] = gv[i];
        }
        (cy, cv, 0.0)
    } else {
        // x_k = A^k x0 + Σ_j A^{k-j} B v_j
        let mut w = x_star.to_vec();
        for j in (0..k).rev() {
            cv[j] = dot(&w, &model.est.b_col);
            w = mat_t_vec(&model.est.a, &w);
        }
        (cy, cv, dot(&w, &h.x0))
    }
}

/// The estimator program in equality form over `(p, q, s_p, s_q) >= 0`, with
/// `y = z - 1 + p`, `v = -1 + q`, `p + s_p = 2`, `q + s_q = 2`.
pub fn estimator_lp(h: &ProblemHistory, x_star: &[f64]) -> StandardLp {
    let p = &h.model.plant;
    let (m, k) = (p.order(), h.horizon());
    let dk = lower_toeplitz(p.d(), k);
    let nk = lower_toeplitz(p.n(), k);
    let cols = 4 * k;

    let bx = matvec(&h.model.bezoutian.matrix, &h.x0);
    let zm1: Vec<f64> = h.z.iter().map(|z| z - 1.0).collect();
    let dz = matvec(&dk, &zm1);
    let n1 = matvec(&nk, &vec![1.0; k]);

    let mut a = Vec::with_capacity(3 * k);
    let mut b = Vec::with_capacity(3 * k);
    for i in 0..k {
        let mut row = vec![0.0; cols];
        for j in 0..k {
            row[j] = dk[(i, j)];
            row[k + j] = -nk[(i, j)];
        }
        a.push(row);
        let r = if i < m { bx[i] } else { 0.0 };
        b.push(r - dz[i] - n1[i]);
    }
    for block in 0..2 {
        for i in 0..k {
            let mut row = vec![0.0; cols];
            row[block * k + i] = 1.0;
            row[(2 + block) * k + i] = 1.0;
            a.push(row);
            b.push(2.0);
        }
    }
    let (cy, cv, _) = terminal_objective(h, x_star);
    let mut c = vec![0.0; cols];
    for j in 0..k {
        c[j] = -cy[j];
        c[k + j] = -cv[j];
    }
    StandardLp { a, b, c }
}

/// Maximize `<x*, x_k>` over all disturbance histories consistent with the
/// measurements. Returns the optimum together with the optimal terminal state.
/// The primal vector is `(y_1..y_k, v_1..v_k)`.
pub fn solve_estimator(h: &ProblemHistory, x_star: &[f64]) -> Result<EstimatorSolution> {
    let k = h.horizon();
    if k == 0 {
        return Err(Error::HorizonTooShort { k, m: h.model.order() });
    }
    let lp = estimator_lp(h, x_star);
    let s = solve(&lp, &h.options())?;
    let y: Vec<f64> = (0..k).map(|j| h.z[j] - 1.0 + s.x[j]).collect();
    let v: Vec<f64> = (0..k).map(|j| -1.0 + s.x[k + j]).collect();
    let x_terminal = terminal_state(h, &y, &v)?;
    let value = dot(x_star, &x_terminal);
    let mut primal = y.clone();
    primal.extend(&v);
    let solution = LpSolution {
        value,
        primal,
        status: LpStatus::Optimal,
        basis_note: note(&s),
        duals: s.duals,
    };
    Ok(EstimatorSolution { solution, y, v, x_terminal })
}

/// Column offsets of the four split blocks of the regulator LP. The `v*`
/// blocks come first: `D_k^T` has a unit diagonal, so the bases met early in
/// phase one are well conditioned even when `n_1` is close to zero.
struct RegulatorBlocks {
    v_plus: usize,
    v_minus: usize,
    y_plus: usize,
    y_minus: usize,
}

impl RegulatorBlocks {
    fn new(k: usize) -> Self {
        Self { v_plus: 0, v_minus: k, y_plus: 2 * k, y_minus: 3 * k }
    }
}

/// Cost row `1 + δ + γ` of the split-variable regulator LP over
/// `(v*+, v*-, y*+, y*-)`.
fn regulator_cost(h: &ProblemHistory) -> Vec<f64> {
    let p = &h.model.plant;
    let (m, k) = (p.order(), h.horizon());
    let blk = RegulatorBlocks::new(k);
    let nx = matvec(&p.n_upper(), &h.x0);
    let dx = matvec(&p.d_upper(), &h.x0);
    let mut c = vec![1.0; 4 * k];
    for j in 0..k {
        c[blk.y_plus + j] += h.z[j];
        c[blk.y_minus + j] -= h.z[j];
    }
    for j in 0..m {
        c[blk.y_plus + j] -= nx[j];
        c[blk.y_minus + j] += nx[j];
        c[blk.v_plus + j] -= dx[j];
        c[blk.v_minus + j] += dx[j];
    }
    c
}

/// The regulator program as `min (1 + δ + γ)·x` subject to
/// `[D_k^T, -D_k^T, N_k^T, -N_k^T] x = (0, …, 0, x*)`, `x >= 0`.
pub fn regulator_lp(h: &ProblemHistory, x_star: &[f64]) -> Result<StandardLp> {
    let p = &h.model.plant;
    let (m, k) = (p.order(), h.horizon());
    if k < m {
        return Err(Error::HorizonTooShort { k, m });
    }
    let blk = RegulatorBlocks::new(k);
    let nk = lower_toeplitz(p.n(), k);
    let dk = lower_toeplitz(p.d(), k);
    let mut a = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = vec![0.0; 4 * k];
        for j in 0..k {
            // transposes: entry (i, j) of N_k^T is N_k[j][i]
            row[blk.y_plus + j] = nk[(j, i)];
            row[blk.y_minus + j] = -nk[(j, i)];
            row[blk.v_plus + j] = dk[(j, i)];
            row[blk.v_minus + j] = -dk[(j, i)];
        }
        a.push(row);
    }
    let mut b = vec![0.0; k];
    b[k - m..].copy_from_slice(x_star);
    Ok(StandardLp { a, b, c: regulator_cost(h) })
}

/// Minimize `‖y*‖_1 + ‖v*‖_1 + <y*, z> + <x*_0, x_0>` over regulator
/// trajectories ending in `x*`. The primal vector is `(y*_1..y*_k, v*_1..v*_k)`.
/// An unbounded program means the uncertainty set is empty.
pub fn solve_regulator(h: &ProblemHistory, x_star: &[f64]) -> Result<RegulatorSolution> {
    let k = h.horizon();
    let lp = regulator_lp(h, x_star)?;
    let s = solve(&lp, &h.options())?;
    let blk = RegulatorBlocks::new(k);
    let y_star: Vec<f64> = (0..k).map(|j| s.x[blk.y_plus + j] - s.x[blk.y_minus + j]).collect();
    let v_star: Vec<f64> = (0..k).map(|j| s.x[blk.v_plus + j] - s.x[blk.v_minus + j]).collect();
    let mut primal = y_star.clone();
    primal.extend(&v_star);
    let solution = LpSolution {
        value: s.value,
        primal,
        status: LpStatus::Optimal,
        basis_note: note(&s),
        duals: s.duals.clone(),
    };
    Ok(RegulatorSolution { solution, y_star, v_star, lambda: s.duals })
}

/// Value of the regulator cost at a given `(y*, v*)`.
fn regulator_value(h: &ProblemHistory, ys: &[f64], vs: &[f64]) -> f64 {
    let p = &h.model.plant;
    let m = p.order();
    let nx = matvec(&p.n_upper(), &h.x0);
    let dx = matvec(&p.d_upper(), &h.x0);
    let l1: f64 = ys.iter().chain(vs).map(|x| x.abs()).sum();
    l1 + dot(ys, &h.z) - dot(&ys[..m], &nx) - dot(&vs[..m], &dx)
}

fn regulator_residual(h: &ProblemHistory, ys: &[f64], vs: &[f64], x_star: &[f64]) -> f64 {
    let p = &h.model.plant;
    let (m, k) = (p.order(), ys.len());
    let mut r = mat_t_vec(&lower_toeplitz(p.n(), k), ys);
    let dv = mat_t_vec(&lower_toeplitz(p.d(), k), vs);
    for (ri, di) in r.iter_mut().zip(&dv) {
        *ri += di;
    }
    for i in 0..m {
        r[k - m + i] -= x_star[i];
    }
    r.iter().fold(0.0_f64, |a, x| a.max(x.abs()))
}

/// True iff `(y, v)` is aligned with `(y*, v*)` at every time step. Both
/// pairs must be feasible for their programs; by duality this holds exactly
/// when both are optimal.
pub fn check_alignment_optimality(
    yv: (&[f64], &[f64]),
    ysvs: (&[f64], &[f64]),
    h: &ProblemHistory,
    x_star: &[f64],
) -> Result<bool> {
    let (y, v) = yv;
    let (ys, vs) = ysvs;
    let k = h.horizon();
    for (name, len) in [("y", y.len()), ("v", v.len()), ("y*", ys.len()), ("v*", vs.len())] {
        if len != k {
            return Err(Error::NotFeasible(format!("{name} has length {len}, horizon is {k}")));
        }
    }
    let feas = h.tol.feasibility * 10.0;
    if let Some(j) = (0..k).find(|&j| v[j].abs() > 1.0 + feas || (y[j] - h.z[j]).abs() > 1.0 + feas) {
        return Err(Error::NotFeasible(format!("primal bound violated at step {}", j + 1)));
    }
    let res = convolution_residual(h.model, &h.x0, y, v);
    let scale = 1.0 + norm(y) + norm(v) + norm(&h.x0);
    if res.iter().any(|r| r.abs() > feas * scale) {
        return Err(Error::NotFeasible("primal violates the convolution constraint".into()));
    }
    let dscale = 1.0 + norm(ys) + norm(vs) + norm(x_star);
    if regulator_residual(h, ys, vs, x_star) > feas * dscale {
        return Err(Error::NotFeasible("dual violates the terminal constraint".into()));
    }
    Ok((0..k).all(|j| aligned(y[j], v[j], ys[j], vs[j], h.z[j], LP_ALIGN_TOL)))
}

/// Dynamic-programming principle for the regulator program: the first `k-1`
/// samples of an optimal k-step regulator trajectory are optimal for the
/// `(k-1)`-step program aimed at the state they reach, and the matching
/// truncated estimator optimum attains `h_{S_{k-1}}` there.
pub fn dp_truncation_check(h: &ProblemHistory, x_star: &[f64]) -> Result<bool> {
    let m = h.model.order();
    let k = h.horizon();
    if k < 2 || k - 1 < m {
        return Err(Error::HorizonTooShort { k, m: m + 1 });
    }
    if norm(x_star) == 0.0 {
        return Ok(true);
    }
    let reg = solve_regulator(h, x_star)?;
    let ys = &reg.y_star[..k - 1];
    let vs = &reg.v_star[..k - 1];
    let xs_prev = regulator_state_from_window(
        &h.model.plant,
        &ys[k - 1 - m..],
        &vs[k - 1 - m..],
        Side::Backward,
    )?;
    let prev = h.truncated(k - 1);
    let truncated_value = regulator_value(&prev, ys, vs);
    let best = solve_regulator(&prev, &xs_prev)?;
    let scale = 1.0 + best.solution.value.abs();
    let dual_ok = (truncated_value - best.solution.value).abs() <= 1e-7 * scale;

    let est = solve_estimator(h, x_star)?;
    let x_prev = terminal_state(&prev, &est.y[..k - 1], &est.v[..k - 1])?;
    let primal_ok = (dot(&xs_prev, &x_prev) - best.solution.value).abs() <= 1e-7 * scale;
    Ok(dual_ok && primal_ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> Model {
        Model::from_coefficients(&[0.0, 1.0], &[1.0, -0.5]).unwrap()
    }

    #[test]
    fn estimator_first_order() {
        let m = demo();
        let h = ProblemHistory::new(&m, &[0.0], &[0.0]);
        let s = solve_estimator(&h, &[1.0]).unwrap();
        assert!((s.solution.value - 1.0).abs() < 1e-12);
        assert!((s.x_terminal[0] - 1.0).abs() < 1e-12);
        let s = solve_estimator(&h, &[-1.0]).unwrap();
        assert!((s.solution.value - 1.0).abs() < 1e-12);
        assert!((s.x_terminal[0] + 1.0).abs() < 1e-12);
        let s = solve_estimator(&h, &[0.0]).unwrap();
        assert_eq!(s.solution.value, 0.0);
    }

    #[test]
    fn regulator_first_order() {
        let m = demo();
        let h = ProblemHistory::new(&m, &[0.0], &[0.0]);
        let r = solve_regulator(&h, &[1.0]).unwrap();
        assert!((r.solution.value - 1.0).abs() < 1e-12);
        assert!((r.lambda[0] - 1.0).abs() < 1e-12);
        let r = solve_regulator(&h, &[0.0]).unwrap();
        assert_eq!(r.solution.value, 0.0);
    }

    #[test]
    fn alignment_check_examples() {
        let m = demo();
        let h = ProblemHistory::new(&m, &[0.0], &[0.0]);
        let e = solve_estimator(&h, &[1.0]).unwrap();
        let r = solve_regulator(&h, &[1.0]).unwrap();
        let ok = check_alignment_optimality((&e.y, &e.v), (&r.y_star, &r.v_star), &h, &[1.0]);
        assert_eq!(ok, Ok(true));

        // v_1 = 0.5 while v*_1 > 0; y_1 = 0 keeps the primal feasible
        assert!(r.v_star[0] > 0.0);
        let ok = check_alignment_optimality((&[0.0], &[0.5]), (&r.y_star, &r.v_star), &h, &[1.0]);
        assert_eq!(ok, Ok(false));

        let ok = check_alignment_optimality((&[0.0], &[0.0]), (&[0.0], &[0.0]), &h, &[0.0]);
        assert_eq!(ok, Ok(true));
    }

    #[test]
    fn dp_truncation_first_order() {
        let m = demo();
        let h = ProblemHistory::new(&m, &[0.0], &[0.0, 0.0]);
        assert_eq!(dp_truncation_check(&h, &[1.0]), Ok(true));
        assert_eq!(dp_truncation_check(&h, &[0.0]), Ok(true));
    }

    #[test]
    fn infeasible_measurements() {
        let m = demo();
        let h = ProblemHistory::new(&m, &[0.0], &[0.0, 10.0]);
        assert_eq!(solve_estimator(&h, &[1.0]).unwrap_err(), Error::Infeasible);
        assert_eq!(solve_regulator(&h, &[1.0]).unwrap_err(), Error::Unbounded);
    }
}

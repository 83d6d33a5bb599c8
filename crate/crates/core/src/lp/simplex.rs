//! Dense two-phase revised simplex for `min c^T x  s.t.  A x = b, x >= 0`.
//!
//! The lowest-index improving column enters (Bland). The basis inverse is
//! recomputed from the original data at every iteration, and the ratio test
//! prefers the largest pivot among near-ties so that small coefficients do
//! not end up as pivots. After a run of pivots without objective progress
//! the leaving rule falls back to Bland's (lowest basic index among exact
//! ties), which rules out cycling. Pivoting is deterministic, so bases are
//! reproducible. Instances here have at most a few hundred columns.

use std::fmt::Write;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// An equality-form linear program.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardLp {
    /// Row-major constraint matrix, `rows × cols`.
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl StandardLp {
    pub fn rows(&self) -> usize {
        self.b.len()
    }

    pub fn cols(&self) -> usize {
        self.c.len()
    }

    /// Plain-text dump: a cost line, then one `coefficients | rhs` line per row.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:>10.4}")).collect::<Vec<_>>().join(" ");
        writeln!(s, "min  {}", fmt(&self.c)).unwrap();
        for (row, rhs) in self.a.iter().zip(&self.b) {
            writeln!(s, "     {} | {rhs:>10.4}", fmt(row)).unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub feasibility_tol: f64,
    pub optimality_tol: f64,
    pub max_iterations: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { feasibility_tol: 1e-8, optimality_tol: 1e-9, max_iterations: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexSolution {
    pub value: f64,
    pub x: Vec<f64>,
    /// Equality-constraint multipliers with `A^T λ <= c` and `b^T λ = value`.
    pub duals: Vec<f64>,
    /// Basic column per row; indices `>= cols` are artificials left on
    /// redundant rows.
    pub basis: Vec<usize>,
    /// Nonbasic columns with zero reduced cost: alternative optima may move
    /// along these.
    pub zero_reduced_cost: Vec<usize>,
    pub iterations: usize,
}

/// Entries of the entering direction at or below this (relative to the
/// largest positive entry) never pivot.
const PIVOT_REL: f64 = 1e-9;
const PIVOT_ABS: f64 = 1e-11;
/// Pivots without objective progress before Bland's leaving rule takes over.
const STALL_LIMIT: usize = 50;

/// `[sign·A | I]` with the sign chosen so the right-hand side is nonnegative.
struct Problem {
    m: DMatrix<f64>,
    b: Vec<f64>,
}

impl Problem {
    fn width(&self) -> usize {
        self.m.ncols()
    }

    fn rows(&self) -> usize {
        self.m.nrows()
    }

    fn column_dot(&self, y: &[f64], j: usize) -> f64 {
        self.m.column(j).iter().zip(y).map(|(a, y)| a * y).sum()
    }
}

/// Basis inverse, basic values and simplex multipliers for one basis.
struct Factor {
    inv: DMatrix<f64>,
    x_b: Vec<f64>,
    y: Vec<f64>,
}

fn factor(p: &Problem, basis: &[usize], cost: &[f64]) -> Result<Factor> {
    let rows = p.rows();
    let bmat = DMatrix::from_fn(rows, rows, |i, j| p.m[(i, basis[j])]);
    let inv = bmat.try_inverse().ok_or(Error::NumericalBreakdown("singular basis"))?;
    if inv.iter().any(|x| !x.is_finite()) {
        return Err(Error::NumericalBreakdown("singular basis"));
    }
    let x_b: Vec<f64> = (0..rows).map(|i| (0..rows).map(|k| inv[(i, k)] * p.b[k]).sum()).collect();
    let y: Vec<f64> = (0..rows).map(|k| (0..rows).map(|i| cost[basis[i]] * inv[(i, k)]).sum()).collect();
    Ok(Factor { inv, x_b, y })
}

enum Verdict {
    Optimal(Factor),
    /// Improving ray over all `width` columns.
    Unbounded(Vec<f64>),
}

/// Simplex iterations for `cost` from the feasible `basis`. Columns with
/// `allowed[j] == false` never enter.
fn optimize(
    p: &Problem,
    basis: &mut [usize],
    cost: &[f64],
    allowed: &[bool],
    opts: &SimplexOptions,
    iters: &mut usize,
) -> Result<Verdict> {
    let rows = p.rows();
    let mut stall = 0;
    let mut last = f64::INFINITY;
    loop {
        let f = factor(p, basis, cost)?;
        let value: f64 = (0..rows).map(|i| cost[basis[i]] * f.x_b[i]).sum();
        if value < last - 1e-12 * (1.0 + value.abs()) {
            stall = 0;
        } else {
            stall += 1;
        }
        last = last.min(value);

        let entering = (0..p.width())
            .filter(|&j| allowed[j] && !basis.contains(&j))
            .find(|&j| cost[j] - p.column_dot(&f.y, j) < -opts.optimality_tol);
        let Some(col) = entering else {
            return Ok(Verdict::Optimal(f));
        };
        let d: Vec<f64> = (0..rows).map(|i| (0..rows).map(|k| f.inv[(i, k)] * p.m[(k, col)]).sum()).collect();
        let dmax = d.iter().fold(0.0_f64, |a, x| a.max(*x));
        let piv = PIVOT_ABS.max(PIVOT_REL * dmax);
        let eligible: Vec<usize> = (0..rows).filter(|&i| d[i] > piv).collect();
        if eligible.is_empty() {
            let mut ray = vec![0.0; p.width()];
            ray[col] = 1.0;
            for (i, &bcol) in basis.iter().enumerate() {
                ray[bcol] = -d[i];
            }
            return Ok(Verdict::Unbounded(ray));
        }
        let leave = if stall > STALL_LIMIT {
            let ratio = |i: usize| f.x_b[i].max(0.0) / d[i];
            let best = eligible.iter().map(|&i| ratio(i)).fold(f64::INFINITY, f64::min);
            eligible.iter().copied().filter(|&i| ratio(i) <= best).min_by_key(|&i| basis[i])
        } else {
            // Harris: the step may overshoot by the feasibility tolerance,
            // which leaves room to pick the largest pivot
            let bound = eligible
                .iter()
                .map(|&i| (f.x_b[i].max(0.0) + opts.feasibility_tol) / d[i])
                .fold(f64::INFINITY, f64::min);
            eligible
                .iter()
                .copied()
                .filter(|&i| f.x_b[i].max(0.0) / d[i] <= bound)
                .max_by(|&a, &b| d[a].total_cmp(&d[b]).then(basis[b].cmp(&basis[a])))
        };
        let r = leave.expect("eligible rows are nonempty");
        basis[r] = col;
        *iters += 1;
        if *iters > opts.max_iterations {
            return Err(Error::IterationLimit);
        }
    }
}

/// Solve `min c^T x, A x = b, x >= 0`. Returns `Infeasible` or `Unbounded`
/// errors for the two non-optimal outcomes.
pub fn solve(lp: &StandardLp, opts: &SimplexOptions) -> Result<SimplexSolution> {
    let (rows, cols) = (lp.rows(), lp.cols());
    let width = cols + rows;
    let sign: Vec<f64> = lp.b.iter().map(|&b| if b < 0.0 { -1.0 } else { 1.0 }).collect();
    let m = DMatrix::from_fn(rows, width, |i, j| {
        if j < cols {
            sign[i] * lp.a[i][j]
        } else if j - cols == i {
            1.0
        } else {
            0.0
        }
    });
    let b: Vec<f64> = lp.b.iter().zip(&sign).map(|(b, s)| b * s).collect();
    let p = Problem { m, b };
    let mut basis: Vec<usize> = (cols..width).collect();
    let mut iters = 0;

    // phase one: minimize the sum of artificials
    let mut phase_one = vec![0.0; width];
    for c in phase_one.iter_mut().skip(cols) {
        *c = 1.0;
    }
    let all = vec![true; width];
    let Verdict::Optimal(f) = optimize(&p, &mut basis, &phase_one, &all, opts, &mut iters)? else {
        return Err(Error::NumericalBreakdown("phase one reported an unbounded ray"));
    };
    let infeasibility: f64 = (0..rows).filter(|&i| basis[i] >= cols).map(|i| f.x_b[i].max(0.0)).sum();
    let bscale = 1.0 + lp.b.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if infeasibility > opts.feasibility_tol * bscale {
        return Err(Error::Infeasible);
    }

    // drive artificials out of the basis where possible; the rest sit on
    // redundant rows at zero
    for r in 0..rows {
        if basis[r] < cols {
            continue;
        }
        let f = factor(&p, &basis, &phase_one)?;
        let entry = |j: usize| (0..rows).map(|k| f.inv[(r, k)] * p.m[(k, j)]).sum::<f64>();
        let best = (0..cols)
            .filter(|j| !basis.contains(j))
            .map(|j| (j, entry(j)))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()));
        if let Some((j, e)) = best {
            if e.abs() > 1e-9 {
                basis[r] = j;
            }
        }
    }

    // phase two
    let mut phase_two = lp.c.clone();
    phase_two.resize(width, 0.0);
    let mut allowed = vec![true; width];
    for a in allowed.iter_mut().skip(cols) {
        *a = false;
    }
    let f = match optimize(&p, &mut basis, &phase_two, &allowed, opts, &mut iters)? {
        Verdict::Optimal(f) => f,
        Verdict::Unbounded(ray) => {
            return Err(if ray_is_valid(lp, &ray, opts) {
                Error::Unbounded
            } else {
                Error::NumericalBreakdown("unbounded ray failed verification")
            });
        }
    };

    let mut x = vec![0.0; cols];
    for (r, &bcol) in basis.iter().enumerate() {
        if bcol < cols {
            x[bcol] = f.x_b[r].max(0.0);
        }
    }
    let value = lp.c.iter().zip(&x).map(|(c, x)| c * x).sum();
    let duals: Vec<f64> = (0..rows).map(|i| sign[i] * f.y[i]).collect();
    if !certificate_holds(lp, &x, &duals, opts) {
        return Err(Error::NumericalBreakdown("optimality certificate failed verification"));
    }
    let zero_reduced_cost = (0..cols)
        .filter(|j| !basis.contains(j) && (lp.c[*j] - p.column_dot(&f.y, *j)).abs() <= opts.optimality_tol)
        .collect();
    Ok(SimplexSolution { value, x, duals, basis, zero_reduced_cost, iterations: iters })
}

/// Checks a ray against the original data: `A r = 0`, `r >= 0`, `c·r < 0`.
fn ray_is_valid(lp: &StandardLp, ray: &[f64], opts: &SimplexOptions) -> bool {
    let r = &ray[..lp.cols()];
    let rn = r.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    let cr: f64 = lp.c.iter().zip(r).map(|(c, x)| c * x).sum();
    let artificial = ray[lp.cols()..].iter().any(|x| x.abs() > opts.feasibility_tol * rn);
    let residual = lp.a.iter().any(|row| {
        let (dot, mag) = row.iter().zip(r).fold((0.0, 0.0), |(d, m), (a, x)| (d + a * x, m + (a * x).abs()));
        dot.abs() > 1e-7 * (1.0 + mag)
    });
    !artificial && !residual && r.iter().all(|x| *x >= -opts.feasibility_tol * rn) && cr < 0.0
}

/// Checks primal feasibility, dual feasibility `A^T λ <= c` and a zero
/// duality gap against the original data, all to relative 1e-7.
fn certificate_holds(lp: &StandardLp, x: &[f64], duals: &[f64], opts: &SimplexOptions) -> bool {
    const REL: f64 = 1e-7;
    let primal = lp.a.iter().zip(&lp.b).all(|(row, b)| {
        let (dot, mag) = row.iter().zip(x).fold((0.0, 0.0), |(d, m), (a, x)| (d + a * x, m + (a * x).abs()));
        (dot - b).abs() <= REL * (1.0 + mag + b.abs())
    });
    let dual = (0..lp.cols()).all(|j| {
        let (dot, mag) = lp.a.iter().zip(duals).fold((0.0, 0.0), |(d, m), (row, l)| (d + row[j] * l, m + (row[j] * l).abs()));
        dot <= lp.c[j] + opts.optimality_tol + REL * (1.0 + mag + lp.c[j].abs())
    });
    let value: f64 = lp.c.iter().zip(x).map(|(c, x)| c * x).sum();
    let bound: f64 = lp.b.iter().zip(duals).map(|(b, l)| b * l).sum();
    let mag: f64 = lp.c.iter().zip(x).map(|(c, x)| (c * x).abs()).sum::<f64>()
        + lp.b.iter().zip(duals).map(|(b, l)| (b * l).abs()).sum::<f64>();
    primal && dual && (value - bound).abs() <= REL * (1.0 + mag)
}

//! The independent oracle: the estimator and regulator programs as explicit
//! linear programs, their duality checks, and the exact set recursion.

mod exact;
mod programs;
pub mod simplex;

pub use exact::{exact_set_recursion, exact_step};
pub use programs::{
    check_alignment_optimality, dp_truncation_check, estimator_lp, regulator_lp, solve_estimator,
    solve_regulator, EstimatorSolution, LpSolution, LpStatus, ProblemHistory, RegulatorSolution,
};

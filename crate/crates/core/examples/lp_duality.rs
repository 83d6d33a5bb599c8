//! Estimator and regulator programs on one measurement history: equal optimal
//! values, aligned optimal signals, and the truncation property.
//!
//! ```bash
//! cargo run --example lp_duality
//! ```

use setmember::lp::{
    check_alignment_optimality, dp_truncation_check, estimator_lp, solve_estimator, solve_regulator, ProblemHistory,
};
use setmember::trajectory::{sample_disturbances, simulate, NoiseLaw};
use setmember::Model;

fn main() -> setmember::Result<()> {
    let model = Model::from_coefficients(&[0.2, 0.5, 0.3], &[1.0, -0.4, 0.5])?;
    let x0 = [0.1, -0.2];
    let (v, w) = sample_disturbances(3, 6, NoiseLaw::Uniform);
    let traj = simulate(&model, &x0, &v, &w)?;
    let h = ProblemHistory::new(&model, &x0, &traj.z);

    if std::env::args().any(|a| a == "--dump") {
        print!("{}", estimator_lp(&h, &[1.0, 0.0]).to_text());
    }
    for x_star in [[1.0, 0.0], [0.0, 1.0], [-0.6, 0.8]] {
        let est = solve_estimator(&h, &x_star)?;
        let reg = solve_regulator(&h, &x_star)?;
        let aligned = check_alignment_optimality((&est.y, &est.v), (&reg.y_star, &reg.v_star), &h, &x_star)?;
        println!(
            "x* = {x_star:?}: estimator {:.12}, regulator {:.12}, aligned {aligned}, truncation {}",
            est.solution.value,
            reg.solution.value,
            dp_truncation_check(&h, &x_star)?
        );
        println!("  maximizing terminal state {:?}", est.x_terminal);
        println!("  y* = {:?}", reg.y_star);
        println!("  v* = {:?}", reg.v_star);
    }
    Ok(())
}

//! Build the Toeplitz Bezoutian of a second-order plant three ways, then use
//! it to read the state off a window of input/output samples.
//!
//! ```bash
//! cargo run --example bezoutian
//! ```

use setmember::plant::{bezoutian_from_generating_polynomial, gohberg_semencul_left, gohberg_semencul_right};
use setmember::trajectory::simulate;
use setmember::{Model, Side};

fn main() -> setmember::Result<()> {
    // n(λ) = 0.2 + 0.5λ + 0.3λ², d(λ) = 1 - 0.4λ + 0.5λ², coefficients from index 1
    let model = Model::from_coefficients(&[0.2, 0.5, 0.3], &[1.0, -0.4, 0.5])?;
    let p = &model.plant;
    println!("D_L N_U - N_L D_U = {}", gohberg_semencul_left(p));
    println!("N_U D_L - D_U N_L = {}", gohberg_semencul_right(p));
    println!("from the generating polynomial = {}", bezoutian_from_generating_polynomial(p));
    println!("inverse = {}", model.bezoutian.inverse);
    println!("C (first Bezoutian row) = {:?}", model.bezoutian.c_row);

    let est = &model.est;
    println!("estimator realization: A = {}B = {:?}, D1 = {}", est.a, est.b_col, est.d1);
    let reg = &model.reg;
    println!("regulator realization: A* = {}B* = {:?}, C* = {:?}, D1* = {}", reg.a_star, reg.b_star, reg.c_star, reg.d1_star);

    // the state at time 3 from the samples before and after it
    let v = [0.5, -1.0, 0.25, 1.0, -0.5];
    let traj = simulate(&model, &[0.3, -0.1], &v, &[0.0; 5])?;
    let back = setmember::plant::state_from_window(p, &model.bezoutian, &traj.y[1..3], &v[1..3], Side::Backward)?;
    let fwd = setmember::plant::state_from_window(p, &model.bezoutian, &traj.y[3..5], &v[3..5], Side::Forward)?;
    println!("x_3 simulated {:?}", traj.x[3]);
    println!("x_3 from y_2..y_3 {back:?}");
    println!("x_3 from y_4..y_5 {fwd:?}");
    Ok(())
}

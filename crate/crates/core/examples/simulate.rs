//! Simulate a seeded trajectory and check it against the convolution form of
//! the plant.
//!
//! ```bash
//! cargo run --example simulate -- 42
//! ```

use setmember::linalg::inf_norm;
use setmember::trajectory::{convolution_residual, sample_disturbances, simulate, NoiseLaw};
use setmember::Model;

fn main() -> setmember::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let model = Model::from_coefficients(&[0.2, 0.5, 0.3], &[1.0, -0.4, 0.5])?;
    let (v, w) = sample_disturbances(seed, 8, NoiseLaw::Uniform);
    let traj = simulate(&model, &[0.1, -0.2], &v, &w)?;
    println!("{:>2} {:>10} {:>10} {:>10} {:>10}  x_k", "k", "v_k", "w_k", "y_k", "z_k");
    for k in 0..traj.len() {
        println!(
            "{:>2} {:>10.5} {:>10.5} {:>10.5} {:>10.5}  {:?}",
            k + 1,
            traj.v[k],
            traj.w[k],
            traj.y[k],
            traj.z[k],
            traj.x[k + 1]
        );
    }
    let res = convolution_residual(&model, &traj.x0, &traj.y, &traj.v);
    println!("max |D_k y - N_k v - B x0| = {:.2e}", inf_norm(&res));
    Ok(())
}

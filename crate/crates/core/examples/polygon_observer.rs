//! Second-order observer on a simulated run: prints each polygonal S_k, the
//! propagation statistics and whether the true state is inside.
//!
//! ```bash
//! cargo run --release --example polygon_observer -- 7
//! ```

use setmember::propagation::{Observer, PropagationOptions};
use setmember::trajectory::{sample_disturbances, simulate, NoiseLaw};
use setmember::Model;

fn main() -> setmember::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let model = Model::from_coefficients(&[0.2, 0.5, 0.3], &[1.0, -0.4, 0.5])?;
    let x0 = [0.1, -0.2];
    let (v, w) = sample_disturbances(seed, 10, NoiseLaw::Uniform);
    let traj = simulate(&model, &x0, &v, &w)?;

    let mut obs = Observer::new(&model, &x0, PropagationOptions::default(), true)?;
    for (j, &z) in traj.z.iter().enumerate() {
        let step = obs.step(z)?;
        let poly = &step.polytope;
        let truth = &traj.x[j + 1];
        print!(
            "k {:>2} {:?}: {} vertices, diameter {:.4}, true state inside: {}",
            step.k,
            step.mode,
            poly.vertices().len(),
            poly.diameter(),
            poly.contains(truth, 1e-9 * poly.scale())
        );
        match (&step.outcome, &step.oracle) {
            (Some(out), Some(oracle)) => println!(
                ", {} pairs emitted, {} defects, Hausdorff to exact {:.2e}",
                out.emitted.len(),
                out.defects.len(),
                poly.hausdorff(oracle)
            ),
            _ => println!(),
        }
    }
    println!("S_10 vertices:");
    for v in obs.current().vertices() {
        println!("  ({:+.6}, {:+.6})", v[0], v[1]);
    }
    Ok(())
}

//! First-order observer: the uncertainty sets are intervals and can be
//! checked by hand.
//!
//! ```bash
//! cargo run --example interval_observer
//! ```

use setmember::propagation::{Observer, PropagationOptions};
use setmember::Model;

fn main() -> setmember::Result<()> {
    // y_k = x_{k-1}, x_k = 0.5 x_{k-1} + v_k
    let model = Model::from_coefficients(&[0.0, 1.0], &[1.0, -0.5])?;
    for z in [[0.0, 0.0], [0.0, 1.5]] {
        let mut obs = Observer::new(&model, &[0.0], PropagationOptions::default(), true)?;
        println!("z = {z:?}");
        for &zk in &z {
            let step = obs.step(zk)?;
            println!(
                "  S_{} = {:?} ({:?}), exact recursion {:?}",
                step.k,
                step.polytope.bounds(),
                step.mode,
                step.oracle.as_ref().and_then(|o| o.bounds())
            );
            if let Some(out) = &step.outcome {
                for pair in &out.emitted {
                    println!("    precursor {:?} -> x {:?} with x* {:?}", pair.precursor, pair.x, pair.x_star);
                }
            }
        }
    }
    Ok(())
}

//! Run boundary propagation next to the exact set recursion on random
//! second-order plants and report how far apart the two sets are.
//!
//! ```bash
//! cargo run --release --example oracle_compare -- 20
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setmember::propagation::{max_support_gap, Observer, PropagationOptions, StepMode};
use setmember::trajectory::{sample_disturbances, simulate, NoiseLaw};
use setmember::Model;

fn random_plant(rng: &mut ChaCha8Rng) -> Model {
    loop {
        let d3 = rng.random_range(0.2..0.9) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let d = [1.0, rng.random_range(-1.0..1.0), d3];
        let n: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        if let Ok(m) = Model::from_coefficients(&n, &d) {
            return m;
        }
    }
}

fn main() {
    let runs: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let mut worst = 0.0_f64;
    let mut defects = 0;
    for seed in 0..runs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_plant(&mut rng);
        let x0 = vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let (v, w) = sample_disturbances(seed, 10, NoiseLaw::Uniform);
        let traj = simulate(&model, &x0, &v, &w).unwrap();
        let mut obs = Observer::new(&model, &x0, PropagationOptions::default(), true).unwrap();
        for &z in &traj.z {
            let step = match obs.step(z) {
                Ok(s) => s,
                Err(e) => {
                    println!("seed {seed}: stopped with {e}");
                    break;
                }
            };
            if step.mode == StepMode::Exact {
                continue;
            }
            let oracle = step.oracle.as_ref().unwrap();
            let gap = step.polytope.hausdorff(oracle) / oracle.diameter().max(1e-300);
            let out = step.outcome.as_ref().unwrap();
            worst = worst.max(gap);
            defects += out.defects.len();
            if gap > 1e-6 || !out.defects.is_empty() {
                println!(
                    "seed {seed} k {}: relative Hausdorff {gap:.3e}, {} defects, support gap {:.2e}",
                    step.k,
                    out.defects.len(),
                    max_support_gap(out)
                );
                for d in &out.defects {
                    println!("  missed oracle vertex {d:?}");
                }
            }
        }
    }
    println!("worst relative Hausdorff distance {worst:.3e}, total defects {defects}");
}

//! Shared fixtures for the integration and acceptance tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setmember::trajectory::{sample_disturbances, simulate, NoiseLaw, Trajectory};
use setmember::Model;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let mag = rng.random_range(lo..hi);
    if rng.random_bool(0.5) {
        mag
    } else {
        -mag
    }
}

/// Random stable-ish coprime plant of order m: `|d_{m+1}|` in [0.2, 0.9],
/// the remaining denominator and all numerator coefficients in [-1, 1].
pub fn random_model(rng: &mut ChaCha8Rng, m: usize) -> Model {
    loop {
        let mut d = vec![1.0];
        for _ in 1..m {
            d.push(rng.random_range(-1.0..1.0));
        }
        d.push(signed(rng, 0.2, 0.9));
        let n: Vec<f64> = (0..=m).map(|_| rng.random_range(-1.0..1.0)).collect();
        if let Ok(model) = Model::from_coefficients(&n, &d) {
            return model;
        }
    }
}

pub fn random_x0(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.random_range(-1.0..1.0)).collect()
}

pub fn random_direction(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 {
            return d.iter().map(|x| x / n).collect();
        }
    }
}

/// A random plant with a simulated, hence feasible, measurement history.
pub struct Instance {
    pub model: Model,
    pub x0: Vec<f64>,
    pub traj: Trajectory,
}

pub fn random_instance(seed: u64, m: usize, k: usize) -> Instance {
    let mut r = rng(seed);
    let model = random_model(&mut r, m);
    let x0 = random_x0(&mut r, m);
    let (v, w) = sample_disturbances(seed ^ 0x5eed, k, NoiseLaw::Uniform);
    let traj = simulate(&model, &x0, &v, &w).unwrap();
    Instance { model, x0, traj }
}

/// Direct evaluation of a polynomial given in ascending coefficient order.
pub fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ci| acc * x + ci)
}

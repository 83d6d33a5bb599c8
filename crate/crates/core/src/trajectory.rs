//! Ground-truth trajectories of the estimation system and seeded disturbance
//! streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{add, inf_norm, lower_toeplitz, matvec, sub};
use crate::plant::Model;

/// A simulated run. `x[j]` is the state at time `j` (so `x[0] = x0`), while
/// `v[j]`, `w[j]`, `y[j]`, `z[j]` are the samples at time `j + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub x0: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub x: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }
}

fn check_bounds(name: &'static str, seq: &[f64]) -> Result<()> {
    for (index, &value) in seq.iter().enumerate() {
        if value.is_nan() || value.abs() > 1.0 {
            return Err(Error::DisturbanceOutOfBounds { name, index, value });
        }
    }
    Ok(())
}

/// Run the recursion `x_k = A x_{k-1} + B v_k`, `y_k = C x_{k-1} + D_1 v_k`,
/// `z_k = y_k + w_k`.
pub fn simulate(model: &Model, x0: &[f64], v: &[f64], w: &[f64]) -> Result<Trajectory> {
    let m = model.order();
    if x0.len() != m {
        return Err(Error::LengthMismatch(format!("x0 has length {}, plant order is {m}", x0.len())));
    }
    if v.len() != w.len() {
        return Err(Error::LengthMismatch(format!("v has {} samples, w has {}", v.len(), w.len())));
    }
    check_bounds("v", v)?;
    check_bounds("w", w)?;

    let mut x = vec![x0.to_vec()];
    let mut y = Vec::with_capacity(v.len());
    let mut z = Vec::with_capacity(v.len());
    for (&vk, &wk) in v.iter().zip(w) {
        let (next, yk) = model.est.step(x.last().unwrap(), vk);
        x.push(next);
        y.push(yk);
        z.push(yk + wk);
    }

    let last = x.last().unwrap();
    let closed = closed_form_state(model, x0, v);
    let gap = inf_norm(&sub(&closed, last));
    if gap > 1e-9 * (1.0 + inf_norm(last)) {
        log::warn!("closed-form state differs from the recursion by {gap:e}");
    }

    Ok(Trajectory { x0: x0.to_vec(), v: v.to_vec(), w: w.to_vec(), x, y, z })
}

/// `A^k x0 + Σ_{j<k} A^j B v_{k-j}`, evaluated without stepping the recursion.
pub fn closed_form_state(model: &Model, x0: &[f64], v: &[f64]) -> Vec<f64> {
    let a = &model.est.a;
    let k = v.len();
    let ak = a.pow(k as u32);
    let mut x = matvec(&ak, x0);
    let mut aj_b = model.est.b_col.clone();
    for j in 0..k {
        x = add(&x, &aj_b.iter().map(|c| c * v[k - 1 - j]).collect::<Vec<_>>());
        aj_b = matvec(a, &aj_b);
    }
    x
}

/// Measurement noise implied by `z` for the trajectory driven by `(x0, v)`.
pub fn reconstruct_w(model: &Model, x0: &[f64], v: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    if v.len() != z.len() {
        return Err(Error::LengthMismatch(format!("v has {} samples, z has {}", v.len(), z.len())));
    }
    let mut x = x0.to_vec();
    let mut w = Vec::with_capacity(z.len());
    for (&vk, &zk) in v.iter().zip(z) {
        let (next, yk) = model.est.step(&x, vk);
        w.push(zk - yk);
        x = next;
    }
    Ok(w)
}

/// `D_k y_{1:k} − N_k v_{1:k} − (B_T x0, 0, …, 0)`; identically zero along any
/// trajectory of the plant.
pub fn convolution_residual(model: &Model, x0: &[f64], y: &[f64], v: &[f64]) -> Vec<f64> {
    let k = y.len();
    let p = &model.plant;
    let dy = matvec(&lower_toeplitz(p.d(), k), y);
    let nv = matvec(&lower_toeplitz(p.n(), k), v);
    let mut r = sub(&dy, &nv);
    let bx = matvec(&model.bezoutian.matrix, x0);
    for (ri, bi) in r.iter_mut().zip(&bx) {
        *ri -= bi;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseLaw {
    /// Independent draws from `[-1, 1]`.
    Uniform,
    /// Independent fair signs `±1`.
    Vertex,
}

/// Deterministic `(v, w)` streams of length `k`.
///
/// The generator is ChaCha8 seeded with `seed`; `v` is drawn from stream 0 and
/// `w` from stream 1, so the two sequences never share keystream.
pub fn sample_disturbances(seed: u64, k: usize, law: NoiseLaw) -> (Vec<f64>, Vec<f64>) {
    let draw = |stream: u64| -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        (0..k)
            .map(|_| match law {
                NoiseLaw::Uniform => rng.random_range(-1.0..=1.0),
                NoiseLaw::Vertex => {
                    if rng.random_bool(0.5) {
                        1.0
                    } else {
                        -1.0
                    }
                }
            })
            .collect()
    };
    (draw(0), draw(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> Model {
        Model::from_coefficients(&[0.0, 1.0], &[1.0, -0.5]).unwrap()
    }

    #[test]
    fn single_step_by_hand() {
        let t = simulate(&demo(), &[0.0], &[1.0], &[0.0]).unwrap();
        assert_eq!(t.x[1], vec![1.0]);
        assert_eq!(t.y, vec![0.0]);
        assert_eq!(t.z, vec![0.0]);
    }

    #[test]
    fn zero_inputs_give_zero_trajectory() {
        let t = simulate(&demo(), &[0.0], &[0.0; 5], &[0.0; 5]).unwrap();
        assert!(t.x.iter().flatten().chain(&t.y).chain(&t.z).all(|&c| c == 0.0));
    }

    #[test]
    fn rejects_out_of_bounds() {
        let err = simulate(&demo(), &[0.0], &[0.0, 1.5], &[0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::DisturbanceOutOfBounds { name: "v", index: 1, .. }));
    }

    #[test]
    fn reconstruct_examples() {
        let m = demo();
        assert_eq!(reconstruct_w(&m, &[0.0], &[1.0], &[0.0]).unwrap(), vec![0.0]);
        let t = simulate(&m, &[0.2], &[0.5, -1.0, 0.3], &[0.0; 3]).unwrap();
        let w = reconstruct_w(&m, &[0.2], &t.v, &t.y).unwrap();
        assert!(w.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        let (v, w) = sample_disturbances(7, 3, NoiseLaw::Vertex);
        assert!(v.iter().chain(&w).all(|&c| c == 1.0 || c == -1.0));
        assert_eq!(sample_disturbances(7, 3, NoiseLaw::Vertex), (v, w));
        let (v, w) = sample_disturbances(7, 3, NoiseLaw::Uniform);
        assert!(v.iter().chain(&w).all(|&c| c.abs() <= 1.0));
        assert_ne!(v, w);
    }
}

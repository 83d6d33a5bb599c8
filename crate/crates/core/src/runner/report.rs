use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{Measurements, PlantConfig, RunConfig};
use super::json::write_json;
use crate::error::{Error, Result};
use crate::geometry::{Polytope, BOUNDARY_TOL};
use crate::plant::Model;
use crate::propagation::{Front, Observer, PropagationOptions, StepMode};
use crate::trajectory::{sample_disturbances, simulate};

/// A boundary point with its cone, as written to the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeRecord {
    pub point: Vec<f64>,
    pub generators: Vec<Vec<f64>>,
    /// `[start, end]` angles in radians for planar sets.
    pub interval: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub k: usize,
    pub z: f64,
    pub mode: StepMode,
    pub vertices: Vec<Vec<f64>>,
    pub boundary_points: Vec<ConeRecord>,
    pub oracle: Option<Polytope>,
    pub defects: Vec<Vec<f64>>,
    pub emitted: usize,
    pub segments: Vec<(Vec<f64>, Vec<f64>)>,
    pub true_state: Option<Vec<f64>>,
    pub true_state_inside: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    /// The measurements are inconsistent with the model at step k.
    EmptyFront { k: usize },
    /// `S_k` lost its interior at step k.
    DegenerateFront { k: usize },
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Completed => 0,
            RunStatus::EmptyFront { .. } => 2,
            RunStatus::DegenerateFront { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Normalized coefficients (`d_1 = 1`).
    pub plant: PlantConfig,
    pub order: usize,
    pub x0: Vec<f64>,
    pub z: Vec<f64>,
    pub status: RunStatus,
    pub steps: Vec<StepRecord>,
}

impl RunReport {
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("report.json");
        let file = std::io::BufWriter::new(std::fs::File::create(&path)?);
        write_json(file, self)?;
        Ok(path)
    }
}

fn cone_records(front: Option<&Front>, poly: &Polytope) -> Vec<ConeRecord> {
    match front {
        Some(f) => f
            .boundary_points
            .iter()
            .map(|b| ConeRecord {
                point: b.point.clone(),
                generators: b.cone.generators.clone(),
                interval: b.cone_interval,
            })
            .collect(),
        None => poly
            .vertices()
            .iter()
            .map(|v| ConeRecord { point: v.clone(), generators: vec![], interval: None })
            .collect(),
    }
}

/// Execute a configured run. `seed` replaces the measurement seed of a
/// seeded configuration; `oracle` forces the exact recursion on.
///
/// An empty or degenerate set ends the run early; this is reported through
/// [`RunReport::status`] rather than as an error.
pub fn run(config: &RunConfig, seed: Option<u64>, oracle: bool) -> Result<RunReport> {
    config.validate()?;
    let mut tol = config.tolerances;
    tol.apply_env();
    let model = Model::from_coefficients(&config.plant.n, &config.plant.d)?;
    let m = model.order();
    if m > 2 {
        return Err(Error::UnsupportedOrder { max: 2, got: m });
    }

    let (z, truth) = match &config.measurements {
        Measurements::Explicit(z) => {
            if seed.is_some() {
                log::warn!("--seed ignored: configuration lists explicit measurements");
            }
            (z.clone(), None)
        }
        Measurements::Seeded { seed: s, law } => {
            let (v, w) = sample_disturbances(seed.unwrap_or(*s), config.horizon, *law);
            let traj = simulate(&model, &config.x0, &v, &w)?;
            (traj.z.clone(), Some(traj.x))
        }
    };

    let opts = PropagationOptions { sample_density: config.sample_density, tol };
    let mut obs = Observer::new(&model, &config.x0, opts, oracle || config.oracle)?;
    let mut steps = Vec::with_capacity(z.len());
    let mut status = RunStatus::Completed;
    for &zk in &z {
        let k = obs.k() + 1;
        let step = match obs.step(zk) {
            Ok(s) => s,
            Err(Error::EmptyFront { k }) | Err(Error::EmptySet { step: k }) => {
                status = RunStatus::EmptyFront { k };
                break;
            }
            Err(Error::DegenerateFront { .. }) => {
                status = RunStatus::DegenerateFront { k };
                break;
            }
            Err(e) => return Err(e),
        };
        let true_state = truth.as_ref().map(|x| x[k].clone());
        let true_state_inside = match (&true_state, config.bounds_check) {
            (Some(x), true) => {
                let inside = step.polytope.contains(x, BOUNDARY_TOL * step.polytope.scale());
                if !inside {
                    log::warn!("step {k}: true state {x:?} lies outside S_k");
                }
                Some(inside)
            }
            _ => None,
        };
        let (defects, emitted, segments) = match &step.outcome {
            Some(o) => (o.defects.clone(), o.emitted.len(), o.segments.clone()),
            None => (vec![], 0, vec![]),
        };
        steps.push(StepRecord {
            k,
            z: zk,
            mode: step.mode,
            vertices: step.polytope.vertices().to_vec(),
            boundary_points: cone_records(obs.front(), &step.polytope),
            oracle: step.oracle.clone(),
            defects,
            emitted,
            segments,
            true_state,
            true_state_inside,
        });
    }

    Ok(RunReport {
        plant: PlantConfig { n: model.plant.n().to_vec(), d: model.plant.d().to_vec() },
        order: m,
        x0: config.x0.clone(),
        z,
        status,
        steps,
    })
}

use serde::{Deserialize, Serialize};

use super::front::{propagate_front, Front, PropagationOptions, StepOutcome};
use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::lp::exact_step;
use crate::plant::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepMode {
    /// Computed by the exact set recursion while `S_k` still has empty interior.
    Exact,
    /// Computed by boundary propagation.
    Propagated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObserverStep {
    pub k: usize,
    pub z: f64,
    pub mode: StepMode,
    pub polytope: Polytope,
    /// Present for propagated steps.
    pub outcome: Option<StepOutcome>,
    pub oracle: Option<Polytope>,
}

/// Runs the recursion from a known initial state. `S_0 = {x0}` has no
/// interior, so the first steps use the exact recursion; once `S_k` is
/// full-dimensional the observer switches to boundary propagation.
#[derive(Debug, Clone)]
pub struct Observer<'a> {
    model: &'a Model,
    opts: PropagationOptions,
    current: Polytope,
    front: Option<Front>,
    oracle: Option<Polytope>,
    z_history: Vec<f64>,
}

impl<'a> Observer<'a> {
    pub fn new(model: &'a Model, x0: &[f64], opts: PropagationOptions, with_oracle: bool) -> Result<Self> {
        let m = model.order();
        if m > 2 {
            return Err(Error::UnsupportedOrder { max: 2, got: m });
        }
        if x0.len() != m {
            return Err(Error::LengthMismatch(format!("x0 has length {}, plant order is {m}", x0.len())));
        }
        let s0 = Polytope::point(x0);
        Ok(Self {
            model,
            opts,
            oracle: with_oracle.then(|| s0.clone()),
            current: s0,
            front: None,
            z_history: vec![],
        })
    }

    pub fn k(&self) -> usize {
        self.z_history.len()
    }

    pub fn current(&self) -> &Polytope {
        &self.current
    }

    pub fn front(&self) -> Option<&Front> {
        self.front.as_ref()
    }

    pub fn step(&mut self, z: f64) -> Result<ObserverStep> {
        let k = self.k() + 1;
        let oracle = match &self.oracle {
            Some(prev) => Some(exact_step(self.model, prev, z, k)?),
            None => None,
        };
        let (mode, poly, outcome) = match &self.front {
            Some(front) => {
                let out = propagate_front(self.model, front, z, &self.opts, oracle.as_ref())?;
                (StepMode::Propagated, out.front.polytope.clone(), Some(out))
            }
            None => (StepMode::Exact, exact_step(self.model, &self.current, z, k)?, None),
        };
        self.z_history.push(z);
        self.front = match &outcome {
            Some(out) => Some(out.front.clone()),
            None if poly.has_interior() => {
                Some(Front::from_polytope(poly.clone(), k, self.z_history.clone())?)
            }
            None => None,
        };
        self.current = poly.clone();
        self.oracle = oracle.clone();
        Ok(ObserverStep { k, z, mode, polytope: poly, outcome, oracle })
    }
}

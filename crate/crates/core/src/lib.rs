//! Exact recursive set-membership state estimation for scalar LTI plants.
//!
//! A plant `P(λ) = n(λ)/d(λ)` of order `m` is driven by a process disturbance
//! `v` and observed through a measurement `z = y + w`, with `|v|, |w| ≤ 1`.
//! Given the initial state and the measurements, the set `S_k` of states
//! consistent with everything seen so far is a convex polytope. This crate
//! computes it two ways:
//!
//! * [`propagation`] carries boundary points of `S_{k-1}` and their supporting
//!   directions forward one step at a time, using the alignment between the
//!   estimator signals `(y, v)` and the regulator signals `(y*, v*)`;
//! * [`lp`] solves the estimator and regulator linear programs directly and
//!   also runs the exact set recursion, and is used as an independent oracle.
//!
//! Coefficient vectors are stored in ascending order (`n[0]` is `n_1`). See
//! [`plant`] for details.

pub mod error;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod plant;
pub mod propagation;
pub mod runner;
pub mod tolerance;
pub mod trajectory;

pub use error::{Error, Result};
pub use geometry::{Halfspace, Polytope, SupportCone};
pub use plant::{Model, PlantSpec, Side};
pub use tolerance::Tolerances;

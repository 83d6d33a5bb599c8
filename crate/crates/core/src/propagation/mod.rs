//! Propagation of the uncertainty set by boundary points and supporting
//! directions.
//!
//! A boundary point `x_{k-1}` of `S_{k-1}` with a supporting direction
//! `x*_{k-1}` is pushed through the estimator dynamics while `x*_{k-1}` is
//! pushed through the regulator dynamics. Which disturbance `v_k` to apply is
//! decided by the alignment conditions, collected in the quadruple set `M`.

mod alignment;
mod front;
mod observer;
mod point;

pub use alignment::{
    aligned, compute_m, line_square_interval, partition_r, successor_interval, MKind, MResult,
    Quadruple, RTag, Sign,
};
pub use front::{
    max_support_gap, propagate_front, BoundaryPoint, EmittedPair, Front, PointSummary,
    PropagationOptions, Source, StepOutcome, DEFECT_TOL,
};
pub use observer::{Observer, ObserverStep, StepMode};
pub use point::{propagate_point, propagate_point_with, PointPropagation, Successor, ZERO_DIRECTION};

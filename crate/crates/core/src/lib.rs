//! Growth–diffusion coupling on an evolving closed plane curve.
//!
//! A signal measure carried by the nodes of an embedded curve is alternately
//! transported by a growth vector field and diffused by the intrinsic heat
//! semigroup. The two evolutions do not commute; this crate quantifies the
//! defect with numerical commutator estimators and an analytic weak-form
//! bracket, and provides the exact optimal-transport machinery used to
//! certify the scheme's regularity.
//!
//! The crate is `no_std` (with `alloc`); all float math goes through `libm`
//! so results do not depend on the platform's libm.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bracket;
pub mod field;
pub mod flow;
pub mod geometry;
pub mod heat;
pub mod measure;
mod num;
pub mod ot;
pub mod splitting;
pub mod tridiag;

pub use field::{GrowthField, JacobianMode, PolyField};
pub use geometry::{laplace_beltrami, metric_from_positions, tangential_trace};
pub use geometry::{EmbeddedCurve, Mat2, NodeFunction, Vec2};
pub use measure::{lp_distance, SignalMeasure};

use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Fewer nodes than the stencils support.
    TooFewNodes { got: usize, min: usize },
    /// A scalar parameter is outside its documented range.
    InvalidParameter(&'static str),
    /// Non-finite value encountered where a finite one is required.
    NonFinite(&'static str),
    /// The induced metric density vanished (immersion lost).
    DegenerateMetric { node: usize },
    /// Paired arrays disagree in length.
    LengthMismatch { expected: usize, got: usize },
    /// Total masses of two measures differ beyond tolerance.
    MassMismatch { total_a: f64, total_b: f64 },
    /// Discrete-transport support exceeds the desk-scale cap.
    SupportTooLarge { size: usize, cap: usize },
    /// A linear solve or pivoting loop failed.
    SolverFailure(&'static str),
    /// Certificate fit has no resolvable parameters.
    DegenerateFit,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooFewNodes { got, min } => {
                write!(f, "{got} nodes, but at least {min} are required")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::NonFinite(what) => write!(f, "non-finite value: {what}"),
            Error::DegenerateMetric { node } => {
                write!(f, "degenerate metric: sqrt(g) not positive at node {node}")
            }
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::MassMismatch { total_a, total_b } => {
                write!(f, "total mass mismatch: {total_a} vs {total_b}")
            }
            Error::SupportTooLarge { size, cap } => {
                write!(f, "support size {size} exceeds cap {cap}")
            }
            Error::SolverFailure(what) => write!(f, "solver failure: {what}"),
            Error::DegenerateFit => write!(f, "degenerate fit: sampled pairs are not separable"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

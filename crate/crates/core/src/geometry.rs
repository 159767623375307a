//! A closed curve embedded in the plane, its induced Riemannian structure,
//! and the intrinsic differential operators on it.
//!
//! The curve is sampled at `N` uniformly spaced Lagrangian parameters
//! `theta_i = 2*pi*i/N`. The metric density `sqrt(g)(theta_i) = |d/dtheta x|`
//! is the only geometric quantity the operators need: the Riemannian volume
//! weight of node `i` is `sqrt(g)_i * dtheta`, and the Laplace–Beltrami
//! operator is `(1/sqrt(g)) d/dtheta ((1/sqrt(g)) d/dtheta f)` in flux form.

use alloc::vec::Vec;

use crate::field::GrowthField;
use crate::num::{kahan_sum, F64Ext};
use crate::{Error, Result};

pub const MIN_NODES: usize = 8;

pub const TAU: f64 = 2.0 * core::f64::consts::PI;

/// Point or vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl core::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl core::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl core::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn mul_vec(self, v: Vec2) -> Vec2 {
        Vec2::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

/// Scalar samples at the nodes of a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeFunction {
    values: Vec<f64>,
}

impl NodeFunction {
    pub fn new(values: Vec<f64>) -> Self {
        NodeFunction { values }
    }

    /// Sample `f(theta)` at the curve's nodes.
    pub fn from_fn(curve: &EmbeddedCurve, f: impl Fn(f64) -> f64) -> Self {
        NodeFunction {
            values: curve.theta().iter().map(|&t| f(t)).collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl core::ops::Index<usize> for NodeFunction {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Closed curve embedded in the plane with its induced metric density.
///
/// Invariants: all arrays have length `N >= 8`, node `N` is identified with
/// node `0`, and `sqrt_g` is exactly what [`metric_from_positions`] produces
/// from `positions` (strictly positive everywhere).
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedCurve {
    theta: Vec<f64>,
    positions: Vec<Vec2>,
    sqrt_g: Vec<f64>,
}

impl EmbeddedCurve {
    /// Circle of the given radius, parametrized by the angle.
    pub fn circle(n_nodes: usize, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParameter("radius must be positive"));
        }
        if n_nodes < MIN_NODES {
            return Err(Error::TooFewNodes {
                got: n_nodes,
                min: MIN_NODES,
            });
        }
        let positions = (0..n_nodes)
            .map(|i| {
                let t = TAU * i as f64 / n_nodes as f64;
                Vec2::new(radius * t.cos(), radius * t.sin())
            })
            .collect();
        Self::from_positions(positions)
    }

    /// Curve through the given node positions (periodic, uniform in theta).
    pub fn from_positions(positions: Vec<Vec2>) -> Result<Self> {
        let sqrt_g = metric_from_positions(&positions)?;
        let n = positions.len();
        let theta = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        Ok(EmbeddedCurve {
            theta,
            positions,
            sqrt_g,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.positions.len()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn positions(&self) -> &[Vec2] {
        &self.positions
    }

    pub fn sqrt_g(&self) -> &[f64] {
        &self.sqrt_g
    }

    pub fn dtheta(&self) -> f64 {
        TAU / self.n_nodes() as f64
    }

    /// Riemannian volume weight of node `i`: `sqrt(g)_i * dtheta`.
    pub fn node_weight(&self, i: usize) -> f64 {
        self.sqrt_g[i] * self.dtheta()
    }

    /// All node weights.
    pub fn node_weights(&self) -> Vec<f64> {
        let dth = self.dtheta();
        self.sqrt_g.iter().map(|&s| s * dth).collect()
    }

    /// Total curve length `sum_i sqrt(g)_i * dtheta`.
    pub fn total_length(&self) -> f64 {
        kahan_sum(self.sqrt_g.iter().map(|&s| s * self.dtheta()))
    }

    /// Unit tangents from the same stencil that defines `sqrt_g`.
    pub fn unit_tangents(&self) -> Vec<Vec2> {
        derivative_vectors(&self.positions, self.dtheta())
            .into_iter()
            .zip(&self.sqrt_g)
            .map(|(d, &s)| d * (1.0 / s))
            .collect()
    }
}

/// Derivative of the position array with respect to theta (5-point central
/// stencil, periodic).
fn derivative_vectors(positions: &[Vec2], dtheta: f64) -> Vec<Vec2> {
    let n = positions.len();
    (0..n)
        .map(|i| {
            let p2 = positions[(i + 2) % n];
            let p1 = positions[(i + 1) % n];
            let m1 = positions[(i + n - 1) % n];
            let m2 = positions[(i + n - 2) % n];
            Vec2::new(
                (-p2.x + 8.0 * p1.x - 8.0 * m1.x + m2.x) / (12.0 * dtheta),
                (-p2.y + 8.0 * p1.y - 8.0 * m1.y + m2.y) / (12.0 * dtheta),
            )
        })
        .collect()
}

/// Metric density `sqrt(g)_i = |d/dtheta x(theta_i)|` from node positions.
///
/// Rejects inputs whose induced metric is not strictly positive everywhere
/// (node collisions, degenerate discretizations).
pub fn metric_from_positions(positions: &[Vec2]) -> Result<Vec<f64>> {
    let n = positions.len();
    if n < MIN_NODES {
        return Err(Error::TooFewNodes {
            got: n,
            min: MIN_NODES,
        });
    }
    if positions.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite("curve positions"));
    }
    let dtheta = TAU / n as f64;
    let mut sqrt_g = Vec::with_capacity(n);
    for (i, d) in derivative_vectors(positions, dtheta).into_iter().enumerate() {
        let s = d.norm();
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::DegenerateMetric { node: i });
        }
        sqrt_g.push(s);
    }
    Ok(sqrt_g)
}

/// Laplace–Beltrami operator applied to node samples, in flux form:
///
/// `(Lf)_i = [ (f_{i+1}-f_i)/s_{i+1/2} - (f_i-f_{i-1})/s_{i-1/2} ] / (sqrt(g)_i dtheta^2)`
///
/// with half-node metric `s_{i+1/2} = (sqrt(g)_i + sqrt(g)_{i+1})/2`. The
/// resulting operator is self-adjoint in the inner product weighted by
/// `sqrt(g)_i dtheta` and annihilates constants exactly.
pub fn laplace_beltrami(curve: &EmbeddedCurve, f: &NodeFunction) -> NodeFunction {
    let n = curve.n_nodes();
    assert_eq!(f.len(), n, "node function not paired with curve");
    let sg = curve.sqrt_g();
    let v = f.values();
    let dth = curve.dtheta();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let ip = (i + 1) % n;
        let im = (i + n - 1) % n;
        let s_plus = 0.5 * (sg[i] + sg[ip]);
        let s_minus = 0.5 * (sg[im] + sg[i]);
        let flux = (v[ip] - v[i]) / s_plus - (v[i] - v[im]) / s_minus;
        out.push(flux / (sg[i] * dth * dth));
    }
    NodeFunction::new(out)
}

/// Tangential trace of the field Jacobian: `Tr(Jv)_M(theta_i) = <Jv t, t>`
/// with `t` the unit tangent at node `i`.
pub fn tangential_trace(curve: &EmbeddedCurve, field: &dyn GrowthField) -> Result<NodeFunction> {
    let tangents = curve.unit_tangents();
    let mut out = Vec::with_capacity(curve.n_nodes());
    for (p, t) in curve.positions().iter().zip(tangents) {
        let j = field.jacobian(*p, None);
        if !j.is_finite() {
            return Err(Error::NonFinite("field jacobian"));
        }
        out.push(j.mul_vec(t).dot(t));
    }
    Ok(NodeFunction::new(out))
}

/// Weighted inner product `sum_i a_i b_i sqrt(g)_i dtheta`.
pub fn weighted_inner(curve: &EmbeddedCurve, a: &[f64], b: &[f64]) -> f64 {
    let dth = curve.dtheta();
    kahan_sum(
        a.iter()
            .zip(b)
            .zip(curve.sqrt_g())
            .map(|((&a, &b), &s)| a * b * s * dth),
    )
}

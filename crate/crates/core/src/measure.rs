//! The signal as a discrete measure carried by the curve's nodes.
//!
//! Mass rides with the Lagrangian nodes: node `i` owns mass `m_i`, and the
//! density with respect to the Riemannian volume is `rho_i = m_i / (sqrt(g)_i
//! dtheta)`. Moving the curve moves the masses untouched, which makes
//! push-forward exact and mass conservation structural.

use alloc::vec::Vec;

use crate::geometry::EmbeddedCurve;
use crate::num::{kahan_sum, F64Ext};
use crate::{Error, Result};

/// Node masses plus the derived density with respect to Riemannian volume.
///
/// Values may be negative (signed intermediates occur in bracket
/// computations); simulations reject negative initial data at entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalMeasure {
    masses: Vec<f64>,
    density: Vec<f64>,
    total: f64,
}

impl SignalMeasure {
    /// Measure with the given density with respect to Riemannian volume.
    /// The stored density is exactly the input; masses are `rho_i w_i`.
    pub fn from_density(curve: &EmbeddedCurve, density: &[f64]) -> Result<Self> {
        if density.len() != curve.n_nodes() {
            return Err(Error::LengthMismatch {
                expected: curve.n_nodes(),
                got: density.len(),
            });
        }
        if density.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite("density"));
        }
        let masses: Vec<f64> = density
            .iter()
            .enumerate()
            .map(|(i, &d)| d * curve.node_weight(i))
            .collect();
        let total = kahan_sum(masses.iter().copied());
        Ok(SignalMeasure {
            masses,
            density: density.to_vec(),
            total,
        })
    }

    /// Measure with the given node masses; density is derived.
    pub fn from_masses(curve: &EmbeddedCurve, masses: Vec<f64>) -> Result<Self> {
        if masses.len() != curve.n_nodes() {
            return Err(Error::LengthMismatch {
                expected: curve.n_nodes(),
                got: masses.len(),
            });
        }
        if masses.iter().any(|m| !m.is_finite()) {
            return Err(Error::NonFinite("masses"));
        }
        let density: Vec<f64> = masses
            .iter()
            .enumerate()
            .map(|(i, &m)| m / curve.node_weight(i))
            .collect();
        let total = kahan_sum(masses.iter().copied());
        Ok(SignalMeasure {
            masses,
            density,
            total,
        })
    }

    /// Uniform density `c` with respect to Riemannian volume.
    pub fn uniform(curve: &EmbeddedCurve, c: f64) -> Result<Self> {
        let density: Vec<f64> = core::iter::repeat(c).take(curve.n_nodes()).collect();
        Self::from_density(curve, &density)
    }

    /// Density `c (1 + cos(theta))`.
    pub fn cosine(curve: &EmbeddedCurve, c: f64) -> Result<Self> {
        let density: Vec<f64> = curve.theta().iter().map(|&t| c * (1.0 + t.cos())).collect();
        Self::from_density(curve, &density)
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.density.iter().all(|&d| d >= 0.0)
    }

    /// Whether the measure can stand in for a probability-like signal.
    pub fn is_probability_like(&self) -> bool {
        self.total > 0.0
    }

    /// Carry the masses onto another curve with the same node count and
    /// recompute the density there. When the new curve is the flow image of
    /// the old one this realizes the push-forward exactly: total mass is
    /// copied, not resummed.
    pub fn rebind(&self, new_curve: &EmbeddedCurve) -> Result<Self> {
        if new_curve.n_nodes() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: new_curve.n_nodes(),
            });
        }
        let density: Vec<f64> = self
            .masses
            .iter()
            .enumerate()
            .map(|(i, &m)| m / new_curve.node_weight(i))
            .collect();
        Ok(SignalMeasure {
            masses: self.masses.clone(),
            density,
            total: self.total,
        })
    }
}

/// Weighted lp norm of the density difference, with quadrature weights
/// `sqrt(g)_i dtheta`.
pub fn lp_distance(
    curve: &EmbeddedCurve,
    a: &SignalMeasure,
    b: &SignalMeasure,
    p: f64,
) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidParameter("lp exponent must satisfy p >= 1"));
    }
    if a.len() != curve.n_nodes() || b.len() != curve.n_nodes() {
        return Err(Error::LengthMismatch {
            expected: curve.n_nodes(),
            got: a.len().min(b.len()),
        });
    }
    let sum = kahan_sum((0..curve.n_nodes()).map(|i| {
        let d = (a.density[i] - b.density[i]).abs();
        d.powf(p) * curve.node_weight(i)
    }));
    Ok(sum.powf(1.0 / p))
}

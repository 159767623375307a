//! Growth vector fields on the plane and their Jacobians.

use crate::geometry::{Mat2, Vec2};
use crate::measure::SignalMeasure;
use crate::num::F64Ext;
use crate::{Error, Result};

/// How a field's Jacobian is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JacobianMode {
    Analytic,
    /// Central differences of the velocity with the given step.
    FiniteDifference { step: f64 },
}

/// A growth vector field. The velocity may depend on the current signal
/// measure; every evolution operation freezes that measure over its own
/// interval, so implementations see it as an explicit argument.
///
/// Implementations must be reentrant: evaluation order across nodes is
/// unspecified and results must not depend on it.
pub trait GrowthField {
    fn velocity(&self, p: Vec2, frozen: Option<&SignalMeasure>) -> Vec2;

    /// Jacobian of the velocity with respect to the point. The default is a
    /// second-order central difference with step `1e-6`.
    fn jacobian(&self, p: Vec2, frozen: Option<&SignalMeasure>) -> Mat2 {
        central_difference_jacobian(self, p, frozen, 1e-6)
    }

    /// A bound dominating `|v(x)-v(y)|/|x-y|` on the working domain, if the
    /// implementation knows one.
    fn lipschitz_bound(&self) -> Option<f64> {
        None
    }
}

/// Central-difference Jacobian of any field's velocity.
pub fn central_difference_jacobian<F: GrowthField + ?Sized>(
    field: &F,
    p: Vec2,
    frozen: Option<&SignalMeasure>,
    step: f64,
) -> Mat2 {
    let h = step;
    let vxp = field.velocity(Vec2::new(p.x + h, p.y), frozen);
    let vxm = field.velocity(Vec2::new(p.x - h, p.y), frozen);
    let vyp = field.velocity(Vec2::new(p.x, p.y + h), frozen);
    let vym = field.velocity(Vec2::new(p.x, p.y - h), frozen);
    Mat2::new(
        (vxp.x - vxm.x) / (2.0 * h),
        (vyp.x - vym.x) / (2.0 * h),
        (vxp.y - vxm.y) / (2.0 * h),
        (vyp.y - vym.y) / (2.0 * h),
    )
}

/// Polynomial field of total degree at most 2 per component:
///
/// `v_k(x, y) = c + cx*x + cy*y + cxx*x^2 + cxy*x*y + cyy*y^2`
///
/// Covers the built-in named fields and user coefficient tables.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyField {
    coeffs: [[f64; 6]; 2],
    mode: JacobianMode,
}

impl PolyField {
    /// Coefficient order per component: `[c, cx, cy, cxx, cxy, cyy]`.
    pub fn from_coeffs(coeffs_x: [f64; 6], coeffs_y: [f64; 6]) -> Result<Self> {
        if coeffs_x.iter().chain(&coeffs_y).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("field coefficients"));
        }
        Ok(PolyField {
            coeffs: [coeffs_x, coeffs_y],
            mode: JacobianMode::Analytic,
        })
    }

    /// Built-in fields selectable by name: `"paper"` = (x-1, 2y),
    /// `"rotation"` = (-y, x), `"zero"`, `"radial"` = (x, y).
    pub fn named(name: &str) -> Option<Self> {
        let (cx, cy) = match name {
            "paper" => ([-1.0, 1.0, 0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 2.0, 0.0, 0.0, 0.0]),
            "rotation" => ([0.0, 0.0, -1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0, 0.0, 0.0]),
            "zero" => ([0.0; 6], [0.0; 6]),
            "radial" => ([0.0, 1.0, 0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0, 0.0, 0.0]),
            _ => return None,
        };
        Some(PolyField {
            coeffs: [cx, cy],
            mode: JacobianMode::Analytic,
        })
    }

    pub fn with_jacobian_mode(mut self, mode: JacobianMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn is_affine(&self) -> bool {
        self.coeffs.iter().all(|c| c[3] == 0.0 && c[4] == 0.0 && c[5] == 0.0)
    }

    fn component(&self, k: usize, p: Vec2) -> f64 {
        let c = &self.coeffs[k];
        c[0] + c[1] * p.x + c[2] * p.y + c[3] * p.x * p.x + c[4] * p.x * p.y + c[5] * p.y * p.y
    }

    fn analytic_jacobian(&self, p: Vec2) -> Mat2 {
        let r = |k: usize| -> (f64, f64) {
            let c = &self.coeffs[k];
            (
                c[1] + 2.0 * c[3] * p.x + c[4] * p.y,
                c[2] + c[4] * p.x + 2.0 * c[5] * p.y,
            )
        };
        let (dxx, dxy) = r(0);
        let (dyx, dyy) = r(1);
        Mat2::new(dxx, dxy, dyx, dyy)
    }
}

impl GrowthField for PolyField {
    fn velocity(&self, p: Vec2, _frozen: Option<&SignalMeasure>) -> Vec2 {
        Vec2::new(self.component(0, p), self.component(1, p))
    }

    fn jacobian(&self, p: Vec2, frozen: Option<&SignalMeasure>) -> Mat2 {
        match self.mode {
            JacobianMode::Analytic => self.analytic_jacobian(p),
            JacobianMode::FiniteDifference { step } => {
                central_difference_jacobian(self, p, frozen, step)
            }
        }
    }

    /// Exact operator 2-norm of the linear part for affine fields; `None`
    /// for genuinely quadratic fields (not globally Lipschitz).
    fn lipschitz_bound(&self) -> Option<f64> {
        if !self.is_affine() {
            return None;
        }
        let m = self.analytic_jacobian(Vec2::ZERO);
        // singular values of [[a,b],[c,d]]
        let q = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
        let det = m.a * m.d - m.b * m.c;
        let s = ((q + 2.0 * det.abs()).max(0.0)).sqrt();
        let t = ((q - 2.0 * det.abs()).max(0.0)).sqrt();
        Some(0.5 * (s + t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_fields_evaluate() {
        let p = Vec2::new(0.3, -1.2);
        let paper = PolyField::named("paper").unwrap();
        let v = paper.velocity(p, None);
        assert_eq!((v.x, v.y), (p.x - 1.0, 2.0 * p.y));
        let rot = PolyField::named("rotation").unwrap();
        let v = rot.velocity(p, None);
        assert_eq!((v.x, v.y), (-p.y, p.x));
        assert!(PolyField::named("swirl").is_none());
    }

    #[test]
    fn finite_difference_jacobian_second_order() {
        // quadratic field: FD error should shrink like h^2
        let f = PolyField::from_coeffs(
            [0.1, -1.0, 0.4, 0.2, -0.3, 0.05],
            [0.0, 0.7, 2.0, -0.1, 0.25, 0.4],
        )
        .unwrap();
        let p = Vec2::new(0.8, -0.4);
        let exact = f.analytic_jacobian(p);
        let mut errs = [0.0; 2];
        for (k, h) in [1e-2, 1e-3].iter().enumerate() {
            let fd = central_difference_jacobian(&f, p, None, *h);
            errs[k] = (fd.a - exact.a)
                .abs()
                .max((fd.b - exact.b).abs())
                .max((fd.c - exact.c).abs())
                .max((fd.d - exact.d).abs());
        }
        // exactly quadratic, so central differences are exact up to rounding
        assert!(errs[0] < 1e-12 && errs[1] < 1e-10);
    }

    #[test]
    fn fd_matches_analytic_for_paper_field() {
        let f = PolyField::named("paper").unwrap();
        let fd = f
            .clone()
            .with_jacobian_mode(JacobianMode::FiniteDifference { step: 1e-5 });
        let p = Vec2::new(1.4, 0.2);
        let ja = f.jacobian(p, None);
        let jf = fd.jacobian(p, None);
        for (a, b) in [(ja.a, jf.a), (ja.b, jf.b), (ja.c, jf.c), (ja.d, jf.d)] {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn lipschitz_bound_dominates_difference_quotients() {
        for name in ["paper", "rotation", "radial", "zero"] {
            let f = PolyField::named(name).unwrap();
            let bound = f.lipschitz_bound().unwrap();
            for k in 0..40 {
                let t = k as f64 * 0.157;
                let p = Vec2::new(1.5 * t.cos(), 1.5 * t.sin());
                let q = Vec2::new(0.7 * (3.0 * t).sin(), -0.2 + 0.5 * t.cos());
                let dv = (f.velocity(p, None) - f.velocity(q, None)).norm();
                let dx = (p - q).norm();
                if dx > 0.0 {
                    assert!(dv / dx <= bound + 1e-12, "{name}: {} > {bound}", dv / dx);
                }
            }
        }
        let quad = PolyField::from_coeffs([0.0, 0.0, 0.0, 1.0, 0.0, 0.0], [0.0; 6]).unwrap();
        assert!(quad.lipschitz_bound().is_none());
    }

    #[test]
    fn rejects_non_finite_coefficients() {
        assert!(matches!(
            PolyField::from_coeffs([f64::INFINITY; 6], [0.0; 6]),
            Err(Error::NonFinite(_))
        ));
    }
}

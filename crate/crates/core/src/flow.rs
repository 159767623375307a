//! Flow integration and push-forward/pull-back of curves and measures.

use alloc::vec::Vec;

use crate::field::GrowthField;
use crate::geometry::{EmbeddedCurve, Vec2};
use crate::measure::SignalMeasure;
use crate::{Error, Result};

/// Integrate `dx/dt = v(x)` for each point with the classical 4-stage
/// one-step method. The duration is split into `ceil(duration/dt)` equal
/// steps; global error is O(dt^4) per unit time for smooth fields.
///
/// For measure-dependent fields, `frozen` supplies the measure at which the
/// field is frozen for the whole integration.
pub fn flow_points(
    field: &dyn GrowthField,
    points: &[Vec2],
    duration: f64,
    dt: f64,
    frozen: Option<&SignalMeasure>,
) -> Result<Vec<Vec2>> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParameter("flow dt must be positive"));
    }
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(Error::InvalidParameter("flow duration must be nonnegative"));
    }
    if duration == 0.0 {
        return Ok(points.to_vec());
    }
    let n_steps = (duration / dt) as usize + usize::from(duration / dt > (duration / dt) as usize as f64 - 0.0 && (duration / dt) - ((duration / dt) as usize as f64) > 0.0);
    let n_steps = n_steps.max(1);
    let h = duration / n_steps as f64;
    let mut out = Vec::with_capacity(points.len());
    for &p0 in points {
        let mut x = p0;
        for _ in 0..n_steps {
            let k1 = field.velocity(x, frozen);
            let k2 = field.velocity(x + k1 * (0.5 * h), frozen);
            let k3 = field.velocity(x + k2 * (0.5 * h), frozen);
            let k4 = field.velocity(x + k3 * h, frozen);
            let incr = (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
            if !incr.is_finite() {
                return Err(Error::NonFinite("field velocity along flow"));
            }
            x = x + incr;
        }
        out.push(x);
    }
    Ok(out)
}

/// Push the curve and its measure forward by the flow of `field` over
/// `duration`, freezing the field at `measure`. Node masses are untouched;
/// the metric is recomputed on the image curve, so total mass is preserved
/// exactly.
pub fn pushforward(
    curve: &EmbeddedCurve,
    measure: &SignalMeasure,
    field: &dyn GrowthField,
    duration: f64,
    dt: f64,
) -> Result<(EmbeddedCurve, SignalMeasure)> {
    let moved = flow_points(field, curve.positions(), duration, dt, Some(measure))?;
    let image = EmbeddedCurve::from_positions(moved)?;
    let rebound = measure.rebind(&image)?;
    Ok((image, rebound))
}

/// Transport back by integrating the reversed field for the same duration.
/// `pullback` after `pushforward` returns node positions within the
/// integrator tolerance of the originals.
pub fn pullback(
    curve: &EmbeddedCurve,
    measure: &SignalMeasure,
    field: &dyn GrowthField,
    duration: f64,
    dt: f64,
) -> Result<(EmbeddedCurve, SignalMeasure)> {
    let reversed = ReversedField { inner: field };
    let moved = flow_points(&reversed, curve.positions(), duration, dt, Some(measure))?;
    let image = EmbeddedCurve::from_positions(moved)?;
    let rebound = measure.rebind(&image)?;
    Ok((image, rebound))
}

struct ReversedField<'a> {
    inner: &'a dyn GrowthField,
}

impl GrowthField for ReversedField<'_> {
    fn velocity(&self, p: Vec2, frozen: Option<&SignalMeasure>) -> Vec2 {
        self.inner.velocity(p, frozen) * -1.0
    }

    fn jacobian(&self, p: Vec2, frozen: Option<&SignalMeasure>) -> crate::geometry::Mat2 {
        let j = self.inner.jacobian(p, frozen);
        crate::geometry::Mat2::new(-j.a, -j.b, -j.c, -j.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PolyField;
    use crate::num::F64Ext;
    use alloc::vec;

    #[test]
    fn paper_field_flows_to_closed_form() {
        // dx/dt = x-1, dy/dt = 2y from (0,1):
        // x(t) = 1 - e^t, y(t) = e^{2t}
        let f = PolyField::named("paper").unwrap();
        let got = flow_points(&f, &[Vec2::new(0.0, 1.0)], 0.25, 1e-3, None).unwrap()[0];
        let want = Vec2::new(1.0 - 0.25f64.exp(), 0.5f64.exp());
        assert!((got - want).norm() < 1e-8, "{got:?} vs {want:?}");
    }

    #[test]
    fn fixed_point_stays_fixed() {
        let f = PolyField::named("paper").unwrap();
        let got = flow_points(&f, &[Vec2::new(1.0, 0.0)], 3.0, 1e-2, None).unwrap()[0];
        assert_eq!(got, Vec2::new(1.0, 0.0));
    }

    #[test]
    fn zero_field_is_identity() {
        let f = PolyField::named("zero").unwrap();
        let pts = vec![Vec2::new(0.4, -0.7), Vec2::new(2.0, 3.0)];
        let got = flow_points(&f, &pts, 1.0, 1e-2, None).unwrap();
        assert_eq!(got, pts);
    }

    #[test]
    fn duration_zero_is_identity() {
        let f = PolyField::named("paper").unwrap();
        let pts = vec![Vec2::new(0.4, -0.7)];
        assert_eq!(flow_points(&f, &pts, 0.0, 1e-3, None).unwrap(), pts);
    }

    #[test]
    fn rejects_bad_parameters() {
        let f = PolyField::named("paper").unwrap();
        let pts = [Vec2::new(0.0, 0.0)];
        assert!(flow_points(&f, &pts, 1.0, 0.0, None).is_err());
        assert!(flow_points(&f, &pts, -1.0, 1e-3, None).is_err());
    }

    #[test]
    fn semigroup_property_of_flow() {
        let f = PolyField::named("paper").unwrap();
        let p = [Vec2::new(0.3, 0.9)];
        let once = flow_points(&f, &p, 0.2, 1e-3, None).unwrap();
        let first = flow_points(&f, &p, 0.1, 1e-3, None).unwrap();
        let twice = flow_points(&f, &first, 0.1, 1e-3, None).unwrap();
        assert!((once[0] - twice[0]).norm() < 1e-9);
    }

    #[test]
    fn pushforward_preserves_mass_exactly() {
        let c = EmbeddedCurve::circle(128, 1.0).unwrap();
        let m = SignalMeasure::cosine(&c, 0.1).unwrap();
        let f = PolyField::named("paper").unwrap();
        let (c2, m2) = pushforward(&c, &m, &f, 0.25, 1e-3).unwrap();
        assert_eq!(m2.total(), m.total());
        assert_eq!(m2.masses(), m.masses());
        assert!(c2.n_nodes() == 128);
    }

    #[test]
    fn pushforward_circle_lands_on_ellipse() {
        let c = EmbeddedCurve::circle(256, 1.0).unwrap();
        let m = SignalMeasure::uniform(&c, 0.1).unwrap();
        let f = PolyField::named("paper").unwrap();
        let (c2, _) = pushforward(&c, &m, &f, 0.25, 1e-3).unwrap();
        let xc = 1.0 - 0.25f64.exp();
        let (ea, eb) = (0.25f64.exp(), 0.5f64.exp());
        for p in c2.positions() {
            let r = ((p.x - xc) / ea) * ((p.x - xc) / ea) + (p.y / eb) * (p.y / eb) - 1.0;
            assert!(r.abs() < 1e-6);
        }
    }

    #[test]
    fn rotation_field_keeps_uniform_density_uniform() {
        let c = EmbeddedCurve::circle(64, 1.0).unwrap();
        let m = SignalMeasure::uniform(&c, 0.1).unwrap();
        let f = PolyField::named("rotation").unwrap();
        let (_, m2) = pushforward(&c, &m, &f, 0.5, 1e-3).unwrap();
        let d0 = m2.density()[0];
        for d in m2.density() {
            assert!((d - d0).abs() < 1e-12);
        }
    }

    #[test]
    fn pullback_inverts_pushforward() {
        let c = EmbeddedCurve::circle(128, 1.0).unwrap();
        let m = SignalMeasure::uniform(&c, 0.1).unwrap();
        let f = PolyField::named("paper").unwrap();
        let (c1, m1) = pushforward(&c, &m, &f, 0.1, 1e-3).unwrap();
        let (c0, m0) = pullback(&c1, &m1, &f, 0.1, 1e-3).unwrap();
        let max_disp = c
            .positions()
            .iter()
            .zip(c0.positions())
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max);
        assert!(max_disp < 1e-9, "max displacement {max_disp}");
        assert_eq!(m0.total(), m.total());
    }

    #[test]
    fn constant_field_translates_rigidly() {
        let f = PolyField::from_coeffs([1.0, 0.0, 0.0, 0.0, 0.0, 0.0], [0.0; 6]).unwrap();
        let c = EmbeddedCurve::circle(64, 1.0).unwrap();
        let m = SignalMeasure::uniform(&c, 0.1).unwrap();
        let t = 0.37;
        let (c1, _) = pullback(&c, &m, &f, t, 1e-3).unwrap();
        for (p0, p1) in c.positions().iter().zip(c1.positions()) {
            assert!((p1.x - (p0.x - t)).abs() < 1e-12);
            assert!((p1.y - p0.y).abs() < 1e-12);
        }
    }
}

//! Small numeric helpers shared across modules.

/// Float math routed through `libm` so the crate stays `no_std` and results
/// do not depend on the platform's math library.
pub(crate) trait F64Ext {
    fn abs(self) -> f64;
    fn sqrt(self) -> f64;
    fn cos(self) -> f64;
    fn sin(self) -> f64;
    fn exp(self) -> f64;
    fn ln(self) -> f64;
    fn powf(self, e: f64) -> f64;
    fn hypot(self, other: f64) -> f64;
}

impl F64Ext for f64 {
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    fn sin(self) -> f64 {
        libm::sin(self)
    }
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    fn ln(self) -> f64 {
        libm::log(self)
    }
    fn powf(self, e: f64) -> f64 {
        libm::pow(self, e)
    }
    fn hypot(self, other: f64) -> f64 {
        libm::hypot(self, other)
    }
}

/// Neumaier-compensated sum.
pub(crate) fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if F64Ext::abs(sum) >= F64Ext::abs(v) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Slope of the least-squares line through (xs, ys).
pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = kahan_sum(xs.iter().copied()) / n;
    let my = kahan_sum(ys.iter().copied()) / n;
    let sxy = kahan_sum(xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)));
    let sxx = kahan_sum(xs.iter().map(|x| (x - mx) * (x - mx)));
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_cancellation() {
        let vals = [1.0e16, 1.0, -1.0e16, 1.0];
        assert_eq!(kahan_sum(vals), 2.0);
    }

    #[test]
    fn slope_of_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, 4.0, 6.0, 8.0];
        assert!((least_squares_slope(&xs, &ys) - 2.0).abs() < 1e-14);
    }
}

//! Shape-preserving piecewise-cubic interpolation (Fritsch–Carlson).
//!
//! Monotone data stays monotone under interpolation, which is what makes
//! grid checks of the Hawking-mass profile sufficient for class membership.

use crate::{Error, Result};

/// A C¹ piecewise-cubic Hermite interpolant whose node slopes are limited so
/// that the interpolant is monotone on every interval where the data is.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl MonotoneCubic {
    /// Build the interpolant; `xs` must be strictly increasing and at least
    /// two points long.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(Error::Domain(format!(
                "monotone cubic needs >= 2 matching points, got {} x {}",
                n,
                ys.len()
            )));
        }
        let mut h = vec![0.0; n - 1];
        let mut delta = vec![0.0; n - 1];
        for i in 0..n - 1 {
            h[i] = xs[i + 1] - xs[i];
            if !(h[i] > 0.0) {
                return Err(Error::Domain(format!(
                    "abscissae not strictly increasing at index {i}: {} -> {}",
                    xs[i],
                    xs[i + 1]
                )));
            }
            delta[i] = (ys[i + 1] - ys[i]) / h[i];
        }

        let mut ds = vec![0.0; n];
        if n == 2 {
            ds[0] = delta[0];
            ds[1] = delta[0];
            return Ok(Self { xs, ys, ds });
        }

        // Interior slopes: weighted harmonic mean where neighbouring secants
        // share a sign, zero otherwise (Fritsch–Carlson).
        for i in 1..n - 1 {
            let (d0, d1) = (delta[i - 1], delta[i]);
            if d0 == 0.0 || d1 == 0.0 || (d0 > 0.0) != (d1 > 0.0) {
                ds[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                ds[i] = (w1 + w2) / (w1 / d0 + w2 / d1);
            }
        }
        ds[0] = endpoint_slope(h[0], h[1], delta[0], delta[1]);
        ds[n - 1] = endpoint_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);

        Ok(Self { xs, ys, ds })
    }

    pub fn min_x(&self) -> f64 {
        self.xs[0]
    }

    pub fn max_x(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    fn segment(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    /// Evaluate at `x`; clamps to the data range.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.ds[i] + h01 * self.ys[i + 1] + h11 * h * self.ds[i + 1]
    }

    /// Derivative of the interpolant at `x` (zero outside the data range).
    pub fn eval_derivative(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x < self.xs[0] || x > self.xs[n - 1] {
            return 0.0;
        }
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = ((x - self.xs[i]) / h).clamp(0.0, 1.0);
        let t2 = t * t;
        let dh00 = (6.0 * t2 - 6.0 * t) / h;
        let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
        let dh01 = (-6.0 * t2 + 6.0 * t) / h;
        let dh11 = 3.0 * t2 - 2.0 * t;
        dh00 * self.ys[i] + dh10 * self.ds[i] + dh01 * self.ys[i + 1] + dh11 * self.ds[i + 1]
    }
}

// Three-point endpoint slope with the Fritsch–Carlson limiters.
fn endpoint_slope(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
    let mut d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d.signum() != del0.signum() {
        d = 0.0;
    } else if del0.signum() != del1.signum() && d.abs() > 3.0 * del0.abs() {
        d = 3.0 * del0;
    }
    d
}

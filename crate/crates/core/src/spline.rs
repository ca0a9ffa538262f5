//! Periodic cubic splines on non-uniform knots.

use crate::error::{invalid, Result};
use crate::tridiag::solve_cyclic;

/// A C² periodic cubic interpolant of samples `(knot_i, value_i)` with period `period`.
#[derive(Debug, Clone)]
pub struct PeriodicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
    period: f64,
}

impl PeriodicSpline {
    /// `knots` must be strictly increasing with `knots[n-1] - knots[0] < period`.
    pub fn new(knots: &[f64], values: &[f64], period: f64) -> Result<Self> {
        let n = knots.len();
        if n != values.len() {
            return Err(invalid("spline knots and values differ in length"));
        }
        if n < 3 {
            return Err(invalid("periodic spline needs at least 3 knots"));
        }
        let widths: Vec<f64> = (0..n)
            .map(|i| {
                if i + 1 < n {
                    knots[i + 1] - knots[i]
                } else {
                    knots[0] + period - knots[n - 1]
                }
            })
            .collect();
        if widths.iter().any(|&h| !(h > 0.0)) {
            return Err(invalid("spline knots must be strictly increasing within one period"));
        }
        let mut lower = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 0..n {
            let hp = widths[(i + n - 1) % n];
            let h = widths[i];
            lower[i] = hp;
            diag[i] = 2.0 * (hp + h);
            upper[i] = h;
            let next = values[(i + 1) % n];
            let prev = values[(i + n - 1) % n];
            rhs[i] = 6.0 * ((next - values[i]) / h - (values[i] - prev) / hp);
        }
        let second = solve_cyclic(&lower, &diag, &upper, &rhs)?;
        Ok(Self {
            knots: knots.to_vec(),
            values: values.to_vec(),
            second,
            period,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    fn locate(&self, t: f64) -> (usize, f64, f64) {
        let n = self.knots.len();
        let t0 = self.knots[0];
        let mut u = (t - t0).rem_euclid(self.period) + t0;
        if u >= t0 + self.period {
            u = t0;
        }
        let i = match self.knots.partition_point(|&k| k <= u) {
            0 => 0,
            p => p - 1,
        };
        let left = self.knots[i];
        let right = if i + 1 < n {
            self.knots[i + 1]
        } else {
            t0 + self.period
        };
        (i, u - left, right - left)
    }

    /// Value at an arbitrary parameter (wrapped into the period).
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.knots.len();
        let (i, x, h) = self.locate(t);
        let j = (i + 1) % n;
        let a = (h - x) / h;
        let b = x / h;
        a * self.values[i]
            + b * self.values[j]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[j]) * h * h / 6.0
    }

    /// First derivative at an arbitrary parameter.
    pub fn deriv(&self, t: f64) -> f64 {
        let n = self.knots.len();
        let (i, x, h) = self.locate(t);
        let j = (i + 1) % n;
        let a = (h - x) / h;
        let b = x / h;
        (self.values[j] - self.values[i]) / h
            + (-(3.0 * a * a - 1.0) * self.second[i] + (3.0 * b * b - 1.0) * self.second[j]) * h
                / 6.0
    }
}

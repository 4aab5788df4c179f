//! Compactly supported radial profiles with a known derivative.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function `u` on `(0, ∞)` that vanishes outside `[a, b]`, `0 < a < b`,
/// together with its derivative.
///
/// Cloning is cheap; the closures are shared.
#[derive(Clone)]
pub struct RadialFunction {
    value: Profile,
    deriv: Profile,
    support: (f64, f64),
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialFunction")
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

impl RadialFunction {
    /// Wraps `value` and `deriv`. Both are only called inside `[a, b]`.
    pub fn new<F, G>(value: F, deriv: G, a: f64, b: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(a > 0.0 && a < b && b.is_finite()) {
            return Err(domain("support must satisfy 0 < a < b < inf"));
        }
        Ok(Self {
            value: Arc::new(value),
            deriv: Arc::new(deriv),
            support: (a, b),
        })
    }

    /// `exp(−1/(1 − x²))` with `x` the affine image of `r` in `(−1, 1)`.
    pub fn bump(a: f64, b: f64) -> Result<Self> {
        Self::bump_with_polynomial(a, b, &[1.0])
    }

    /// The bump on `[1, 2]`.
    pub fn standard_bump() -> Self {
        Self::bump(1.0, 2.0).expect("valid support")
    }

    /// The bump on `[a, b]` times `Σ c_j x^j`, with `x ∈ (−1, 1)` as in [`bump`](Self::bump).
    pub fn bump_with_polynomial(a: f64, b: f64, coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(domain("polynomial needs at least one coefficient"));
        }
        let c: Arc<Vec<f64>> = Arc::new(coeffs.to_vec());
        let c2 = c.clone();
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let poly = |c: &[f64], x: f64| -> (f64, f64) {
            let mut p = 0.0;
            let mut dp = 0.0;
            for &cj in c.iter().rev() {
                dp = dp * x + p;
                p = p * x + cj;
            }
            (p, dp)
        };
        let value = move |r: f64| {
            let x = (r - mid) / half;
            let q = 1.0 - x * x;
            if q <= 0.0 {
                return 0.0;
            }
            (-1.0 / q).exp() * poly(&c, x).0
        };
        let deriv = move |r: f64| {
            let x = (r - mid) / half;
            let q = 1.0 - x * x;
            if q <= 0.0 {
                return 0.0;
            }
            let e = (-1.0 / q).exp();
            let (p, dp) = poly(&c2, x);
            e * (dp - 2.0 * x / (q * q) * p) / half
        };
        Self::new(value, deriv, a, b)
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn eval(&self, r: f64) -> f64 {
        let (a, b) = self.support;
        if r <= a || r >= b {
            0.0
        } else {
            (self.value)(r)
        }
    }

    pub fn deriv(&self, r: f64) -> f64 {
        let (a, b) = self.support;
        if r <= a || r >= b {
            0.0
        } else {
            (self.deriv)(r)
        }
    }

    /// `u(r) − u(r − w)`, accurate also when `w` is tiny compared to `r`.
    pub fn difference(&self, r: f64, w: f64) -> f64 {
        let (a, b) = self.support;
        if w.abs() > 1e-3 * (b - a) {
            return self.eval(r) - self.eval(r - w);
        }
        // Three-point Gauss rule for ∫_{r−w}^{r} u′.
        let m = r - 0.5 * w;
        let h = 0.5 * w;
        let x = 0.774_596_669_241_483_4 * h;
        h * (5.0 / 9.0 * (self.deriv(m - x) + self.deriv(m + x)) + 8.0 / 9.0 * self.deriv(m))
    }

    /// `r ↦ r^p u(r)`.
    pub fn times_power(&self, p: f64) -> Self {
        let (v, d) = (self.clone(), self.clone());
        Self {
            value: Arc::new(move |r| r.powf(p) * v.eval(r)),
            deriv: Arc::new(move |r| r.powf(p) * (d.deriv(r) + p / r * d.eval(r))),
            support: self.support,
        }
    }

    /// `r ↦ c u(r)`.
    pub fn scaled_by(&self, c: f64) -> Self {
        let (v, d) = (self.clone(), self.clone());
        Self {
            value: Arc::new(move |r| c * v.eval(r)),
            deriv: Arc::new(move |r| c * d.deriv(r)),
            support: self.support,
        }
    }

    /// `r ↦ u(r/λ)`, supported on `[λa, λb]`.
    pub fn dilated(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(domain("dilation factor must be positive"));
        }
        let (v, d) = (self.clone(), self.clone());
        let (a, b) = self.support;
        Ok(Self {
            value: Arc::new(move |r| v.eval(r / lambda)),
            deriv: Arc::new(move |r| d.deriv(r / lambda) / lambda),
            support: (lambda * a, lambda * b),
        })
    }

    /// Largest relative mismatch between `deriv` and a central difference
    /// at the given points.
    pub fn derivative_mismatch(&self, points: &[f64]) -> f64 {
        let (a, b) = self.support;
        let h = 1e-5 * (b - a);
        let scale = points
            .iter()
            .map(|&r| self.deriv(r).abs())
            .fold(0.0, f64::max)
            .max(1e-300);
        points
            .iter()
            .map(|&r| {
                let fd = (self.eval(r + h) - self.eval(r - h)) / (2.0 * h);
                (fd - self.deriv(r)).abs() / scale
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bump_derivative_matches_finite_difference() {
        let pts: Vec<f64> = (1..20).map(|i| 1.0 + i as f64 / 20.0).collect();
        assert!(RadialFunction::standard_bump().derivative_mismatch(&pts) < 1e-6);
        let u = RadialFunction::bump_with_polynomial(0.5, 3.0, &[1.0, -0.4, 0.7]).unwrap();
        let pts: Vec<f64> = (1..20).map(|i| 0.5 + 2.5 * i as f64 / 20.0).collect();
        assert!(u.derivative_mismatch(&pts) < 1e-6);
        assert!(u.times_power(-1.3).derivative_mismatch(&pts) < 1e-6);
        assert!(u.dilated(2.0).unwrap().derivative_mismatch(&pts) < 1e-6);
    }

    #[test]
    fn difference_small_and_large_offsets() {
        let u = RadialFunction::standard_bump();
        for &w in &[1e-12, 1e-6, 5e-4, 0.1] {
            let direct = u.eval(1.4) - u.eval(1.4 - w);
            let d = u.difference(1.4, w);
            if w > 1e-6 {
                assert_relative_eq!(d, direct, max_relative = 1e-8);
            }
            if w < 1e-3 {
                assert_relative_eq!(d / w, u.deriv(1.4 - 0.5 * w), max_relative = 1e-5);
            }
        }
    }

    #[test]
    fn zero_outside_support() {
        let u = RadialFunction::standard_bump();
        assert_eq!(u.eval(0.5), 0.0);
        assert_eq!(u.eval(2.0), 0.0);
        assert_eq!(u.deriv(2.5), 0.0);
        assert!(RadialFunction::bump(0.0, 1.0).is_err());
    }
}

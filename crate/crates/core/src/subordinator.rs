//! Density of the one-sided α/2-stable subordinator,
//! `∫₀^∞ e^{−τλ} σ_t(τ) dτ = e^{−tλ^{α/2}}`.
//!
//! Every evaluation is reduced to `t = 1` by the scaling
//! `σ_t(τ) = t^{−2/α} σ_1(τ t^{−2/α})`. For `τ ≥ 1` the alternating power
//! series in `τ^{−α/2}` is summed; below that, and whenever the series
//! loses too many digits, a non-oscillatory integral over `(0, π)` (Kanter's
//! representation) is used instead.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};
use crate::quad::{self, DecayHint, QuadratureConfig};
use crate::specfun::{gamma, gamma_ratio, ln_gamma, sin_pi};
use crate::sum::Compensated;

/// The stable index α ∈ (0, 2); the subordinator itself has index α/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StableIndex {
    alpha: f64,
}

impl StableIndex {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 2.0 {
            Ok(Self { alpha })
        } else {
            Err(domain("stable index must lie in (0, 2)"))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The subordinator index α/2.
    fn a(&self) -> f64 {
        0.5 * self.alpha
    }
}

/// Below this the series is not used at unit time.
const SERIES_SWITCH: f64 = 1.0;
const SERIES_CAP: usize = 500;

/// `σ_t(τ)`.
pub fn density(alpha: StableIndex, t: f64, tau: f64) -> Result<f64> {
    if !(t > 0.0) || !(tau > 0.0) || !t.is_finite() || !tau.is_finite() {
        return Err(domain("subordinator density needs t > 0 and τ > 0"));
    }
    let scale = t.powf(-2.0 / alpha.alpha);
    Ok(scale * density_unit(alpha, tau * scale)?)
}

/// `σ_1(x)`.
pub fn density_unit(alpha: StableIndex, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("subordinator density needs τ > 0"));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x >= SERIES_SWITCH {
        if let Some(v) = series(alpha, x) {
            return Ok(v);
        }
    }
    kanter(alpha, x)
}

/// Alternating power series, or `None` when it does not reach full
/// precision within the term cap.
pub fn series(alpha: StableIndex, x: f64) -> Option<f64> {
    let a = alpha.a();
    let lx = x.ln();
    let mut sum = Compensated::new();
    let mut magnitude = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..=SERIES_CAP {
        let kf = k as f64;
        let s = sin_pi(kf * a);
        let (lg_num, _) = ln_gamma(kf * a + 1.0).ok()?;
        let (lg_den, _) = ln_gamma(kf + 1.0).ok()?;
        let size = (lg_num - lg_den - (1.0 + kf * a) * lx).exp();
        let term = if k % 2 == 1 { size * s } else { -size * s };
        sum.add(term);
        magnitude += term.abs();
        // Terms eventually decrease monotonically in size; stop once two in a
        // row are negligible.
        if size < 1e-17 * sum.value().abs() && last < 1e-17 * sum.value().abs() {
            let value = sum.value() / PI;
            // Reject if cancellation ate more than a few digits.
            if magnitude > 1e3 * sum.value().abs() || value < 0.0 {
                return None;
            }
            return Some(value);
        }
        last = size;
    }
    None
}

/// `ln(sin x / x)` for `x ∈ [0, π)`, accurate near zero.
fn ln_sinc(x: f64) -> f64 {
    if x < 0.1 {
        let x2 = x * x;
        -x2 * (1.0 / 6.0
            + x2 * (1.0 / 180.0 + x2 * (1.0 / 2835.0 + x2 * (1.0 / 37800.0 + x2 / 467775.0))))
    } else {
        (x.sin() / x).ln()
    }
}

/// `σ_1(x)` from the representation
/// `σ_1(x) = a/((1−a)π) · x^{−1/(1−a)} ∫₀^π A(φ) e^{−x^{−a/(1−a)} A(φ)} dφ`
/// with `A(φ) = D·exp(L(φ))`, `D = (1−a) a^{a/(1−a)}` and `L(0) = 0`.
pub fn kanter(alpha: StableIndex, x: f64) -> Result<f64> {
    let a = alpha.a();
    let b = 1.0 - a;
    let p = a / b;
    let d = b * a.powf(p);
    let c = x.powf(-p);
    let cd = c * d;
    let log_pref = (p / PI).ln() - x.ln() / b - cd;
    if log_pref < -745.0 {
        return Ok(0.0);
    }
    let integrand = |phi: f64| -> f64 {
        if phi >= PI {
            return 0.0;
        }
        let l = p * ln_sinc(a * phi) + ln_sinc(b * phi) - ln_sinc(phi) / b;
        let e = -cd * l.exp_m1();
        if e < -745.0 {
            0.0
        } else {
            d * (l + e).exp()
        }
    };
    // The integrand peaks at φ = 0 with Gaussian width ~ (c·D·a)^{−1/2}.
    let width = (1.0 / (cd * a).max(1e-300)).sqrt().min(PI);
    let mut breaks = alloc::vec![0.0];
    let mut w = width;
    while w < PI {
        breaks.push(w);
        w *= 2.0;
    }
    breaks.push(PI);
    let cfg = QuadratureConfig {
        abs_tol: 1e-300,
        rel_tol: 1e-13,
        ..QuadratureConfig::default()
    };
    let r = quad::lenient(quad::integrate_with_breaks(integrand, &breaks, &cfg))?;
    Ok(r.value * log_pref.exp())
}

/// `σ_t(τ)` from the oscillatory Laplace-inversion integral. Only usable for
/// moderate `τ t^{−2/α}`; kept as an independent cross-check.
pub fn density_oscillatory(
    alpha: StableIndex,
    t: f64,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(t > 0.0) || !(tau > 0.0) {
        return Err(domain("subordinator density needs t > 0 and τ > 0"));
    }
    let a = alpha.a();
    let scale = t.powf(-2.0 / alpha.alpha);
    let x = tau * scale;
    let (cs, sn) = ((PI * a).cos(), sin_pi(a));
    let f = |u: f64| {
        let ua = u.powf(a);
        (-x * u - ua * cs).exp() * (ua * sn).sin()
    };
    let r = quad::integrate_semi_infinite(f, 0.0, DecayHint::Exponential(x), cfg)?;
    Ok(scale * r.value / PI)
}

/// `lim_{t→0} σ_t(τ)/t = Γ(α/2+1) sin(πα/2) / (π τ^{1+α/2})`.
pub fn density_ratio_limit(alpha: f64, tau: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) || !(tau > 0.0) {
        return Err(domain("ratio limit needs α ∈ (0, 2] and τ > 0"));
    }
    let a = 0.5 * alpha;
    Ok(gamma(a + 1.0)? * sin_pi(a) / (PI * tau.powf(1.0 + a)))
}

/// The constant `D(α) = (1 − α/2)(α/2)^{α/(2−α)}` of the small-τ decay.
pub fn decay_constant(alpha: StableIndex) -> f64 {
    let a = alpha.a();
    (1.0 - a) * a.powf(a / (1.0 - a))
}

/// Both branches of the two-sided comparison for `σ_1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    /// `exp(−D τ^{−α/(2−α)}) / τ^{(2−α/2)/(2−α)}`, the shape for τ < 1.
    pub small: f64,
    /// `τ^{−1−α/2}`, the shape for τ > 1.
    pub large: f64,
}

impl Envelope {
    /// The branch that applies at `tau`.
    pub fn select(&self, tau: f64) -> f64 {
        if tau < 1.0 {
            self.small
        } else {
            self.large
        }
    }
}

pub fn envelope_check(alpha: StableIndex, tau: f64) -> Envelope {
    let al = alpha.alpha;
    let small = (-decay_constant(alpha) * tau.powf(-al / (2.0 - al))).exp()
        / tau.powf((2.0 - 0.5 * al) / (2.0 - al));
    Envelope {
        small,
        large: tau.powf(-1.0 - 0.5 * al),
    }
}

/// `∫₀^∞ t^β σ_t(τ) dt/t = Γ(β) / (Γ(αβ/2) τ^{1−αβ/2})` for β > 0.
pub fn time_power_moment(alpha: StableIndex, beta: f64, tau: f64) -> Result<f64> {
    if !(beta > 0.0) || !(tau > 0.0) {
        return Err(domain("time moment needs β > 0 and τ > 0"));
    }
    let ab = alpha.a() * beta;
    Ok(gamma_ratio(&[beta], &[ab])? * tau.powf(ab - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn closed_form_half(x: f64) -> f64 {
        x.powf(-1.5) * (-0.25 / x).exp() / (2.0 * PI.sqrt())
    }

    #[test]
    fn alpha_one_matches_closed_form_on_both_paths() {
        let al = StableIndex::new(1.0).unwrap();
        for &x in &[0.01, 0.05, 0.2, 0.7, 1.0, 1.5, 4.0, 30.0] {
            assert_relative_eq!(kanter(al, x).unwrap(), closed_form_half(x), max_relative = 1e-12);
        }
        for &x in &[1.0, 1.5, 4.0, 30.0] {
            assert_relative_eq!(series(al, x).unwrap(), closed_form_half(x), max_relative = 1e-12);
        }
    }

    #[test]
    fn series_and_integral_agree_past_the_switch() {
        for &alpha in &[0.3, 0.5, 0.9, 1.3, 1.5, 1.8] {
            let al = StableIndex::new(alpha).unwrap();
            for &x in &[1.0, 2.0, 10.0] {
                if let Some(s) = series(al, x) {
                    assert_relative_eq!(s, kanter(al, x).unwrap(), max_relative = 1e-11);
                }
            }
        }
    }

    #[test]
    fn oscillatory_integral_cross_check() {
        let cfg = QuadratureConfig::new(1e-15, 1e-11).unwrap();
        for &alpha in &[0.5, 1.0, 1.5] {
            let al = StableIndex::new(alpha).unwrap();
            for &tau in &[0.3, 0.8, 2.0] {
                let osc = density_oscillatory(al, 1.0, tau, &cfg).unwrap();
                assert_relative_eq!(osc, density(al, 1.0, tau).unwrap(), max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn ratio_limit_examples() {
        let v = density_ratio_limit(1.0, 1.0).unwrap();
        assert_relative_eq!(v, 1.0 / (2.0 * PI.sqrt()), max_relative = 1e-14);
        assert_relative_eq!(density_ratio_limit(1.0, 4.0).unwrap(), v / 8.0, max_relative = 1e-14);
        assert!(density_ratio_limit(2.0, 3.0).unwrap().abs() < 1e-16);
    }

    #[test]
    fn envelope_plug_in() {
        let al = StableIndex::new(1.0).unwrap();
        assert_relative_eq!(decay_constant(al), 0.25, max_relative = 1e-15);
        assert_relative_eq!(envelope_check(al, 10.0).large, 10f64.powf(-1.5), max_relative = 1e-15);
        let e = envelope_check(al, 0.2).small;
        assert_relative_eq!(e, 0.2f64.powf(-1.5) * (-0.25 / 0.2f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(StableIndex::new(2.0).is_err());
        let al = StableIndex::new(1.0).unwrap();
        assert!(density(al, 0.0, 1.0).is_err());
        assert!(density(al, 1.0, -1.0).is_err());
    }
}

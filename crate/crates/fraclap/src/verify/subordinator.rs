//! Checks on the density of the α/2-stable subordinator.

use fraclap_core::quad::{self, DecayHint};
use fraclap_core::subordinator::{decay_constant, density, envelope_check, StableIndex};
use fraclap_core::{QuadratureConfig, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{attempt, defect};
use crate::report::{CheckReport, Tolerance};

pub const ALPHAS: [f64; 3] = [0.5, 1.0, 1.5];
pub const TIMES: [f64; 3] = [0.5, 1.0, 2.0];
pub const LAMBDAS: [f64; 4] = [0.25, 1.0, 4.0, 16.0];

/// `∫₀^∞ f(τ) σ_t(τ) dτ` in `y = ln τ`. Below the left end σ_t is smaller
/// than `e^{−60}` of its scale; `f` must be bounded and `f(τ) σ_t(τ) τ` must
/// decay like `τ^{−α/2}` or faster.
fn against_density<F: Fn(f64) -> f64>(
    alpha: StableIndex,
    t: f64,
    f: F,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let a = 0.5 * alpha.alpha();
    let p = a / (1.0 - a);
    let ln_c = t.ln() / a;
    let y_lo = ln_c + (decay_constant(alpha) / 60.0).ln() / p;
    let y_mid = ln_c + 4.0;
    let mut failure = None;
    let mut g = |y: f64| {
        let tau = y.exp();
        match density(alpha, t, tau) {
            Ok(s) => tau * s * f(tau),
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let n = ((y_mid - y_lo) / 0.5).ceil() as usize;
    let breaks: Vec<f64> = (0..=n).map(|i| y_lo + (y_mid - y_lo) * i as f64 / n as f64).collect();
    let body = quad::integrate_with_breaks(&mut g, &breaks, cfg);
    let tail = quad::integrate_semi_infinite(&mut g, y_mid, DecayHint::Exponential(a), cfg);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(body?.value + tail?.value)
}

/// `∫ e^{−λτ} σ_t(τ) dτ = e^{−t λ^{α/2}}`.
pub fn laplace(alpha: f64, t: f64, lambda: f64, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("subordinator laplace alpha={alpha},t={t},lambda={lambda}");
    attempt(&name.clone(), || {
        let index = StableIndex::new(alpha)?;
        let lhs = against_density(index, t, |tau| (-lambda * tau).exp(), cfg)?;
        let rhs = (-t * lambda.powf(0.5 * alpha)).exp();
        Ok(CheckReport::compare(name, lhs, rhs, Tolerance::rel(1e-8)))
    })
}

/// `∫ σ_t(τ) dτ = 1`.
pub fn normalization(alpha: f64, t: f64, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("subordinator mass alpha={alpha},t={t}");
    attempt(&name.clone(), || {
        let index = StableIndex::new(alpha)?;
        let mass = against_density(index, t, |_| 1.0, cfg)?;
        Ok(defect(name, (mass - 1.0).abs(), 1e-9))
    })
}

/// `σ_t(τ) = t^{−2/α} σ_1(τ t^{−2/α})` at 32 seeded random `(t, τ)`.
///
/// The evaluator itself reduces to unit time, so this guards that reduction
/// rather than the density.
pub fn scaling(alpha: f64) -> CheckReport {
    let name = format!("subordinator scaling alpha={alpha}");
    attempt(&name.clone(), || {
        let index = StableIndex::new(alpha)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
        let mut worst = 0.0f64;
        for _ in 0..32 {
            let t = 10f64.powf(rng.gen_range(-1.0..1.0));
            let tau = 10f64.powf(rng.gen_range(-1.5..2.0));
            let c = t.powf(2.0 / alpha);
            let lhs = density(index, t, tau)?;
            let rhs = density(index, 1.0, tau / c)? / c;
            if lhs != 0.0 || rhs != 0.0 {
                worst = worst.max(((lhs - rhs) / rhs).abs());
            }
        }
        Ok(defect(name, worst, 1e-10).with_evaluations(64))
    })
}

/// `(σ_t ∗ σ_{t′})(τ) = ∫₀^τ σ_t(x) σ_{t′}(τ − x) dx`.
fn convolution_at(alpha: StableIndex, t: f64, t2: f64, tau: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let mut failure = None;
    let mut f = |x: f64| match (density(alpha, t, x), density(alpha, t2, tau - x)) {
        (Ok(a), Ok(b)) => a * b,
        (Err(e), _) | (_, Err(e)) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    };
    let breaks: Vec<f64> = (0..=16).map(|i| tau * i as f64 / 16.0).collect();
    let res = quad::integrate_with_breaks(|x| if x <= 0.0 || x >= tau { 0.0 } else { f(x) }, &breaks, cfg);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(res?.value)
}

/// `∫ (σ_t ∗ σ_{t′})(τ) e^{−τ} dτ = ∫ σ_{t+t′}(τ) e^{−τ} dτ` with the
/// convolution done by nested quadrature.
pub fn convolution(alpha: f64, t: f64, t2: f64, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("subordinator convolution alpha={alpha},t={t},t'={t2}");
    attempt(&name.clone(), || {
        let index = StableIndex::new(alpha)?;
        let inner = cfg.tightened(0.1);
        let mut failure = None;
        let mut g = |y: f64| {
            let tau = y.exp();
            match convolution_at(index, t, t2, tau, &inner) {
                Ok(c) => tau * c * (-tau).exp(),
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        };
        let a = 0.5 * alpha;
        let ln_c = (t + t2).ln() / a;
        let y_lo = ln_c + (decay_constant(index) / 60.0).ln() / (a / (1.0 - a));
        let y_hi = 60f64.ln().max(ln_c + 1.0);
        let n = ((y_hi - y_lo) / 0.5).ceil() as usize;
        let breaks: Vec<f64> = (0..=n).map(|i| y_lo + (y_hi - y_lo) * i as f64 / n as f64).collect();
        let lhs = quad::integrate_with_breaks(&mut g, &breaks, cfg);
        if let Some(e) = failure {
            return Err(e);
        }
        let rhs = against_density(index, t + t2, |tau| (-tau).exp(), cfg)?;
        Ok(CheckReport::compare(name, lhs?.value, rhs, Tolerance::rel(1e-7)))
    })
}

/// Largest corridor `max/min` of `σ_1/envelope` accepted for any α.
pub const CORRIDOR_BOUND: f64 = 50.0;

/// Spread `max/min` of `σ_1(τ)/envelope(τ)` over a log grid on
/// `[1e−3, 1e3]`, skipping points where either side underflows.
pub fn corridor_spread(alpha: f64) -> Result<f64> {
    let index = StableIndex::new(alpha)?;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..=120 {
        let tau = 10f64.powf(-3.0 + 6.0 * i as f64 / 120.0);
        let env = envelope_check(index, tau).select(tau);
        let d = density(index, 1.0, tau)?;
        if env > 1e-250 && d > 1e-250 {
            let q = d / env;
            lo = lo.min(q);
            hi = hi.max(q);
        }
    }
    Ok(hi / lo)
}

pub fn corridor(alpha: f64) -> CheckReport {
    let name = format!("subordinator corridor alpha={alpha}");
    attempt(&name.clone(), || {
        Ok(CheckReport::at_most(name, corridor_spread(alpha)?, CORRIDOR_BOUND, 0.0).with_evaluations(121))
    })
}

pub fn suite(cfg: &QuadratureConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for alpha in ALPHAS {
        for t in TIMES {
            for lambda in LAMBDAS {
                out.push(laplace(alpha, t, lambda, cfg));
            }
        }
    }
    for alpha in ALPHAS {
        for t in TIMES {
            out.push(normalization(alpha, t, cfg));
        }
    }
    out.extend(ALPHAS.iter().map(|&a| scaling(a)));
    out.extend(ALPHAS.iter().map(|&a| convolution(a, 0.5, 1.0, cfg)));
    out.extend([0.3, 0.5, 1.0, 1.5, 1.8].iter().map(|&a| corridor(a)));
    out
}

//! The ground-state representation and the α = 2 integration-by-parts step.

use fraclap_core::hardy::phi;
use fraclap_core::quad;
use fraclap_core::transforms::{i_ell_sigma, potential_integral, spectral_form};
use fraclap_core::{Channel, Error, QuadratureConfig, RadialFunction, Result};

use super::attempt;
use crate::report::{CheckReport, Tolerance};

/// 1e-4 for α < 2, where the weighted form is a singular 2-D integral, and
/// 1e-6 at α = 2.
pub fn gsr_tolerance(alpha: f64) -> Tolerance {
    Tolerance::rel(if alpha == 2.0 { 1e-6 } else { 1e-4 })
}

/// Both sides of the ground-state representation for `h = r^{−ℓ−σ}`:
/// `E[[h u]] = I_{ℓ,σ}[u] + Φ(σ) ∫ |h u|² r^{−α} r^{d−1+2ℓ} dr`.
///
/// Returns `(lhs, weighted form, Φ(σ) · potential)`. A negative weighted
/// form is an error.
pub fn gsr_sides(
    c: Channel,
    alpha: f64,
    sigma: f64,
    u: &RadialFunction,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64, f64)> {
    let weighted = i_ell_sigma(c, alpha, sigma, u, cfg)?;
    if !(weighted >= 0.0) {
        return Err(Error::Domain(format!("weighted form is negative: {weighted:e}")));
    }
    let potential = phi(c, alpha, sigma)? * potential_integral(c, alpha, sigma, u, cfg)?;
    let h_u = u.times_power(-(c.ell() as f64) - sigma);
    let lhs = spectral_form(c, alpha, &h_u)?;
    Ok((lhs, weighted, potential))
}

pub fn gsr_residual(c: Channel, alpha: f64, sigma: f64, u: &RadialFunction, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("gsr d={},ell={},alpha={alpha},sigma={sigma}", c.d(), c.ell());
    attempt(&name.clone(), || {
        let (lhs, weighted, potential) = gsr_sides(c, alpha, sigma, u, cfg)?;
        Ok(CheckReport::compare(name, lhs, weighted + potential, gsr_tolerance(alpha)).with_evaluations(3))
    })
}

/// `−ℓ`, the midpoint of `[−ℓ, (d−α)/2]`, and `(d−α)/2`.
pub fn sigma_values(c: Channel, alpha: f64) -> [f64; 3] {
    let lo = -(c.ell() as f64);
    let hi = 0.5 * (c.d() as f64 - alpha);
    [lo, 0.5 * (lo + hi), hi]
}

pub const CHANNELS: [(u32, u32); 7] = [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];
pub const ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

/// `∫ r^{d−1}[σ² r^{−2σ−2} u² − 2σ r^{−2σ−1} u u′] dr = σ(d−σ−2) ∫ r^{d−3−2σ} u² dr`.
pub fn alpha2_identity_check(d: u32, sigma: f64, u: &RadialFunction, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("alpha=2 identity d={d},sigma={sigma}");
    attempt(&name.clone(), || {
        let df = d as f64;
        let (a, b) = u.support();
        let inner = cfg.tightened(0.01);
        let lhs = quad::integrate(
            |r| {
                let (v, dv) = (u.eval(r), u.deriv(r));
                r.powf(df - 1.0)
                    * (sigma * sigma * r.powf(-2.0 * sigma - 2.0) * v * v - 2.0 * sigma * r.powf(-2.0 * sigma - 1.0) * v * dv)
            },
            a,
            b,
            &inner,
        )?
        .value;
        let rhs = sigma * (df - sigma - 2.0)
            * quad::integrate(|r| r.powf(df - 3.0 - 2.0 * sigma) * u.eval(r).powi(2), a, b, &inner)?.value;
        Ok(CheckReport::compare(name, lhs, rhs, Tolerance::rel(1e-9)).with_evaluations(2))
    })
}

pub const ALPHA2_PAIRS: [(u32, f64); 5] = [(3, 0.5), (2, -0.3), (1, 0.7), (3, -1.0), (5, 1.2)];

/// Two channels `ℓ = 0, 1` of one function in dimension `d`, each with its
/// own profile and σ: the sum of per-channel forms against the sum of
/// per-channel right-hand sides.
pub fn channel_synthesis(d: u32, alpha: f64, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("channel synthesis d={d},alpha={alpha}");
    attempt(&name.clone(), || {
        let parts = [
            (Channel::new(d, 0)?, RadialFunction::standard_bump()),
            (Channel::new(d, 1)?, RadialFunction::bump_with_polynomial(0.7, 1.9, &[1.0, 0.4])?),
        ];
        let (mut lhs, mut rhs) = (0.0, 0.0);
        for (c, u) in &parts {
            let [lo, mid, _] = sigma_values(*c, alpha);
            let sigma = 0.5 * (lo + mid);
            let (l, w, p) = gsr_sides(*c, alpha, sigma, u, cfg)?;
            lhs += l;
            rhs += w + p;
        }
        Ok(CheckReport::compare(name, lhs, rhs, Tolerance::rel(1e-4)).with_evaluations(6))
    })
}

pub fn suite(cfg: &QuadratureConfig) -> Vec<CheckReport> {
    let u = RadialFunction::standard_bump();
    let mut out = Vec::new();
    for (d, l) in CHANNELS {
        let c = Channel::new(d, l).expect("valid channel");
        for alpha in ALPHAS.into_iter().filter(|&a| c.admits(a)) {
            for sigma in sigma_values(c, alpha) {
                out.push(gsr_residual(c, alpha, sigma, &u, cfg));
            }
        }
    }
    for (d, sigma) in ALPHA2_PAIRS {
        out.push(alpha2_identity_check(d, sigma, &u, cfg));
    }
    for (d, alpha) in [(2, 1.0), (3, 1.0), (3, 1.5)] {
        out.push(channel_synthesis(d, alpha, cfg));
    }
    out
}

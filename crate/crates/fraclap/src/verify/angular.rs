//! Half-line kernels as angular projections of the d-dimensional kernels,
//! for d ≤ 3.

use std::f64::consts::PI;

use fraclap_core::heat_kernels::{subordinated_heat, SubordinatedKernel};
use fraclap_core::levy_kernel::{aconstant, levy_kernel};
use fraclap_core::quad;
use fraclap_core::specfun::legendre_p;
use fraclap_core::{Error, KernelParams, LevyKernelParams, QuadratureConfig, Result};

use super::attempt;
use crate::report::{CheckReport, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngularKernel {
    /// The heat kernel of `(−Δ)^{α/2}` at time `t`.
    Heat { alpha: f64, t: f64 },
    /// The jump kernel `A_{d,−α} |x − y|^{−d−α}`.
    Levy { alpha: f64 },
}

impl AngularKernel {
    pub fn alpha(&self) -> f64 {
        match *self {
            Self::Heat { alpha, .. } | Self::Levy { alpha } => alpha,
        }
    }
}

/// The d-dimensional kernel as a function of `ρ = |x − y|`.
pub struct KernelProfile {
    d: u32,
    kind: Profile,
}

enum Profile {
    Gauss { t: f64 },
    Subordinated(SubordinatedKernel),
    Jump { a: f64, alpha: f64 },
}

fn gauss(d: u32, t: f64, rho: f64) -> f64 {
    (4.0 * PI * t).powf(-0.5 * d as f64) * (-rho * rho / (4.0 * t)).exp()
}

impl KernelProfile {
    pub fn new(d: u32, kernel: AngularKernel) -> Result<Self> {
        let kind = match kernel {
            AngularKernel::Heat { alpha, t } if alpha == 2.0 => {
                KernelParams::new(0.0, alpha)?;
                Profile::Gauss { t }
            }
            AngularKernel::Heat { alpha, t } => {
                // The Gaussian decays like τ^{−d/2}, the rate the grid is sized
                // for at ζ = (d − 1)/2.
                let params = KernelParams::new(0.5 * (d as f64 - 1.0), alpha)?;
                Profile::Subordinated(SubordinatedKernel::new(params, t)?)
            }
            AngularKernel::Levy { alpha } => Profile::Jump {
                a: aconstant(d, alpha)?,
                alpha,
            },
        };
        Ok(Self { d, kind })
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let d = self.d;
        match &self.kind {
            Profile::Gauss { t } => gauss(d, *t, rho),
            Profile::Subordinated(k) => k.subordinate(|tau| gauss(d, tau, rho)),
            Profile::Jump { a, alpha } => a * rho.powf(-(d as f64) - alpha),
        }
    }
}

/// `(rs)^{−ℓ} ∬ Ȳ_ℓ(ω_x) Y_ℓ(ω_y) P(|rω_x − sω_y|) dω_x dω_y` reduced to at most
/// one angle:
///
/// - d = 1: `P(|r−s|) + (−1)^ℓ P(r+s)`;
/// - d = 2: `∫₀^{2π} cos(ℓθ) P(ρ(θ)) dθ`;
/// - d = 3: `2π ∫_{−1}^{1} P_ℓ(c) P(ρ(c)) dc` by the Funk–Hecke formula.
pub fn angular_integral(
    d: u32,
    ell: u32,
    profile: &KernelProfile,
    r: f64,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let l = ell as f64;
    let gap2 = (r - s) * (r - s);
    let scale = (r * s).powf(-l);
    // ρ² = (r−s)² + 2rs·q with q = 1 − cos θ, written without cancellation.
    let rho = |q: f64| (gap2 + 2.0 * r * s * q).sqrt();
    // The kernel varies on the scale q ~ (r−s)²/(2rs) near q = 0.
    let q0 = (gap2 / (2.0 * r * s)).max(1e-300);
    match d {
        1 => {
            let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
            Ok(scale * (profile.eval((r - s).abs()) + sign * profile.eval(r + s)))
        }
        2 => {
            let mut breaks = vec![0.0];
            let mut th = (0.01 * q0).sqrt();
            while th < PI {
                breaks.push(th);
                th *= 2.0;
            }
            breaks.push(PI);
            let f = |th: f64| {
                let half = (0.5 * th).sin();
                (l * th).cos() * profile.eval(rho(2.0 * half * half))
            };
            Ok(2.0 * scale * quad::integrate_with_breaks(f, &breaks, cfg)?.value)
        }
        3 => {
            let mut breaks = vec![0.0];
            let mut q = 0.01 * q0;
            while q < 2.0 {
                breaks.push(q);
                q *= 4.0;
            }
            breaks.push(2.0);
            let f = |q: f64| legendre_p(ell, 1.0 - q) * profile.eval(rho(q));
            Ok(2.0 * PI * scale * quad::integrate_with_breaks(f, &breaks, cfg)?.value)
        }
        _ => Err(Error::Domain(format!("angular projection is implemented for d <= 3, got d = {d}"))),
    }
}

/// The half-line kernel at `ζ = (d−1)/2 + ℓ` against the angular projection
/// of the d-dimensional kernel.
pub fn angular_projection(
    d: u32,
    ell: u32,
    kernel: AngularKernel,
    r: f64,
    s: f64,
    cfg: &QuadratureConfig,
) -> CheckReport {
    let name = match kernel {
        AngularKernel::Heat { alpha, t } => format!("angular heat d={d},ell={ell},alpha={alpha},t={t},r={r},s={s}"),
        AngularKernel::Levy { alpha } => format!("angular levy d={d},ell={ell},alpha={alpha},r={r},s={s}"),
    };
    attempt(&name.clone(), || {
        if d == 1 && ell > 1 {
            return Err(Error::Domain("in one dimension only ell = 0 and ell = 1 exist".into()));
        }
        let zeta = 0.5 * (d as f64 - 1.0) + ell as f64;
        let lhs = match kernel {
            AngularKernel::Heat { alpha, t } => subordinated_heat(KernelParams::new(zeta, alpha)?, t, r, s)?,
            AngularKernel::Levy { alpha } => levy_kernel(LevyKernelParams::new(zeta, alpha)?, r, s)?,
        };
        let profile = KernelProfile::new(d, kernel)?;
        let rhs = angular_integral(d, ell, &profile, r, s, &cfg.tightened(0.01))?;
        Ok(CheckReport::compare(name, lhs, rhs, Tolerance::rel(1e-5)).with_evaluations(2))
    })
}

/// `(ℓ, α, t, r, s)`; the Lévy variant ignores `t`.
pub const SAMPLES: [(u32, f64, f64, f64, f64); 6] = [
    (0, 2.0, 1.0, 0.7, 1.3),
    (1, 1.0, 1.0, 1.0, 2.0),
    (0, 0.5, 0.5, 0.4, 0.45),
    (1, 1.5, 2.0, 2.0, 0.6),
    (2, 1.0, 0.3, 1.2, 1.5),
    (2, 1.7, 1.0, 0.5, 3.0),
];

pub fn suite(cfg: &QuadratureConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for d in 1..=3u32 {
        for (l, alpha, t, r, s) in SAMPLES {
            // One dimension has only ℓ ∈ {0, 1}.
            let l = if d == 1 { l.min(1) } else { l };
            out.push(angular_projection(d, l, AngularKernel::Heat { alpha, t }, r, s, cfg));
            let alpha = if alpha == 2.0 { 1.2 } else { alpha };
            out.push(angular_projection(d, l, AngularKernel::Levy { alpha }, r, s, cfg));
        }
    }
    out
}

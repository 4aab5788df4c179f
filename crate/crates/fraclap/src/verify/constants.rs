//! Properties of the coupling curve Φ and the critical coupling κ_c.

use std::f64::consts::PI;

use fraclap_core::hardy::{kappa_c, phi, psi};
use fraclap_core::{Channel, Result};

use super::{attempt, defect};
use crate::report::{CheckReport, Tolerance};

pub const DIMS: [u32; 4] = [1, 2, 3, 5];
pub const ELLS: [u32; 3] = [0, 1, 2];
pub const ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
const GRID: usize = 100;

/// Every admissible `(channel, α)` of the constants matrix.
pub fn matrix() -> Vec<(Channel, f64)> {
    let mut out = Vec::new();
    for d in DIMS {
        for l in ELLS {
            let Ok(c) = Channel::new(d, l) else { continue };
            for a in ALPHAS {
                if c.admits(a) {
                    out.push((c, a));
                }
            }
        }
    }
    out
}

fn label(c: Channel, alpha: f64) -> String {
    format!("d={},ell={},alpha={alpha}", c.d(), c.ell())
}

/// `GRID` equispaced points of `[lo, hi]`, both ends included.
fn grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..GRID).map(move |i| lo + (hi - lo) * i as f64 / (GRID - 1) as f64)
}

fn midpoint(c: Channel, alpha: f64) -> f64 {
    0.5 * (c.d() as f64 - alpha)
}

/// `Φ(σ) = Φ(d − α − σ)` on `[−ℓ, (d−α)/2]`, relative to `1 + |Φ|`.
pub fn symmetry(c: Channel, alpha: f64) -> CheckReport {
    let name = format!("phi symmetry {}", label(c, alpha));
    attempt(&name.clone(), || {
        let d = c.d() as f64;
        let mut worst = 0.0f64;
        for s in grid(-(c.ell() as f64), midpoint(c, alpha)) {
            let a = phi(c, alpha, s)?;
            let b = phi(c, alpha, d - alpha - s)?;
            worst = worst.max((a - b).abs() / (1.0 + a.abs()));
        }
        Ok(defect(name, worst, 1e-12).with_evaluations(2 * GRID as u64))
    })
}

/// Strict increase of Φ on `[−ℓ, (d−α)/2]`; `lhs` is the smallest step.
pub fn monotonicity(c: Channel, alpha: f64) -> CheckReport {
    let name = format!("phi increasing {}", label(c, alpha));
    attempt(&name.clone(), || {
        let values = grid(-(c.ell() as f64), midpoint(c, alpha))
            .map(|s| phi(c, alpha, s))
            .collect::<Result<Vec<_>>>()?;
        let step = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        Ok(CheckReport::at_least(name, step, f64::MIN_POSITIVE, 0.0).with_evaluations(GRID as u64))
    })
}

/// `Φ(−ℓ) = 0` with no rounding allowed.
pub fn zero_at_minus_ell(c: Channel, alpha: f64) -> CheckReport {
    let name = format!("phi(-ell) = 0 {}", label(c, alpha));
    attempt(&name.clone(), || {
        let v = phi(c, alpha, -(c.ell() as f64))?;
        Ok(CheckReport::compare(name, v, 0.0, Tolerance::abs(0.0)))
    })
}

/// `Φ_{d,ℓ}(σ) = Φ_{d+2ℓ,0}(σ + ℓ)`.
pub fn reduction(c: Channel, alpha: f64) -> CheckReport {
    let name = format!("phi reduction {}", label(c, alpha));
    attempt(&name.clone(), || {
        let flat = Channel::new(c.d() + 2 * c.ell(), 0)?;
        let l = c.ell() as f64;
        let mut worst = 0.0f64;
        for s in grid(-l, midpoint(c, alpha)) {
            let a = phi(c, alpha, s)?;
            let b = phi(flat, alpha, s + l)?;
            worst = worst.max((a - b).abs() / (1.0 + a.abs()));
        }
        Ok(defect(name, worst, 1e-12).with_evaluations(2 * GRID as u64))
    })
}

/// `Φ_{d,ℓ}(σ) > Φ_{d,ℓ′}(σ)` for `ℓ > ℓ′` on `(−ℓ′, (d−α)/2]`; `lhs` is the
/// smallest gap.
pub fn channel_order(c: Channel, lower: Channel, alpha: f64) -> CheckReport {
    let name = format!("phi channel order {} over ell'={}", label(c, alpha), lower.ell());
    attempt(&name.clone(), || {
        let lo = -(lower.ell() as f64);
        let hi = midpoint(c, alpha);
        let mut gap = f64::INFINITY;
        // The left end is open: both curves may vanish there.
        for s in grid(lo, hi).skip(1) {
            gap = gap.min(phi(c, alpha, s)? - phi(lower, alpha, s)?);
        }
        Ok(CheckReport::at_least(name, gap, f64::MIN_POSITIVE, 0.0).with_evaluations(2 * GRID as u64))
    })
}

/// `Ψ_ζ(ℓ + σ) = Φ(σ)` with `ζ = (d−1)/2 + ℓ`, and `Ψ_ζ` reaches κ_c at the
/// right end of its range.
pub fn half_line_curve(c: Channel, alpha: f64) -> CheckReport {
    let name = format!("psi matches phi {}", label(c, alpha));
    attempt(&name.clone(), || {
        let l = c.ell() as f64;
        let mut worst = 0.0f64;
        for s in grid(-l, midpoint(c, alpha)) {
            let a = phi(c, alpha, s)?;
            let b = psi(c.zeta(), alpha, l + s)?;
            worst = worst.max((a - b).abs() / (1.0 + a.abs()));
        }
        let top = psi(c.zeta(), alpha, 0.5 * (c.effective_dim() - alpha))?;
        let k = kappa_c(c, alpha)?;
        worst = worst.max((top - k).abs() / (1.0 + k));
        Ok(defect(name, worst, 1e-12).with_evaluations(2 * GRID as u64 + 2))
    })
}

/// κ_c at α = 1 for `(3, 0)` and `(3, 1)`, and the α = 2 values
/// `(d − 2 + 2ℓ)²/4` exactly.
pub fn kappa_spot_values() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (d, l, want) in [(3, 0, 2.0 / PI), (3, 1, PI / 2.0)] {
        let name = format!("kappa_c d={d},ell={l},alpha=1");
        out.push(attempt(&name.clone(), || {
            Ok(CheckReport::compare(name, kappa_c(Channel::new(d, l)?, 1.0)?, want, Tolerance::rel(1e-12)))
        }));
    }
    for (c, a) in matrix().into_iter().filter(|&(_, a)| a == 2.0) {
        let name = format!("kappa_c {}", label(c, a));
        out.push(attempt(&name.clone(), || {
            let n = c.d() as f64 - 2.0 + 2.0 * c.ell() as f64;
            Ok(CheckReport::compare(name, kappa_c(c, a)?, n * n / 4.0, Tolerance::abs(0.0)))
        }));
    }
    out
}

pub fn suite() -> Vec<CheckReport> {
    let cells = matrix();
    let mut out = Vec::new();
    for &(c, a) in &cells {
        out.push(symmetry(c, a));
        out.push(monotonicity(c, a));
        out.push(zero_at_minus_ell(c, a));
        out.push(reduction(c, a));
        out.push(half_line_curve(c, a));
        for &(lower, b) in &cells {
            if b == a && lower.d() == c.d() && lower.ell() < c.ell() {
                out.push(channel_order(c, lower, a));
            }
        }
    }
    out.extend(kappa_spot_values());
    out
}

//! Bessel heat kernels on the half-line with speed measure `r^{2ζ} dr`, and
//! their subordinated (fractional) versions.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};
use crate::quad::{self, DecayHint, QuadratureConfig};
use crate::specfun::{bessel_i_scaled, bessel_j};
use crate::subordinator::{self, StableIndex};

/// One angular momentum channel: dimension `d` and degree `ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Channel {
    d: u32,
    ell: u32,
}

impl Channel {
    pub fn new(d: u32, ell: u32) -> Result<Self> {
        if d == 0 {
            return Err(domain("dimension must be positive"));
        }
        if d == 1 && ell > 1 {
            return Err(domain("in one dimension only ell = 0 and ell = 1 exist"));
        }
        Ok(Self { d, ell })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Bessel order parameter `(d − 1)/2 + ell`.
    pub fn zeta(&self) -> f64 {
        0.5 * (self.d as f64 - 1.0) + self.ell as f64
    }

    /// `d + 2 ell`, the effective dimension of the channel.
    pub fn effective_dim(&self) -> f64 {
        self.d as f64 + 2.0 * self.ell as f64
    }

    /// Whether `alpha ∈ (0, 2] ∩ (0, d + 2 ell)`.
    pub fn admits(&self, alpha: f64) -> bool {
        alpha > 0.0 && alpha <= 2.0 && alpha < self.effective_dim()
    }

    /// Power of `r` in the radial measure, `d − 1 + 2 ell = 2ζ`.
    pub fn measure_power(&self) -> f64 {
        2.0 * self.zeta()
    }
}

/// Selects a kernel family: order `zeta > −1/2` and stability `alpha ∈ (0, 2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams {
    pub zeta: f64,
    pub alpha: f64,
}

impl KernelParams {
    pub fn new(zeta: f64, alpha: f64) -> Result<Self> {
        let p = Self { zeta, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn for_channel(channel: Channel, alpha: f64) -> Result<Self> {
        Self::new(channel.zeta(), alpha)
    }

    fn validate(&self) -> Result<()> {
        if !(self.zeta > -0.5) || !self.zeta.is_finite() {
            return Err(domain("zeta must exceed -1/2"));
        }
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(domain("alpha must lie in (0, 2]"));
        }
        Ok(())
    }
}

fn check_positive(t: f64, r: f64, s: f64) -> Result<()> {
    if t > 0.0 && r > 0.0 && s > 0.0 && t.is_finite() && r.is_finite() && s.is_finite() {
        Ok(())
    } else {
        Err(domain("kernel arguments t, r, s must be positive and finite"))
    }
}

/// The Bessel heat kernel
/// `(rs)^{1/2−ζ}/(2t) · e^{−(r−s)²/(4t)} · e^{−z} I_{ζ−1/2}(z)`, `z = rs/(2t)`.
pub fn bessel_heat(zeta: f64, t: f64, r: f64, s: f64) -> Result<f64> {
    if !(zeta > -0.5) {
        return Err(domain("zeta must exceed -1/2"));
    }
    check_positive(t, r, s)?;
    let z = r * s / (2.0 * t);
    let gauss = (-(r - s) * (r - s) / (4.0 * t)).exp();
    if gauss == 0.0 {
        return Ok(0.0);
    }
    let scaled = bessel_i_scaled(zeta - 0.5, z)?;
    Ok((r * s).powf(0.5 - zeta) / (2.0 * t) * gauss * scaled)
}

/// The α = 1 kernel for ζ = 0: the 1-d Poisson kernel folded onto the half-line.
pub fn poisson_zeta0(t: f64, r: f64, s: f64) -> Result<f64> {
    check_positive(t, r, s)?;
    let t2 = t * t;
    Ok(t / PI * (1.0 / (t2 + (r - s) * (r - s)) + 1.0 / (t2 + (r + s) * (r + s))))
}

/// The α = 1 kernel for ζ = 1: the 3-d Poisson kernel averaged over spheres.
pub fn poisson_zeta1(t: f64, r: f64, s: f64) -> Result<f64> {
    check_positive(t, r, s)?;
    let (r2, s2) = (r * r, s * s);
    Ok(4.0 / PI * t / ((r2 - s2).powi(2) + t * t * (t * t + 2.0 * r2 + 2.0 * s2)))
}

/// Accuracy used when callers do not pass a configuration.
pub fn kernel_config() -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-300,
        rel_tol: 1e-12,
        max_subdivisions: 4000,
        de_levels: 10,
    }
}

/// The subordinated kernel `∫₀^∞ p^{(2)}(τ, r, s) σ_t(τ) dτ`; α = 2 is the
/// Bessel kernel itself.
pub fn subordinated_heat(params: KernelParams, t: f64, r: f64, s: f64) -> Result<f64> {
    subordinated_heat_with(params, t, r, s, &kernel_config())
}

pub fn subordinated_heat_with(
    params: KernelParams,
    t: f64,
    r: f64,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    params.validate()?;
    check_positive(t, r, s)?;
    if params.alpha == 2.0 {
        return bessel_heat(params.zeta, t, r, s);
    }
    let index = StableIndex::new(params.alpha)?;
    let zeta = params.zeta;
    let integrand = |tau: f64| -> f64 {
        match (bessel_heat(zeta, tau, r, s), subordinator::density(index, t, tau)) {
            (Ok(p), Ok(q)) => p * q,
            _ => f64::NAN,
        }
    };
    // The Gaussian factor switches on near (r−s)²/4, the subordinator peaks
    // near t^{2/α}, and the Bessel factor changes regime at rs/2.
    let marks = [
        0.25 * (r - s) * (r - s),
        t.powf(2.0 / params.alpha),
        0.5 * r * s,
    ];
    let top = 4.0 * marks.iter().cloned().fold(0.0, f64::max);
    let low = marks
        .iter()
        .cloned()
        .filter(|&m| m > 0.0)
        .fold(f64::INFINITY, f64::min)
        / 64.0;
    let mut breaks: Vec<f64> = Vec::with_capacity(32);
    breaks.push(0.0);
    let mut x = low;
    while x < top {
        breaks.push(x);
        x *= 4.0;
    }
    breaks.extend(marks.iter().cloned().filter(|&m| m > 0.0));
    breaks.push(top);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    let body = quad::integrate_with_breaks(integrand, &breaks, cfg)?;
    let tail = quad::integrate_semi_infinite(
        integrand,
        top,
        DecayHint::Power(-(zeta + 1.5 + 0.5 * params.alpha)),
        &QuadratureConfig {
            abs_tol: cfg.abs_tol.max(cfg.rel_tol * body.value.abs() * 0.1),
            ..*cfg
        },
    )?;
    Ok(body.value + tail.value)
}

/// The subordinated kernel at one fixed `t`, with the subordination integral
/// discretized once in `ln τ` and reused for every `(r, s)`.
///
/// Arguments above [`SubordinatedKernel::REACH`] fall back to the adaptive
/// [`subordinated_heat`].
#[derive(Clone, Debug)]
pub struct SubordinatedKernel {
    params: KernelParams,
    t: f64,
    tau: Vec<f64>,
    /// Quadrature weight times `τ σ_t(τ)`.
    weight: Vec<f64>,
}

impl SubordinatedKernel {
    pub const REACH: f64 = 100.0;

    pub fn new(params: KernelParams, t: f64) -> Result<Self> {
        params.validate()?;
        check_positive(t, 1.0, 1.0)?;
        let mut out = Self {
            params,
            t,
            tau: Vec::new(),
            weight: Vec::new(),
        };
        if params.alpha == 2.0 {
            return Ok(out);
        }
        let index = StableIndex::new(params.alpha)?;
        let a = 0.5 * params.alpha;
        let p = a / (1.0 - a);
        let ln_c = (2.0 / params.alpha) * t.ln();
        // σ_1(x) < e^{−45} once D x^{−p} > 45.
        let d = subordinator::decay_constant(index);
        let y_lo = ln_c + (d / 45.0).ln() / p;
        // Past the larger of the two scales the integrand decays like
        // τ^{−ζ−1/2−α/2}.
        let y_top = ln_c.max(2.0 * Self::REACH.ln()) + 32.0 / (params.zeta + 0.5 + a);
        let steep = (0.5 / p).min(0.25);
        let (x, w) = quad::gauss_legendre(16);
        let mut y = y_lo;
        while y < y_top {
            let h = if y < ln_c + 2.0 { steep } else { 0.25 };
            let (mid, half) = (y + 0.5 * h, 0.5 * h);
            for i in 0..16 {
                let tau = (mid + half * x[i]).exp();
                let sigma = subordinator::density(index, t, tau)?;
                if sigma > 0.0 {
                    out.tau.push(tau);
                    out.weight.push(half * w[i] * tau * sigma);
                }
            }
            y += h;
        }
        Ok(out)
    }

    pub fn params(&self) -> KernelParams {
        self.params
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `∫₀^∞ f(τ) σ_t(τ) dτ` on the stored grid; `f(t)` when α = 2.
    ///
    /// The grid is sized for integrands bounded near τ = 0 that decay at
    /// least like `τ^{−ζ−1/2}`.
    pub fn subordinate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        if self.params.alpha == 2.0 {
            return f(self.t);
        }
        self.tau.iter().zip(&self.weight).map(|(&tau, &w)| w * f(tau)).sum()
    }

    pub fn eval(&self, r: f64, s: f64) -> Result<f64> {
        check_positive(self.t, r, s)?;
        if self.params.alpha == 2.0 {
            return bessel_heat(self.params.zeta, self.t, r, s);
        }
        if r > Self::REACH || s > Self::REACH {
            return subordinated_heat(self.params, self.t, r, s);
        }
        let mut acc = 0.0;
        for (&tau, &w) in self.tau.iter().zip(&self.weight) {
            acc += w * bessel_heat(self.params.zeta, tau, r, s)?;
        }
        Ok(acc)
    }
}

/// The kernel from its spectral representation
/// `(rs)^{−ζ} ∫₀^∞ e^{−tk^α} √(kr) J_{ζ−1/2}(kr) √(ks) J_{ζ−1/2}(ks) dk`.
///
/// The integral is cut where `e^{−tk^α} < 1e−17` and split into panels
/// shorter than half an oscillation period.
pub fn subordinated_heat_spectral(
    params: KernelParams,
    t: f64,
    r: f64,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    params.validate()?;
    check_positive(t, r, s)?;
    let nu = params.zeta - 0.5;
    let alpha = params.alpha;
    let cut = (39.0 / t).powf(1.0 / alpha);
    let width = (PI / (r + s)).min(cut / 8.0);
    let panels = (cut / width).ceil();
    if panels > 2.0e5 {
        return Err(domain("spectral kernel path needs too many panels at this t"));
    }
    let mut breaks: Vec<f64> = Vec::with_capacity(panels as usize + 2);
    // Resolve the small-k behaviour k^{2ζ+1} separately.
    breaks.push(0.0);
    let mut k = width;
    while k < cut {
        breaks.push(k);
        k += width;
    }
    breaks.push(cut);
    let integrand = |k: f64| -> f64 {
        let damp = (-t * k.powf(alpha)).exp();
        if damp == 0.0 {
            return 0.0;
        }
        match (bessel_j(nu, k * r), bessel_j(nu, k * s)) {
            (Ok(jr), Ok(js)) => damp * k * (r * s).sqrt() * jr * js,
            _ => f64::NAN,
        }
    };
    let res = quad::integrate_with_breaks(integrand, &breaks, cfg)?;
    Ok((r * s).powf(-params.zeta) * res.value)
}

/// `∫₀^∞ p(t, r, s) s^{2ζ} ds`, which equals one.
pub fn total_mass(params: KernelParams, t: f64, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    params.validate()?;
    check_positive(t, r, r)?;
    let kernel = SubordinatedKernel::new(params, t)?;
    let zeta = params.zeta;
    let integrand = |s: f64| -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        match kernel.eval(r, s) {
            Ok(p) => p * s.powf(2.0 * zeta),
            Err(_) => f64::NAN,
        }
    };
    let spread = if params.alpha == 2.0 {
        2.0 * t.sqrt()
    } else {
        t.powf(1.0 / params.alpha)
    };
    let mut breaks = alloc::vec![0.0];
    for k in [-4.0, -1.0, 0.0, 1.0, 4.0] {
        let x = r + k * spread;
        if x > 0.0 {
            breaks.push(x);
        }
    }
    let top = r + 16.0 * spread.max(r);
    breaks.push(top);
    breaks.sort_by(f64::total_cmp);
    let inner = cfg.tightened(0.1);
    let body = quad::integrate_with_breaks(integrand, &breaks, &inner)?;
    let hint = if params.alpha == 2.0 {
        DecayHint::Gaussian(spread)
    } else {
        DecayHint::Power(-1.0 - params.alpha)
    };
    let tail = quad::integrate_semi_infinite(integrand, top, hint, &inner)?;
    Ok(body.value + tail.value)
}

/// `|∫₀^∞ p(t, r, z) p(t′, z, s) z^{2ζ} dz − p(t + t′, r, s)| / p(t + t′, r, s)`.
pub fn chapman_kolmogorov_residual(
    params: KernelParams,
    t: f64,
    t2: f64,
    r: f64,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    params.validate()?;
    check_positive(t, r, s)?;
    check_positive(t2, r, s)?;
    let kcfg = kernel_config();
    let zeta = params.zeta;
    let first = SubordinatedKernel::new(params, t)?;
    let second = SubordinatedKernel::new(params, t2)?;
    let integrand = |z: f64| -> f64 {
        if z <= 0.0 {
            return 0.0;
        }
        let a = first.eval(r, z);
        let b = second.eval(z, s);
        match (a, b) {
            (Ok(a), Ok(b)) => a * b * z.powf(2.0 * zeta),
            _ => f64::NAN,
        }
    };
    let spread = if params.alpha == 2.0 {
        2.0 * t.max(t2).sqrt()
    } else {
        t.max(t2).powf(1.0 / params.alpha)
    };
    let (lo, hi) = (r.min(s), r.max(s));
    let mut breaks = alloc::vec![0.0, 0.5 * lo, lo];
    if hi > lo {
        breaks.push(hi);
    }
    let top = hi + 8.0 * spread.max(0.25 * hi);
    breaks.push(top);
    let inner = cfg.tightened(0.1);
    let body = quad::integrate_with_breaks(integrand, &breaks, &inner)?;
    let hint = if params.alpha == 2.0 {
        DecayHint::Gaussian(spread)
    } else {
        DecayHint::Power(-(2.0 * zeta + 2.0 + 2.0 * params.alpha))
    };
    let tail = quad::integrate_semi_infinite(
        integrand,
        top,
        hint,
        &QuadratureConfig {
            abs_tol: inner.abs_tol.max(inner.rel_tol * body.value.abs()),
            ..inner
        },
    )?;
    let lhs = body.value + tail.value;
    let rhs = subordinated_heat_with(params, t + t2, r, s, &kcfg)?;
    Ok((lhs - rhs).abs() / rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn zeta_one(t: f64, r: f64, s: f64) -> f64 {
        ((-(r - s) * (r - s) / (4.0 * t)).exp() - (-(r + s) * (r + s) / (4.0 * t)).exp())
            / (r * s * (4.0 * PI * t).sqrt())
    }

    #[test]
    fn bessel_heat_order_one_closed_form() {
        for &(t, r, s) in &[(1.0, 0.7, 1.3), (0.01, 2.0, 2.05), (5.0, 0.1, 3.0), (1e-4, 1.0, 1.0)] {
            assert_relative_eq!(bessel_heat(1.0, t, r, s).unwrap(), zeta_one(t, r, s), max_relative = 1e-13);
        }
    }

    #[test]
    fn bessel_heat_scaling() {
        for &zeta in &[0.0, 0.5, 2.5] {
            let (t, r, s) = (0.37, 0.9, 1.6);
            let lhs = bessel_heat(zeta, t, r, s).unwrap();
            let rhs = t.powf(-(2.0 * zeta + 1.0) / 2.0)
                * bessel_heat(zeta, 1.0, r / t.sqrt(), s / t.sqrt()).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
        }
    }

    #[test]
    fn alpha_one_zeta_one_closed_form() {
        // For α = 1 and ζ = 1 the kernel is the restriction of the 3-d Poisson
        // kernel to radial functions.
        let p = KernelParams::new(1.0, 1.0).unwrap();
        for &(t, r, s) in &[(1.0, 0.7, 1.3), (0.3, 1.0, 2.0), (2.0, 0.5, 0.5)] {
            let want = poisson_zeta1(t, r, s).unwrap();
            assert_relative_eq!(subordinated_heat(p, t, r, s).unwrap(), want, max_relative = 1e-10);
        }
        let p = KernelParams::new(0.0, 1.0).unwrap();
        let (t, r, s) = (0.8, 1.1, 0.4);
        let q = r * r + s * s + t * t;
        let want = 2.0 * t / (PI * q * (1.0 - 4.0 * r * r * s * s / (q * q)));
        assert_relative_eq!(poisson_zeta0(t, r, s).unwrap(), want, max_relative = 1e-14);
        assert_relative_eq!(subordinated_heat(p, t, r, s).unwrap(), want, max_relative = 1e-10);
    }

    #[test]
    fn grid_kernel_matches_adaptive() {
        for &(zeta, alpha, t) in &[(0.0, 0.5, 1.0), (1.0, 1.5, 0.1), (2.5, 0.2, 10.0), (0.5, 1.9, 1e-3)] {
            let p = KernelParams::new(zeta, alpha).unwrap();
            let k = SubordinatedKernel::new(p, t).unwrap();
            for &(r, s) in &[(0.5, 0.5), (1.0, 1.3), (0.1, 3.0), (5.0, 40.0)] {
                assert_relative_eq!(k.eval(r, s).unwrap(), subordinated_heat(p, t, r, s).unwrap(), max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn mass_is_one() {
        let cfg = QuadratureConfig::new(1e-12, 1e-8).unwrap();
        for &(zeta, alpha) in &[(0.0, 2.0), (1.0, 1.0), (0.5, 1.5)] {
            let p = KernelParams::new(zeta, alpha).unwrap();
            assert!((total_mass(p, 1.0, 0.7, &cfg).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn spectral_path_matches() {
        let cfg = QuadratureConfig::new(1e-15, 1e-11).unwrap();
        let p = KernelParams::new(1.0, 2.0).unwrap();
        let v = subordinated_heat_spectral(p, 1.0, 0.7, 1.3, &cfg).unwrap();
        assert_relative_eq!(v, zeta_one(1.0, 0.7, 1.3), max_relative = 1e-9);
        let p = KernelParams::new(1.0, 1.0).unwrap();
        let v = subordinated_heat_spectral(p, 1.0, 0.7, 1.3, &cfg).unwrap();
        assert_relative_eq!(v, subordinated_heat(p, 1.0, 0.7, 1.3).unwrap(), max_relative = 1e-8);
    }

    #[test]
    fn channel_rules() {
        assert!(Channel::new(1, 2).is_err());
        let c = Channel::new(1, 0).unwrap();
        assert!(c.admits(0.5) && !c.admits(1.0));
        let c = Channel::new(2, 0).unwrap();
        assert!(c.admits(1.5) && !c.admits(2.0));
        assert!(Channel::new(3, 0).unwrap().admits(2.0));
        assert_eq!(Channel::new(3, 2).unwrap().zeta(), 3.0);
    }
}

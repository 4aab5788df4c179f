//! The channel Fourier–Bessel transform and the quadratic forms built on it:
//! the spectral form, the jump-kernel forms, the Hardy potential term, and
//! the heat-semigroup approximation of the jump form.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::heat_kernels::{self, Channel, KernelParams};
use crate::levy_kernel::{LevyKernel, LevyKernelParams};
use crate::quad::{self, lenient, DecayHint, QuadratureConfig, Rect};
use crate::radial::RadialFunction;
use crate::specfun::bessel_j;
use crate::sum::Compensated;

/// `(Uu)(r) = r^{(d−1+2ℓ)/2} u(r)`, the isometry onto `L²(dr)`.
pub fn u_map(channel: Channel, u: &RadialFunction) -> RadialFunction {
    u.times_power(channel.zeta())
}

/// `i^{−ℓ}`.
fn phase(ell: u32) -> Complex64 {
    match ell % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Bessel order `(d−2)/2 + ℓ` of the channel transform.
fn order(channel: Channel) -> f64 {
    channel.zeta() - 0.5
}

const GL_POINTS: usize = 16;
/// Geometric refinements of the end panels of a radial grid.
const END_LEVELS: u32 = 8;

/// Composite Gauss–Legendre rule on a support interval, fine enough for
/// `√(kr) J(kr) v(r)` up to a given `k`.
struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialGrid {
    fn new(a: f64, b: f64, k_lim: f64) -> Self {
        // One oscillation per 16-point panel is integrated to far below
        // double precision.
        let n = ((b - a) * k_lim / (2.0 * PI)).ceil().max(24.0) as usize;
        let len = (b - a) / n as f64;
        let mut breaks = Vec::with_capacity(n + 2 * END_LEVELS as usize + 1);
        breaks.push(a);
        for j in (1..=END_LEVELS).rev() {
            breaks.push(a + len * 0.5f64.powi(j as i32));
        }
        for i in 1..n {
            breaks.push(a + len * i as f64);
        }
        for j in 1..=END_LEVELS {
            breaks.push(b - len * 0.5f64.powi(j as i32));
        }
        breaks.push(b);
        let (x, w) = quad::gauss_legendre(GL_POINTS);
        let mut nodes = Vec::with_capacity(breaks.len() * GL_POINTS);
        let mut weights = Vec::with_capacity(breaks.len() * GL_POINTS);
        for p in breaks.windows(2) {
            let (c, h) = (0.5 * (p[0] + p[1]), 0.5 * (p[1] - p[0]));
            for i in 0..GL_POINTS {
                nodes.push(c + h * x[i]);
                weights.push(h * w[i]);
            }
        }
        Self { nodes, weights }
    }

    fn k_limit(a: f64, b: f64, grid_len: usize) -> f64 {
        let n = grid_len / GL_POINTS - 2 * END_LEVELS as usize;
        2.0 * PI * n as f64 / (b - a)
    }
}

/// `∫ √(kr) J_μ(kr) v(r) dr` on a grid with precomputed `v` values.
fn hankel_sum(mu: f64, grid: &RadialGrid, values: &[f64], k: f64) -> Result<f64> {
    let mut acc = Compensated::new();
    for ((&r, &w), &v) in grid.nodes.iter().zip(&grid.weights).zip(values) {
        if v != 0.0 {
            acc.add(w * (k * r).sqrt() * bessel_j(mu, k * r)? * v);
        }
    }
    Ok(acc.value())
}

/// `(F_ℓ v)(k) = i^{−ℓ} ∫₀^∞ √(kr) J_{(d−2)/2+ℓ}(kr) v(r) dr`.
pub fn fourier_bessel(channel: Channel, v: &RadialFunction, k: f64) -> Result<Complex64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(domain("transform variable must be positive"));
    }
    let (a, b) = v.support();
    let grid = RadialGrid::new(a, b, k);
    let values: Vec<f64> = grid.nodes.iter().map(|&r| v.eval(r)).collect();
    Ok(phase(channel.ell()) * hankel_sum(order(channel), &grid, &values, k)?)
}

/// `|F_ℓ v|²` sampled on a quadrature grid in `k`, reusable for every
/// multiplier `k^α`.
///
/// Below `k = min(1, π/b)` the grid is dyadic; above, Gauss–Legendre panels
/// of width `2π/b` continue until the last eight panels carry less than
/// `1e−16` of the accumulated `∫ k²|F|²`.
#[derive(Clone, Debug)]
pub struct SpectralDensity {
    channel: Channel,
    k: Vec<f64>,
    weights: Vec<f64>,
    /// Real amplitude `i^{ℓ} F_ℓ v(k)`.
    amplitude: Vec<f64>,
    k_max: f64,
    tail: f64,
    input_norm_sq: f64,
}

const K_PANEL_CAP: usize = 200_000;

impl SpectralDensity {
    /// Density of the transform of `v` itself (already in `L²(dr)`).
    pub fn new(channel: Channel, v: &RadialFunction) -> Result<Self> {
        let (a, b) = v.support();
        let mu = order(channel);
        let mut k_lim = 64.0 / (b - a);
        let mut grid = RadialGrid::new(a, b, k_lim);
        let mut values: Vec<f64> = grid.nodes.iter().map(|&r| v.eval(r)).collect();
        let input_norm_sq = {
            let fine = RadialGrid::new(a, b, 256.0 / (b - a));
            let mut acc = Compensated::new();
            for (&r, &w) in fine.nodes.iter().zip(&fine.weights) {
                let x = v.eval(r);
                acc.add(w * x * x);
            }
            acc.value()
        };
        let (gx, gw) = quad::gauss_legendre(GL_POINTS);
        let mut out = Self {
            channel,
            k: Vec::new(),
            weights: Vec::new(),
            amplitude: Vec::new(),
            k_max: 0.0,
            tail: 0.0,
            input_norm_sq,
        };
        let k1 = (PI / b).min(1.0);
        let mut panels: Vec<(f64, f64)> = Vec::new();
        panels.push((0.0, k1 * 0.5f64.powi(30)));
        for j in (0..30).rev() {
            panels.push((k1 * 0.5f64.powi(j + 1), k1 * 0.5f64.powi(j)));
        }
        let step = 2.0 * PI / b;
        let mut total = 0.0;
        let mut recent: Vec<f64> = Vec::new();
        let mut lo = k1;
        let mut index = 0usize;
        loop {
            let (p0, p1) = if index < panels.len() {
                panels[index]
            } else {
                let p = (lo, lo + step);
                lo += step;
                p
            };
            index += 1;
            if index > K_PANEL_CAP {
                return Err(Error::Convergence("spectral density did not decay"));
            }
            if p1 > k_lim {
                while p1 > k_lim {
                    k_lim *= 2.0;
                }
                grid = RadialGrid::new(a, b, k_lim);
                debug_assert!(RadialGrid::k_limit(a, b, grid.nodes.len()) >= p1 * 0.99);
                values = grid.nodes.iter().map(|&r| v.eval(r)).collect();
            }
            let (c, h) = (0.5 * (p0 + p1), 0.5 * (p1 - p0));
            let mut part = 0.0;
            for i in 0..GL_POINTS {
                let k = c + h * gx[i];
                let w = h * gw[i];
                let amp = hankel_sum(mu, &grid, &values, k)?;
                out.k.push(k);
                out.weights.push(w);
                out.amplitude.push(amp);
                part += w * k * k * amp * amp;
            }
            total += part;
            if index > panels.len() {
                recent.push(part);
                let n = recent.len();
                if n >= 16 {
                    let last: f64 = recent[n - 8..].iter().sum();
                    if last <= 1e-16 * total {
                        out.tail = last;
                        out.k_max = p1;
                        return Ok(out);
                    }
                }
            }
        }
    }

    /// Density of `F_ℓ(Uu)` for a radial profile `u`.
    pub fn of_profile(channel: Channel, u: &RadialFunction) -> Result<Self> {
        Self::new(channel, &u_map(channel, u))
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    /// `∫ k^α |F_ℓ v(k)|² dk`.
    pub fn form(&self, alpha: f64) -> f64 {
        self.multiplier_form(|k| k.powf(alpha))
    }

    /// `∫ m(k) |F_ℓ v(k)|² dk` for a multiplier growing at most like `k²`.
    pub fn multiplier_form<M: Fn(f64) -> f64>(&self, m: M) -> f64 {
        let mut acc = Compensated::new();
        for ((&k, &w), &a) in self.k.iter().zip(&self.weights).zip(&self.amplitude) {
            acc.add(w * m(k) * a * a);
        }
        acc.value()
    }

    /// `∫ |F_ℓ v(k)|² dk`.
    pub fn norm_sq(&self) -> f64 {
        self.form(0.0)
    }

    /// `∫ |v|² dr`, computed on the radial side.
    pub fn input_norm_sq(&self) -> f64 {
        self.input_norm_sq
    }

    /// `|‖F_ℓ v‖² − ‖v‖²|`.
    pub fn parseval_defect(&self) -> f64 {
        (self.norm_sq() - self.input_norm_sq).abs()
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    /// Contribution of the last eight panels to `∫ k²|F|²`.
    pub fn tail_estimate(&self) -> f64 {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// `(F_ℓ v)(k)` at the `i`-th grid node.
    pub fn sample(&self, i: usize) -> (f64, Complex64) {
        (self.k[i], phase(self.channel.ell()) * self.amplitude[i])
    }

    /// `F_ℓ` applied to the sampled transform, evaluated at `r`.
    pub fn reapply(&self, r: f64) -> Result<Complex64> {
        let mu = order(self.channel);
        let mut acc = Compensated::new();
        for ((&k, &w), &a) in self.k.iter().zip(&self.weights).zip(&self.amplitude) {
            acc.add(w * (k * r).sqrt() * bessel_j(mu, k * r)? * a);
        }
        let p = phase(self.channel.ell());
        Ok(p * p * acc.value())
    }
}

/// `∫₀^∞ k^α |F_ℓ(Uu)(k)|² dk`.
pub fn spectral_form(channel: Channel, alpha: f64, u: &RadialFunction) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain("alpha must lie in (0, 2]"));
    }
    Ok(SpectralDensity::of_profile(channel, u)?.form(alpha))
}

/// `∫ |(Uu)′|² + ((d−1)(d−3) + 4ℓ(ℓ+d−2))/(4r²) |Uu|² dr`, the α = 2 form
/// written as a half-line Schrödinger form.
pub fn alpha2_radial_form(channel: Channel, u: &RadialFunction, cfg: &QuadratureConfig) -> Result<f64> {
    let v = u_map(channel, u);
    let d = channel.d() as f64;
    let l = channel.ell() as f64;
    let c = 0.25 * ((d - 1.0) * (d - 3.0) + 4.0 * l * (l + d - 2.0));
    let (a, b) = v.support();
    let f = |r: f64| {
        let (x, dx) = (v.eval(r), v.deriv(r));
        dx * dx + c * x * x / (r * r)
    };
    Ok(quad::integrate(f, a, b, cfg)?.value)
}

/// `½ ∬ |u(r) − u(s)|² ν_ζ(r, s) (rs)^p dr ds` over `(0, ∞)²`.
///
/// The square `supp u × supp u` goes to the diagonal-aware 2-D driver. The
/// region where only one argument lies in the support reduces to
/// `∫ u(r)² r^p T(r) dr` with `T(r) = ∫_{s ∉ supp u} s^p ν_ζ(r, s) ds`,
/// integrated in `ln|r − s|`.
pub fn weighted_jump_form(
    kernel: &LevyKernel,
    p: f64,
    u: &RadialFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let LevyKernelParams { zeta, alpha } = kernel.params();
    if !(p - 2.0 * zeta < alpha) {
        return Err(domain("weight grows too fast for the jump kernel tail"));
    }
    let (a, b) = u.support();
    let inner_cfg = cfg.tightened(0.01);
    let square = quad::integrate_singular_2d(
        |r, s, w| {
            // Below this gap the strip contributes O(|w|^{2−α}) and du²·ν
            // would be 0·∞ in floating point.
            if w.abs() < 1e-100 * (b - a) {
                return 0.0;
            }
            let du = u.difference(r, w);
            if du == 0.0 {
                return 0.0;
            }
            match kernel.eval_with_gap(r, w) {
                Ok(nu) => du * du * nu * (r * s).powf(p),
                Err(_) => f64::NAN,
            }
        },
        Rect::square(a, b),
        1.0 - alpha,
        true,
        &inner_cfg,
    )?;
    let tail_rate = 2.0 * zeta + alpha - p;
    let outside = |r: f64| -> Result<f64> {
        // s in (0, a/2): smooth kernel, possible s^p singularity at 0.
        let near_zero = lenient(quad::integrate_singular(
            |s| match kernel.eval(r, s) {
                Ok(nu) => s.powf(p) * nu,
                Err(_) => f64::NAN,
            },
            0.0,
            0.5 * a,
            &inner_cfg,
        ))?;
        // s in (a/2, a), y = ln(r − s).
        let below = lenient(quad::integrate(
            |y: f64| {
                let g = y.exp();
                match kernel.eval_with_gap(r, g) {
                    Ok(nu) => (r - g).powf(p) * nu * g,
                    Err(_) => f64::NAN,
                }
            },
            (r - a).ln(),
            (r - 0.5 * a).ln(),
            &inner_cfg,
        ))?;
        // s in (b, ∞), y = ln(s − r).
        let y0 = (b - r).ln();
        let y1 = y0.max(b.ln()) + 3.0;
        let above_f = |y: f64| {
            let g = y.exp();
            match kernel.eval_with_gap(r, -g) {
                Ok(nu) => (r + g).powf(p) * nu * g,
                Err(_) => f64::NAN,
            }
        };
        let above = lenient(quad::integrate(above_f, y0, y1, &inner_cfg))?;
        let far = lenient(quad::integrate_semi_infinite(
            above_f,
            y1,
            DecayHint::Exponential(tail_rate),
            &inner_cfg,
        ))?;
        Ok(near_zero.value + below.value + above.value + far.value)
    };
    let mut failure = None;
    let tail = quad::integrate(
        |r: f64| {
            let x = u.eval(r);
            if x == 0.0 || r <= a || r >= b {
                return 0.0;
            }
            match outside(r) {
                Ok(t) => x * x * r.powf(p) * t,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        a,
        b,
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(0.5 * square.value + tail?.value)
}

/// `E_ζ[u] = ½ ∬ r^{2ζ} s^{2ζ} |u(r) − u(s)|² ν_ζ(r, s) dr ds`.
pub fn levy_form(zeta: f64, alpha: f64, u: &RadialFunction, cfg: &QuadratureConfig) -> Result<f64> {
    let kernel = LevyKernel::new(LevyKernelParams::new(zeta, alpha)?)?;
    weighted_jump_form(&kernel, 2.0 * zeta, u, cfg)
}

fn check_sigma(channel: Channel, alpha: f64, sigma: f64) -> Result<()> {
    if !channel.admits(alpha) {
        return Err(domain("alpha is not admissible for this channel"));
    }
    let lo = -(channel.ell() as f64);
    let hi = 0.5 * (channel.d() as f64 - alpha);
    let slack = 1e-12 * (1.0 + hi.abs());
    if sigma >= lo - slack && sigma <= hi + slack {
        Ok(())
    } else {
        Err(domain(alloc::format!("sigma = {sigma} outside [{lo}, {hi}]")))
    }
}

/// The weighted form `I_{ℓ,σ}[u]` of the ground-state representation with
/// weight `h(r) = r^{−ℓ−σ}`.
///
/// For α < 2 this is `½ ∬ |u(r) − u(s)|² ν(r, s) h(r) h(s) (rs)^{d−1+2ℓ}`;
/// for α = 2 it is `∫ |u′|² h² r^{d−1+2ℓ} dr`.
pub fn i_ell_sigma(
    channel: Channel,
    alpha: f64,
    sigma: f64,
    u: &RadialFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_sigma(channel, alpha, sigma)?;
    let zeta = channel.zeta();
    let p = 2.0 * zeta - channel.ell() as f64 - sigma;
    if alpha == 2.0 {
        let (a, b) = u.support();
        let f = |r: f64| {
            let du = u.deriv(r);
            du * du * r.powf(2.0 * p - 2.0 * zeta)
        };
        return Ok(quad::integrate(f, a, b, cfg)?.value);
    }
    let kernel = LevyKernel::new(LevyKernelParams::new(zeta, alpha)?)?;
    weighted_jump_form(&kernel, p, u, cfg)
}

/// `∫ |h(r) u(r)|² r^{−α} r^{d−1+2ℓ} dr` with `h(r) = r^{−ℓ−σ}`.
pub fn potential_integral(
    channel: Channel,
    alpha: f64,
    sigma: f64,
    u: &RadialFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_sigma(channel, alpha, sigma)?;
    let e = channel.measure_power() - 2.0 * (channel.ell() as f64 + sigma) - alpha;
    let (a, b) = u.support();
    let f = |r: f64| {
        let x = u.eval(r);
        x * x * r.powf(e)
    };
    Ok(quad::integrate(f, a, b, cfg)?.value)
}

/// `t^{−1} ⟨u, u − P_t u⟩` in `L²(r^{2ζ} dr)` for an arbitrary symmetric
/// kernel `p(r, s)` that integrates to one against `s^{2ζ} ds`.
///
/// Written as `(2t)^{−1} ∬ |u(r) − u(s)|² p(r, s) (rs)^{2ζ}`, so that no
/// cancellation against `‖u‖²` occurs. `far_decay` describes `p(r, s)` for
/// large `s`.
pub fn semigroup_form_with<K>(
    kernel: K,
    zeta: f64,
    t: f64,
    far_decay: DecayHint,
    u: &RadialFunction,
    cfg: &QuadratureConfig,
) -> Result<f64>
where
    K: Fn(f64, f64) -> Result<f64>,
{
    if !(t > 0.0) {
        return Err(domain("t must be positive"));
    }
    let (a, b) = u.support();
    let inner_cfg = cfg.tightened(0.01);
    let w2 = 2.0 * zeta;
    let square = quad::integrate_singular_2d(
        |r, s, w| {
            let du = u.difference(r, w);
            if du == 0.0 {
                return 0.0;
            }
            match kernel(r, s) {
                Ok(k) => du * du * k * (r * s).powf(w2),
                Err(_) => f64::NAN,
            }
        },
        Rect::square(a, b),
        0.0,
        true,
        &inner_cfg,
    )?;
    let outside = |r: f64| -> Result<f64> {
        let f = |s: f64| match kernel(r, s) {
            Ok(k) => k * s.powf(w2),
            Err(_) => f64::NAN,
        };
        let below = lenient(quad::integrate_with_breaks(f, &[0.0, 0.5 * a, a], &inner_cfg))?;
        let top = b + (b - a).max(r);
        let above = lenient(quad::integrate_with_breaks(
            f,
            &[b, 0.5 * (b + top), top],
            &inner_cfg,
        ))?;
        let far = lenient(quad::integrate_semi_infinite(f, top, far_decay, &inner_cfg))?;
        Ok(below.value + above.value + far.value)
    };
    let mut failure = None;
    let tail = quad::integrate(
        |r: f64| {
            let x = u.eval(r);
            if x == 0.0 {
                return 0.0;
            }
            match outside(r) {
                Ok(v) => x * x * r.powf(w2) * v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        a,
        b,
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((0.5 * square.value + tail?.value) / t)
}

/// [`semigroup_form_with`] for the subordinated kernel of `params`.
pub fn semigroup_form(
    params: KernelParams,
    t: f64,
    u: &RadialFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let decay = if params.alpha == 2.0 {
        DecayHint::Gaussian(2.0 * t.sqrt())
    } else {
        DecayHint::Power(-1.0 - params.alpha)
    };
    let kernel = heat_kernels::SubordinatedKernel::new(params, t)?;
    semigroup_form_with(
        |r, s| kernel.eval(r, s),
        params.zeta,
        t,
        decay,
        u,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::new(1e-14, 1e-9).unwrap()
    }

    #[test]
    fn u_map_is_an_isometry() {
        let u = RadialFunction::standard_bump();
        let c = Channel::new(3, 1).unwrap();
        let v = u_map(c, &u);
        let lhs = quad::integrate(|r| v.eval(r).powi(2), 1.0, 2.0, &cfg()).unwrap().value;
        let rhs = quad::integrate(|r| u.eval(r).powi(2) * r.powi(4), 1.0, 2.0, &cfg()).unwrap().value;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }

    #[test]
    fn cosine_transform_in_one_dimension() {
        let c = Channel::new(1, 0).unwrap();
        let u = RadialFunction::standard_bump();
        let k = 3.7;
        let got = fourier_bessel(c, &u, k).unwrap();
        let want = (2.0 / PI).sqrt()
            * quad::integrate(|r| (k * r).cos() * u.eval(r), 1.0, 2.0, &cfg()).unwrap().value;
        assert_relative_eq!(got.re, want, max_relative = 1e-11);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn parseval_on_a_bump() {
        for (d, l) in [(1, 0), (2, 1), (3, 2)] {
            let c = Channel::new(d, l).unwrap();
            let s = SpectralDensity::of_profile(c, &RadialFunction::standard_bump()).unwrap();
            assert!(s.parseval_defect() < 1e-10 * s.input_norm_sq(), "{d} {l}");
        }
    }

    #[test]
    fn alpha_two_spectral_equals_radial_form() {
        let c = Channel::new(3, 1).unwrap();
        let u = RadialFunction::standard_bump();
        let spec = spectral_form(c, 2.0, &u).unwrap();
        let rad = alpha2_radial_form(c, &u, &cfg()).unwrap();
        assert_relative_eq!(spec, rad, max_relative = 1e-9);
    }

    #[test]
    fn alpha_two_weighted_form_sine_arch() {
        // u = sin(π(r−1)) on [1, 2], d = 3, ℓ = 0, σ = 0.
        let u = RadialFunction::new(
            |r| (PI * (r - 1.0)).sin(),
            |r| PI * (PI * (r - 1.0)).cos(),
            1.0,
            2.0,
        )
        .unwrap();
        let c = Channel::new(3, 0).unwrap();
        let got = i_ell_sigma(c, 2.0, 0.0, &u, &cfg()).unwrap();
        // The oscillating half of cos² contributes π²/2 · 1/(2π²).
        let want = PI * PI * 7.0 / 6.0 + 0.25;
        assert_relative_eq!(got, want, max_relative = 1e-10);
    }
}

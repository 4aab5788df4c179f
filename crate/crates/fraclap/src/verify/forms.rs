//! Checks on the quadratic forms and on the Hardy quotient.

use std::f64::consts::PI;
use std::time::Instant;

use fraclap_core::hardy::{kappa_c, phi_critical_line};
use fraclap_core::quad;
use fraclap_core::transforms::{
    alpha2_radial_form, levy_form, potential_integral, semigroup_form, spectral_form, SpectralDensity,
};
use fraclap_core::{Channel, KernelParams, QuadratureConfig, RadialFunction, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::attempt;
use crate::report::{CheckReport, Tolerance};

pub const CHANNELS: [(u32, u32); 7] = [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];
pub const ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

fn label(c: Channel) -> String {
    format!("d={},ell={}", c.d(), c.ell())
}

/// `∫ |F_ℓ(Uu)|² dk = ∫ |u|² r^{d−1+2ℓ} dr`, relative.
pub fn parseval(c: Channel, u: &RadialFunction) -> CheckReport {
    let name = format!("parseval {}", label(c));
    attempt(&name.clone(), || {
        let s = SpectralDensity::of_profile(c, u)?;
        Ok(CheckReport::compare(name, s.norm_sq(), s.input_norm_sq(), Tolerance::rel(1e-6)).with_evaluations(s.len() as u64))
    })
}

pub const EQUIVALENCE_CELLS: [(u32, u32, f64); 5] =
    [(1, 1, 1.0), (2, 1, 1.5), (3, 0, 0.5), (3, 0, 1.0), (3, 1, 1.0)];

/// The spectral form against the jump-kernel form.
pub fn form_equivalence(c: Channel, alpha: f64, u: &RadialFunction, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("spectral vs jump form {},alpha={alpha}", label(c));
    attempt(&name.clone(), || {
        let jump = levy_form(c.zeta(), alpha, u, cfg)?;
        let spec = spectral_form(c, alpha, u)?;
        Ok(CheckReport::compare(name, jump, spec, Tolerance::rel(1e-4)).with_evaluations(2))
    })
}

pub const SEMIGROUP_TIMES: [f64; 3] = [1e-1, 1e-2, 1e-3];

/// `t^{−1}⟨u, u − P_t u⟩` at [`SEMIGROUP_TIMES`]: each value against the exact
/// multiplier form `∫ (1 − e^{−tk^α})/t |F|² dk`, increasing as `t` falls,
/// and below the full form.
pub fn semigroup_limit(c: Channel, alpha: f64, u: &RadialFunction, cfg: &QuadratureConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let base = format!("semigroup form {},alpha={alpha}", label(c));
    let setup = (|| -> Result<_> {
        let density = SpectralDensity::of_profile(c, u)?;
        let params = KernelParams::for_channel(c, alpha)?;
        Ok((density, params))
    })();
    let (density, params) = match setup {
        Ok(x) => x,
        Err(e) => return vec![CheckReport::failed(base, e)],
    };
    let full = density.form(alpha);
    let mut values = Vec::new();
    for t in SEMIGROUP_TIMES {
        let name = format!("{base},t={t}");
        out.push(attempt(&name.clone(), || {
            let v = semigroup_form(params, t, u, cfg)?;
            values.push(v);
            let exact = density.multiplier_form(|k| -(-t * k.powf(alpha)).exp_m1() / t);
            Ok(CheckReport::compare(name, v, exact, Tolerance::rel(1e-6)))
        }));
    }
    if values.len() == SEMIGROUP_TIMES.len() {
        let rising = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        out.push(CheckReport::at_least(format!("{base} increasing"), rising, f64::MIN_POSITIVE, 0.0));
        out.push(CheckReport::at_most(format!("{base} below limit"), values[values.len() - 1], full, 0.0));
    }
    out
}

/// `E[[u]_{ℓ,m}] / ∫ |[u]_{ℓ,m}|² |x|^{−α} dx`.
pub fn hardy_quotient(c: Channel, alpha: f64, u: &RadialFunction, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(spectral_form(c, alpha, u)? / potential_integral(c, alpha, -(c.ell() as f64), u, cfg)?)
}

/// A bump on `[a, a + w]` times a random cubic, `a ∈ [0.3, 2]`, `w ∈ [0.5, 2]`.
pub fn random_bump<R: Rng>(rng: &mut R) -> RadialFunction {
    let a = rng.gen_range(0.3..2.0);
    let w = rng.gen_range(0.5..2.0);
    let coeffs = [1.0, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    RadialFunction::bump_with_polynomial(a, a + w, &coeffs).expect("support is valid")
}

pub const BUMPS_PER_CHANNEL: usize = 20;
pub const BUMP_SEED: u64 = 0x4a7d;

/// The Hardy bound on [`BUMPS_PER_CHANNEL`] seeded random bumps, for every
/// admissible α; one report per `(channel, α)` carrying the smallest
/// `quotient/κ_c`.
pub fn hardy_bumps(c: Channel, cfg: &QuadratureConfig) -> Vec<CheckReport> {
    let start = Instant::now();
    let alphas: Vec<f64> = ALPHAS.into_iter().filter(|&a| c.admits(a)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(BUMP_SEED ^ (u64::from(c.d()) << 8) ^ u64::from(c.ell()));
    let mut worst = vec![Ok(f64::INFINITY); alphas.len()];
    for _ in 0..BUMPS_PER_CHANNEL {
        let u = random_bump(&mut rng);
        let density = SpectralDensity::of_profile(c, &u);
        for (slot, &alpha) in worst.iter_mut().zip(&alphas) {
            let ratio = density.as_ref().map_err(Clone::clone).and_then(|s| {
                let pot = potential_integral(c, alpha, -(c.ell() as f64), &u, cfg)?;
                Ok(s.form(alpha) / pot / kappa_c(c, alpha)?)
            });
            *slot = match (slot.clone(), ratio) {
                (Ok(w), Ok(r)) => Ok(w.min(r)),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
        }
    }
    // The spectral densities are shared across α, so the time is split evenly.
    let share = start.elapsed().as_secs_f64() / alphas.len().max(1) as f64;
    alphas
        .iter()
        .zip(worst)
        .map(|(&alpha, w)| {
            let name = format!("hardy bound on random bumps {},alpha={alpha}", label(c));
            let mut report = match w {
                Ok(w) => CheckReport::at_least(name, w, 1.0, 1e-6).with_evaluations(BUMPS_PER_CHANNEL as u64),
                Err(e) => CheckReport::failed(name, e),
            };
            report.wall_time_s = share;
            report
        })
        .collect()
}

/// `S(y) = e^{−1/y}/(e^{−1/y} + e^{−1/(1−y)})`, rising from 0 to 1 on `[0, 1]`,
/// and its derivative.
fn smooth_step(y: f64) -> (f64, f64) {
    if y <= 0.0 {
        return (0.0, 0.0);
    }
    if y >= 1.0 {
        return (1.0, 0.0);
    }
    let a = (-1.0 / y).exp();
    let b = (-1.0 / (1.0 - y)).exp();
    let s = a + b;
    (a / s, a * b * (1.0 / (y * y) + 1.0 / ((1.0 - y) * (1.0 - y))) / (s * s))
}

/// The cutoff χ: 1 on `|x| ≤ 1`, `S(2 − |x|)` on `1 ≤ |x| ≤ 2`; value and derivative.
fn plateau(x: f64) -> (f64, f64) {
    let ax = x.abs();
    if ax <= 1.0 {
        return (1.0, 0.0);
    }
    let (v, dv) = smooth_step(2.0 - ax);
    (v, -x.signum() * dv)
}

/// `u_n(r) = r^{−(d−α)/2−ℓ} χ(ln r / ln n)`, supported on `[1/n², n²]`.
pub fn plateau_profile(c: Channel, alpha: f64, n: f64) -> Result<RadialFunction> {
    let e = 0.5 * (c.d() as f64 - alpha) + c.ell() as f64;
    let l = n.ln();
    RadialFunction::new(
        move |r: f64| r.powf(-e) * plateau(r.ln() / l).0,
        move |r: f64| {
            let (v, dv) = plateau(r.ln() / l);
            r.powf(-e - 1.0) * (dv / l - e * v)
        },
        1.0 / (n * n),
        n * n,
    )
}

/// `χ̂(ω)² = (2∫₀² χ(x) cos(ωx) dx)²` on a Gauss–Legendre grid in ω, for the
/// Mellin form of the plateau quotient.
///
/// With `g(y) = χ(y/L)` and `u = r^{−(d−α)/2−ℓ} g(ln r)`, the form and the
/// Hardy potential become `(2π)^{−1}∫ Φ((d−α)/2 + iτ)|ĝ(τ)|² dτ` and
/// `(2π)^{−1}∫ |ĝ|² dτ`, so the quotient is the average of `Φ(·/L)`
/// against `χ̂²`.
#[derive(Clone, Debug)]
pub struct PlateauSpectrum {
    omega: Vec<f64>,
    weight: Vec<f64>,
}

impl PlateauSpectrum {
    /// χ̂ is smooth and decays like `e^{−c√ω}`; ω beyond this is negligible.
    pub const OMEGA_MAX: f64 = 400.0;

    pub fn new() -> Self {
        let (gx, gw) = quad::gauss_legendre(16);
        // x-grid on the ramp [1, 2]; the flat part is done in closed form.
        let ramp_panels = 256;
        let mut xs = Vec::with_capacity(16 * ramp_panels);
        let mut ws = Vec::with_capacity(16 * ramp_panels);
        let h = 1.0 / ramp_panels as f64;
        for p in 0..ramp_panels {
            let mid = 1.0 + (p as f64 + 0.5) * h;
            for i in 0..16 {
                let x = mid + 0.5 * h * gx[i];
                xs.push(x);
                ws.push(0.5 * h * gw[i] * plateau(x).0);
            }
        }
        let hat = |w: f64| -> f64 {
            let flat = if w == 0.0 { 1.0 } else { w.sin() / w };
            let ramp: f64 = xs.iter().zip(&ws).map(|(&x, &c)| c * (w * x).cos()).sum();
            2.0 * (flat + ramp)
        };
        let panel = 0.5 * PI;
        let panels = (Self::OMEGA_MAX / panel).ceil() as usize;
        let mut omega = Vec::with_capacity(16 * panels);
        let mut weight = Vec::with_capacity(16 * panels);
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * panel;
            for i in 0..16 {
                let w = mid + 0.5 * panel * gx[i];
                let f = hat(w);
                omega.push(w);
                weight.push(0.5 * panel * gw[i] * f * f);
            }
        }
        Self { omega, weight }
    }

    /// `∫₀^∞ χ̂²`, which equals `π ∫ χ²`.
    pub fn mass(&self) -> f64 {
        self.weight.iter().sum()
    }

    /// `∫ χ²` over the real line by quadrature in x, for the Plancherel check.
    pub fn plateau_norm_sq(cfg: &QuadratureConfig) -> Result<f64> {
        let ramp = quad::integrate(|x| plateau(x).0.powi(2), 1.0, 2.0, cfg)?.value;
        Ok(2.0 * (1.0 + ramp))
    }

    /// `∫ χ'²` over the real line.
    pub fn plateau_slope_sq(cfg: &QuadratureConfig) -> Result<f64> {
        Ok(2.0 * quad::integrate(|x| plateau(x).1.powi(2), 1.0, 2.0, cfg)?.value)
    }

    /// The Hardy quotient of `u_n` with `L = ln n`.
    pub fn quotient(&self, c: Channel, alpha: f64, l: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&w, &m) in self.omega.iter().zip(&self.weight) {
            acc += phi_critical_line(c, alpha, w / l)? * m;
        }
        Ok(acc / self.mass())
    }
}

impl Default for PlateauSpectrum {
    fn default() -> Self {
        Self::new()
    }
}

/// Quotient of [`plateau_profile`] by the Mellin route.
pub fn plateau_quotient(spectrum: &PlateauSpectrum, c: Channel, alpha: f64, n: f64) -> Result<f64> {
    spectrum.quotient(c, alpha, n.ln())
}

/// The Mellin quotient at `n = 2` against direct quadrature of both forms.
pub fn plateau_direct(spectrum: &PlateauSpectrum, c: Channel, alpha: f64, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("plateau mellin vs direct {},alpha={alpha},n=2", label(c));
    attempt(&name.clone(), || {
        let u = plateau_profile(c, alpha, 2.0)?;
        let form = if alpha == 2.0 {
            alpha2_radial_form(c, &u, cfg)?
        } else {
            levy_form(c.zeta(), alpha, &u, cfg)?
        };
        let direct = form / potential_integral(c, alpha, -(c.ell() as f64), &u, cfg)?;
        let mellin = plateau_quotient(spectrum, c, alpha, 2.0)?;
        Ok(CheckReport::compare(name, mellin, direct, Tolerance::rel(1e-6)).with_evaluations(2))
    })
}

pub const PLATEAU_NS: [f64; 3] = [4.0, 16.0, 64.0];
pub const PLATEAU_CELLS: [(u32, u32, f64); 4] = [(3, 0, 1.0), (3, 1, 1.0), (2, 1, 1.5), (3, 0, 2.0)];

/// Plateau quotients decrease over [`PLATEAU_NS`] and stay at or above κ_c.
///
/// For α < 2 the last lies within 10% of κ_c. At α = 2 the symbol on the
/// critical line is `κ_c + τ²`, so the excess is exactly
/// `∫χ'² / (L² ∫χ²)`, which is checked instead: at `n = 64` it is at least
/// `(π/4)²/ln²64` for any cutoff on `[−2, 2]`, too slow for a 10% bound.
pub fn plateau_trend(spectrum: &PlateauSpectrum, c: Channel, alpha: f64, cfg: &QuadratureConfig) -> Vec<CheckReport> {
    let start = Instant::now();
    let base = format!("plateau {},alpha={alpha}", label(c));
    let run = || -> Result<Vec<CheckReport>> {
        let k = kappa_c(c, alpha)?;
        let q = PLATEAU_NS
            .iter()
            .map(|&n| plateau_quotient(spectrum, c, alpha, n))
            .collect::<Result<Vec<_>>>()?;
        let fall = q.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
        let last = q[q.len() - 1];
        let mut out = vec![
            CheckReport::at_least(format!("{base} decreasing"), fall, f64::MIN_POSITIVE, 0.0),
            CheckReport::at_least(format!("{base} above kappa_c"), last, k, 1e-12),
        ];
        if alpha == 2.0 {
            let l = PLATEAU_NS[PLATEAU_NS.len() - 1].ln();
            let excess = PlateauSpectrum::plateau_slope_sq(cfg)? / (l * l * PlateauSpectrum::plateau_norm_sq(cfg)?);
            out.push(CheckReport::compare(format!("{base} excess in closed form"), last - k, excess, Tolerance::rel(1e-8)));
        } else {
            out.push(CheckReport::at_most(format!("{base} within 10% of kappa_c"), last, 1.1 * k, 0.0));
        }
        Ok(out)
    };
    let mut out = run().unwrap_or_else(|e| vec![CheckReport::failed(base, e)]);
    let share = start.elapsed().as_secs_f64() / out.len() as f64;
    for r in &mut out {
        r.wall_time_s = share;
    }
    out
}

/// `∫₀^∞ χ̂² = π ∫ χ²` for the plateau spectrum.
pub fn plateau_plancherel(spectrum: &PlateauSpectrum, cfg: &QuadratureConfig) -> CheckReport {
    let name = "plateau spectrum plancherel";
    attempt(name, || {
        let want = PI * PlateauSpectrum::plateau_norm_sq(cfg)?;
        Ok(CheckReport::compare(name, spectrum.mass(), want, Tolerance::rel(1e-10)))
    })
}

pub fn suite(cfg: &QuadratureConfig) -> Vec<CheckReport> {
    let u = RadialFunction::standard_bump();
    let poly = RadialFunction::bump_with_polynomial(0.8, 2.1, &[1.0, 0.5, -0.3]).expect("valid support");
    let mut out = Vec::new();
    for (d, l) in CHANNELS {
        let c = Channel::new(d, l).expect("valid channel");
        out.push(parseval(c, &poly));
    }
    for (d, l, a) in EQUIVALENCE_CELLS {
        out.push(form_equivalence(Channel::new(d, l).expect("valid channel"), a, &u, cfg));
    }
    let c = Channel::new(3, 0).expect("valid channel");
    out.extend(semigroup_limit(c, 1.0, &u, cfg));
    out.extend(semigroup_limit(c, 2.0, &u, cfg));
    for (d, l) in CHANNELS {
        out.extend(hardy_bumps(Channel::new(d, l).expect("valid channel"), cfg));
    }
    let spectrum = PlateauSpectrum::new();
    out.push(plateau_plancherel(&spectrum, cfg));
    for (d, l, a) in PLATEAU_CELLS {
        let c = Channel::new(d, l).expect("valid channel");
        out.push(plateau_direct(&spectrum, c, a, cfg));
        out.extend(plateau_trend(&spectrum, c, a, cfg));
    }
    out
}

//! Hardy-type constants of a single channel: the coupling curve Φ(σ), the
//! critical coupling κ_c, the half-line curve Ψ_ζ(η), and the power-moment
//! constants behind the generalized ground states `r^{−η}`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};
use crate::heat_kernels::{Channel, KernelParams};
use crate::quad::{self, DecayHint, QuadratureConfig};
use crate::specfun::{gamma_ratio, hyp1f1_reg, ln_gamma_complex};

fn check_alpha(channel: Channel, alpha: f64) -> Result<()> {
    if channel.admits(alpha) {
        Ok(())
    } else {
        Err(domain(alloc::format!(
            "alpha = {alpha} is not admissible for (d, ell) = ({}, {})",
            channel.d(),
            channel.ell()
        )))
    }
}

/// `Φ(σ) = 2^α Γ((ℓ+σ+α)/2) Γ((d+ℓ−σ)/2) / (Γ((ℓ+σ)/2) Γ((d+ℓ−σ−α)/2))` on
/// `σ ∈ (−ℓ−α, d+ℓ)`, and `(ℓ+σ)(d+ℓ−σ−2)` for every real σ when α = 2.
pub fn phi(channel: Channel, alpha: f64, sigma: f64) -> Result<f64> {
    check_alpha(channel, alpha)?;
    let d = channel.d() as f64;
    let l = channel.ell() as f64;
    if !sigma.is_finite() {
        return Err(domain("sigma must be finite"));
    }
    if alpha == 2.0 {
        return Ok((l + sigma) * (d + l - sigma - 2.0));
    }
    if !(sigma > -l - alpha && sigma < d + l) {
        return Err(domain(alloc::format!(
            "sigma = {sigma} outside ({}, {})",
            -l - alpha,
            d + l
        )));
    }
    let ratio = gamma_ratio(
        &[0.5 * (l + sigma + alpha), 0.5 * (d + l - sigma)],
        &[0.5 * (l + sigma), 0.5 * (d + l - sigma - alpha)],
    )?;
    Ok(2f64.powf(alpha) * ratio)
}

/// `κ_c = Φ((d−α)/2)`.
pub fn kappa_c(channel: Channel, alpha: f64) -> Result<f64> {
    check_alpha(channel, alpha)?;
    let n = channel.effective_dim();
    if alpha == 2.0 {
        return Ok(0.25 * (n - 2.0) * (n - 2.0));
    }
    let g = gamma_ratio(&[0.25 * (n + alpha)], &[0.25 * (n - alpha)])?;
    Ok(2f64.powf(alpha) * g * g)
}

/// `Φ((d−α)/2 + iτ)`, real and at least κ_c, equal to
/// `2^α |Γ((d+2ℓ+α)/4 + iτ/2)|² / |Γ((d+2ℓ−α)/4 + iτ/2)|²`.
///
/// This is the multiplier of the form on the critical line in Mellin
/// variables, used for near-optimizers of the Hardy quotient.
pub fn phi_critical_line(channel: Channel, alpha: f64, tau: f64) -> Result<f64> {
    check_alpha(channel, alpha)?;
    let n = channel.effective_dim();
    if alpha == 2.0 {
        return Ok(0.25 * (n - 2.0) * (n - 2.0) + tau * tau);
    }
    let num = ln_gamma_complex(Complex64::new(0.25 * (n + alpha), 0.5 * tau))?.re;
    let den = ln_gamma_complex(Complex64::new(0.25 * (n - alpha), 0.5 * tau))?.re;
    Ok(2f64.powf(alpha) * (2.0 * (num - den)).exp())
}

/// `Ψ_ζ(η) = 2^α Γ((2ζ+1−η)/2) Γ((α+η)/2) / (Γ(η/2) Γ((2ζ+1−η−α)/2))` on
/// `η ∈ [0, (2ζ+1−α)/2]`.
pub fn psi(zeta: f64, alpha: f64, eta: f64) -> Result<f64> {
    if !(zeta > -0.5) || !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain("psi needs zeta > -1/2 and alpha in (0, 2]"));
    }
    let top = 0.5 * (2.0 * zeta + 1.0 - alpha);
    if !(eta >= 0.0 && eta <= top) {
        return Err(domain(alloc::format!("eta = {eta} outside [0, {top}]")));
    }
    let ratio = gamma_ratio(
        &[0.5 * (2.0 * zeta + 1.0 - eta), 0.5 * (alpha + eta)],
        &[0.5 * eta, 0.5 * (2.0 * zeta + 1.0 - eta - alpha)],
    )?;
    Ok(2f64.powf(alpha) * ratio)
}

/// `C(β, γ, ζ) = 2^{−2β} Γ(β) Γ((γ+1)/2) Γ((2ζ−2β−γ)/2) / (Γ((2ζ−γ)/2) Γ((2β+γ+1)/2))`,
/// the value of `∫ dt/t t^β ∫ ds s^γ p^{(2)}(t, 1, s)`.
pub fn c_constant(beta: f64, gamma: f64, zeta: f64) -> Result<f64> {
    if !(gamma > -1.0) || !(beta > 0.0 && beta < 0.5 * (2.0 * zeta - gamma)) {
        return Err(domain("C needs gamma > -1 and 0 < beta < (2 zeta - gamma)/2"));
    }
    let ratio = gamma_ratio(
        &[beta, 0.5 * (gamma + 1.0), 0.5 * (2.0 * zeta - 2.0 * beta - gamma)],
        &[0.5 * (2.0 * zeta - gamma), 0.5 * (2.0 * beta + gamma + 1.0)],
    )?;
    Ok(2f64.powf(-2.0 * beta) * ratio)
}

/// `C^{(α)}(β, γ, ζ) = Γ(β)/Γ(αβ/2) · C(αβ/2, γ, ζ)`.
pub fn c_constant_alpha(alpha: f64, beta: f64, gamma: f64, zeta: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain("alpha must lie in (0, 2]"));
    }
    if !(beta > 0.0 && beta < (2.0 * zeta - gamma) / alpha) {
        return Err(domain("C^(alpha) needs 0 < beta < (2 zeta - gamma)/alpha"));
    }
    let ab = 0.5 * alpha * beta;
    Ok(gamma_ratio(&[beta], &[ab])? * c_constant(ab, gamma, zeta)?)
}

/// `∫₀^∞ s^γ p^{(2)}(t, r, s) ds = r^{γ−2ζ} m(t/r²)` with
/// `m(t) = 2^{γ−2ζ} Γ((γ+1)/2) t^{(γ−2ζ)/2} ₁F̃₁((2ζ−γ)/2; ζ+1/2; −1/(4t))`.
pub fn gaussian_bessel_moment(zeta: f64, gamma: f64, t: f64, r: f64) -> Result<f64> {
    if !(gamma > -1.0) || !(zeta > -0.5) || !(t > 0.0) || !(r > 0.0) {
        return Err(domain("moment needs gamma > -1, zeta > -1/2, t > 0, r > 0"));
    }
    let tt = t / (r * r);
    let e = gamma - 2.0 * zeta;
    let m = 2f64.powf(e)
        * crate::specfun::gamma(0.5 * (gamma + 1.0))?
        * tt.powf(0.5 * e)
        * hyp1f1_reg(-0.5 * e, zeta + 0.5, -0.25 / tt)?;
    Ok(r.powf(e) * m)
}

/// `h_{β,γ}(r) = ∫₀^∞ dt/t t^β ∫₀^∞ ds s^γ p^{(α)}(t, r, s)` by quadrature.
///
/// For α < 2 the time integral of the subordinator density is done in closed
/// form first, which leaves `Γ(β)/Γ(αβ/2) ∫ dτ/τ τ^{αβ/2} M(τ, r)` with `M`
/// the Gaussian–Bessel moment. The remaining integral runs over `ln τ`.
pub fn h_beta_gamma_numeric(
    params: KernelParams,
    beta: f64,
    gamma: f64,
    r: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let KernelParams { zeta, alpha } = KernelParams::new(params.zeta, params.alpha)?;
    if !(gamma > -1.0) || !(beta > 0.0 && beta < (2.0 * zeta - gamma) / alpha) || !(r > 0.0) {
        return Err(domain("h needs gamma > -1, 0 < beta < (2 zeta - gamma)/alpha, r > 0"));
    }
    let b = 0.5 * alpha * beta;
    let pref = if alpha == 2.0 {
        1.0
    } else {
        gamma_ratio(&[beta], &[b])?
    };
    let f = |x: f64| -> f64 {
        let tau = x.exp();
        match gaussian_bessel_moment(zeta, gamma, tau, r) {
            Ok(m) => (b * x).exp() * m,
            Err(_) => f64::NAN,
        }
    };
    let center = 2.0 * r.ln();
    let up_rate = 0.5 * (2.0 * zeta - gamma) - b;
    let upper = quad::integrate_semi_infinite(f, center, DecayHint::Exponential(up_rate), cfg)?;
    let lower = quad::integrate_semi_infinite(
        |y: f64| f(2.0 * center - y),
        center,
        DecayHint::Exponential(b),
        cfg,
    )?;
    Ok(pref * (upper.value + lower.value))
}

/// Closed form of `q_{β,γ}(r) = (β−1) h_{β−1,γ}(r) / h_{β,γ}(r)`:
/// `2^α Γ((2ζ+α−αβ−γ)/2) Γ((αβ+γ+1)/2) / (Γ((2ζ−αβ−γ)/2) Γ((αβ+γ+1−α)/2)) · r^{−α}`.
pub fn q_beta_gamma(params: KernelParams, beta: f64, gamma: f64, r: f64) -> Result<f64> {
    let KernelParams { zeta, alpha } = KernelParams::new(params.zeta, params.alpha)?;
    if !(gamma > -1.0) || !(beta > 1.0 && beta < (2.0 * zeta - gamma) / alpha) || !(r > 0.0) {
        return Err(domain("q needs gamma > -1, 1 < beta < (2 zeta - gamma)/alpha, r > 0"));
    }
    let ab = alpha * beta + gamma;
    let ratio = gamma_ratio(
        &[0.5 * (2.0 * zeta + alpha - ab), 0.5 * (ab + 1.0)],
        &[0.5 * (2.0 * zeta - ab), 0.5 * (ab + 1.0 - alpha)],
    )?;
    Ok(2f64.powf(alpha) * ratio * r.powf(-alpha))
}

/// The exponent `β = (2ζ − γ − η)/α` that makes `h_{β,γ}` a multiple of `r^{−η}`.
pub fn beta_for_eta(params: KernelParams, gamma: f64, eta: f64) -> f64 {
    (2.0 * params.zeta - gamma - eta) / params.alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;

    fn ch(d: u32, l: u32) -> Channel {
        Channel::new(d, l).unwrap()
    }

    #[test]
    fn kappa_spot_values() {
        assert_relative_eq!(kappa_c(ch(3, 0), 1.0).unwrap(), 2.0 / PI, max_relative = 1e-14);
        assert_relative_eq!(kappa_c(ch(3, 1), 1.0).unwrap(), PI / 2.0, max_relative = 1e-14);
        assert_eq!(kappa_c(ch(5, 1), 2.0).unwrap(), 6.25);
        assert_eq!(phi(ch(3, 0), 2.0, 0.5).unwrap(), 0.25);
    }

    #[test]
    fn phi_vanishes_at_minus_ell() {
        for (d, l, a) in [(3, 2, 1.3), (2, 1, 0.7), (1, 1, 1.5)] {
            assert_eq!(phi(ch(d, l), a, -(l as f64)).unwrap(), 0.0);
        }
    }

    #[test]
    fn critical_line_starts_at_kappa() {
        for (d, l, a) in [(3, 0, 1.0), (2, 1, 1.5), (3, 2, 0.5), (3, 1, 2.0)] {
            let k = kappa_c(ch(d, l), a).unwrap();
            assert_relative_eq!(phi_critical_line(ch(d, l), a, 0.0).unwrap(), k, max_relative = 1e-13);
            assert!(phi_critical_line(ch(d, l), a, 0.5).unwrap() > k);
        }
    }

    #[test]
    fn psi_zero_and_midpoint() {
        assert_eq!(psi(1.3, 0.8, 0.0).unwrap(), 0.0);
        assert_relative_eq!(psi(1.0, 1.0, 1.0).unwrap(), 2.0 / PI, max_relative = 1e-14);
    }

    #[test]
    fn moment_closed_form_normalization() {
        for &(zeta, t, r) in &[(0.0, 0.3, 1.0), (1.0, 2.0, 0.4), (2.5, 0.05, 3.0)] {
            let m = gaussian_bessel_moment(zeta, 2.0 * zeta, t, r).unwrap();
            assert_relative_eq!(m, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn h_matches_constant_at_alpha_two() {
        let cfg = QuadratureConfig::new(1e-15, 1e-11).unwrap();
        let p = KernelParams::new(1.0, 2.0).unwrap();
        let c = c_constant(0.6, 0.0, 1.0).unwrap();
        let h = h_beta_gamma_numeric(p, 0.6, 0.0, 1.5, &cfg).unwrap();
        assert_relative_eq!(h, c * 1.5f64.powf(1.2 - 2.0), max_relative = 1e-9);
    }
}

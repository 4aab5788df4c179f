use approx::assert_relative_eq;
use fraclap_core::hardy::kappa_c;
use fraclap_core::heat_kernels::{poisson_zeta0, poisson_zeta1};
use fraclap_core::quad::{self, DecayHint};
use fraclap_core::transforms::*;
use fraclap_core::{Channel, KernelParams, QuadratureConfig, RadialFunction};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::new(1e-14, 1e-9).unwrap()
}

fn bump() -> RadialFunction {
    RadialFunction::standard_bump()
}

const CHANNELS: [(u32, u32); 7] = [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

#[test]
fn u_map_exponents() {
    let u = bump();
    let id = u_map(Channel::new(1, 0).unwrap(), &u);
    let times_r = u_map(Channel::new(3, 0).unwrap(), &u);
    for r in [1.1, 1.5, 1.93] {
        assert_eq!(id.eval(r), u.eval(r));
        assert_relative_eq!(times_r.eval(r), r * u.eval(r), max_relative = 1e-15);
    }
}

#[test]
fn parseval_on_every_channel() {
    let u = RadialFunction::bump_with_polynomial(0.8, 2.1, &[1.0, 0.5, -0.3]).unwrap();
    for (d, l) in CHANNELS {
        let c = Channel::new(d, l).unwrap();
        let s = SpectralDensity::of_profile(c, &u).unwrap();
        let rel = s.parseval_defect() / s.input_norm_sq();
        assert!(rel < 1e-6, "({d},{l}) defect {rel:e}");
    }
}

#[test]
fn transform_squared_is_parity() {
    let u = bump();
    for (d, l) in [(3, 0), (3, 1), (2, 1), (1, 1)] {
        let c = Channel::new(d, l).unwrap();
        let v = u_map(c, &u);
        let s = SpectralDensity::new(c, &v).unwrap();
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        for r in [1.2, 1.5, 1.8] {
            let back = s.reapply(r).unwrap();
            assert!((back.re - sign * v.eval(r)).abs() < 1e-6, "({d},{l}) r={r}");
            assert!(back.im.abs() < 1e-12);
        }
    }
}

#[test]
fn spectral_form_matches_jump_form() {
    let u = bump();
    for (d, l, alpha) in [(1, 1, 1.0), (2, 1, 1.5), (3, 0, 0.5), (3, 0, 1.0), (3, 1, 1.0)] {
        let c = Channel::new(d, l).unwrap();
        let spec = spectral_form(c, alpha, &u).unwrap();
        let jump = levy_form(c.zeta(), alpha, &u, &cfg()).unwrap();
        assert!(((spec - jump) / spec).abs() < 1e-4, "({d},{l},{alpha}) {spec} {jump}");
    }
}

#[test]
fn jump_form_scaling() {
    let u = bump();
    let (zeta, alpha, lambda) = (1.5, 0.7, 1.8);
    let base = levy_form(zeta, alpha, &u, &cfg()).unwrap();
    let wide = levy_form(zeta, alpha, &u.dilated(lambda).unwrap(), &cfg()).unwrap();
    assert_relative_eq!(wide, lambda.powf(2.0 * zeta + 1.0 - alpha) * base, max_relative = 1e-7);
}

#[test]
fn zero_profile_has_zero_forms() {
    let zero = RadialFunction::new(|_| 0.0, |_| 0.0, 1.0, 2.0).unwrap();
    assert_eq!(levy_form(1.0, 1.2, &zero, &cfg()).unwrap(), 0.0);
    let c = Channel::new(3, 1).unwrap();
    assert_eq!(i_ell_sigma(c, 0.8, 0.0, &zero, &cfg()).unwrap(), 0.0);
}

#[test]
fn weighted_form_at_lowest_sigma_is_jump_form() {
    let u = bump();
    let c = Channel::new(3, 1).unwrap();
    let a = i_ell_sigma(c, 1.3, -1.0, &u, &cfg()).unwrap();
    let b = levy_form(c.zeta(), 1.3, &u, &cfg()).unwrap();
    assert_relative_eq!(a, b, max_relative = 1e-12);
    assert!(i_ell_sigma(c, 1.3, -1.5, &u, &cfg()).is_err());
    assert!(i_ell_sigma(c, 1.3, 0.9, &u, &cfg()).is_err());
}

#[test]
fn potential_integral_homogeneity() {
    let u = bump();
    let c = Channel::new(3, 0).unwrap();
    let plain = potential_integral(c, 1.0, 0.0, &u, &cfg()).unwrap();
    let direct = quad::integrate(|r| u.eval(r).powi(2) * r, 1.0, 2.0, &cfg()).unwrap().value;
    assert_relative_eq!(plain, direct, max_relative = 1e-12);

    let c = Channel::new(2, 1).unwrap();
    let (alpha, sigma, lambda) = (1.5, 0.1, 2.5);
    let base = potential_integral(c, alpha, sigma, &u, &cfg()).unwrap();
    let wide = potential_integral(c, alpha, sigma, &u.dilated(lambda).unwrap(), &cfg()).unwrap();
    let e = 2.0 - alpha - 2.0 * sigma;
    assert_relative_eq!(wide, lambda.powf(e) * base, max_relative = 1e-10);
}

#[test]
fn spectral_form_respects_hardy_bound() {
    let u = RadialFunction::bump_with_polynomial(0.5, 1.5, &[1.0, -0.8]).unwrap();
    for (d, l, alpha) in [(3, 0, 1.0), (3, 1, 1.0), (2, 0, 1.5), (1, 1, 0.5)] {
        let c = Channel::new(d, l).unwrap();
        let spec = spectral_form(c, alpha, &u).unwrap();
        let pot = potential_integral(c, alpha, -(l as f64), &u, &cfg()).unwrap();
        assert!(spec >= kappa_c(c, alpha).unwrap() * pot, "({d},{l},{alpha})");
        assert!(spec > 0.0);
    }
}

/// `∫ (1 − e^{−t k^α})/t |F|² dk`, the exact value of the semigroup form.
fn spectral_semigroup(s: &SpectralDensity, alpha: f64, t: f64) -> f64 {
    s.multiplier_form(|k| -(-t * k.powf(alpha)).exp_m1() / t)
}

#[test]
fn semigroup_form_increases_to_jump_form() {
    let u = bump();
    let cases: [(u32, fn(f64, f64, f64) -> fraclap_core::Result<f64>); 2] =
        [(1, poisson_zeta0), (3, poisson_zeta1)];
    for (d, kernel) in cases {
        let c = Channel::new(d, 0).unwrap();
        let zeta = c.zeta();
        let density = SpectralDensity::of_profile(c, &u).unwrap();
        let limit = levy_form(zeta, 1.0, &u, &cfg()).unwrap();
        let mut last = 0.0;
        for t in [1e-1, 1e-2, 1e-3] {
            let v = semigroup_form_with(|r, s| kernel(t, r, s), zeta, t, DecayHint::Power(-2.0), &u, &cfg())
                .unwrap();
            assert!(v > last && v < limit, "d={d} t={t}");
            assert_relative_eq!(v, spectral_semigroup(&density, 1.0, t), max_relative = 1e-6);
            last = v;
        }
    }
}

#[test]
fn heat_semigroup_form_at_alpha_two() {
    let u = bump();
    let c = Channel::new(3, 0).unwrap();
    let density = SpectralDensity::of_profile(c, &u).unwrap();
    let limit = alpha2_radial_form(c, &u, &cfg()).unwrap();
    let p = KernelParams::for_channel(c, 2.0).unwrap();
    let mut last = 0.0;
    for t in [1e-1, 1e-2, 1e-3] {
        let v = semigroup_form(p, t, &u, &cfg()).unwrap();
        assert!(v > last && v < limit, "t={t} {v} {limit}");
        assert_relative_eq!(v, spectral_semigroup(&density, 2.0, t), max_relative = 1e-6);
        last = v;
    }
}

use core::f64::consts::PI;

use fraclap_core::hardy::{kappa_c, phi};
use fraclap_core::heat_kernels::{bessel_heat, subordinated_heat};
use fraclap_core::levy_kernel::levy_kernel;
use fraclap_core::specfun::*;
use fraclap_core::subordinator::density;
use fraclap_core::{Channel, KernelParams, LevyKernelParams, StableIndex};
use proptest::prelude::*;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

fn channel() -> impl Strategy<Value = Channel> {
    (1u32..=5, 0u32..=3).prop_filter_map("d = 1 allows ell <= 1", |(d, l)| Channel::new(d, l).ok())
}

proptest! {
    #[test]
    fn gamma_recurrence(x in 0.05f64..60.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(close(lhs, rhs, 1e-13), "{lhs} {rhs}");
    }

    #[test]
    fn gamma_duplication(x in 0.05f64..40.0) {
        let (a, _) = ln_gamma(x).unwrap();
        let (b, _) = ln_gamma(x + 0.5).unwrap();
        let (c, _) = ln_gamma(2.0 * x).unwrap();
        let rhs = (1.0 - 2.0 * x) * 2f64.ln() + 0.5 * PI.ln() + c;
        prop_assert!((a + b - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn gamma_reflection(x in 0.01f64..0.99) {
        let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
        prop_assert!(close(lhs, PI / sin_pi(x), 1e-13));
    }

    #[test]
    fn hyp2f1_euler_transformation(
        a in 0.1f64..2.0, b in 0.1f64..2.0, c in 0.6f64..3.0, z in -0.9f64..0.95,
    ) {
        let s = c - a - b;
        prop_assume!((s - s.round()).abs() > 1e-2);
        let lhs = hyp2f1_reg(a, b, c, z).unwrap();
        let rhs = (1.0 - z).powf(s) * hyp2f1_reg(c - a, c - b, c, z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1e-3), "{lhs} {rhs}");
    }

    #[test]
    fn bessel_j_recurrence(nu in 0.5f64..6.0, x in 0.1f64..60.0) {
        let (a, b, c) = (bessel_j(nu - 1.0, x).unwrap(), bessel_j(nu, x).unwrap(), bessel_j(nu + 1.0, x).unwrap());
        let scale = a.abs() + c.abs() + (2.0 * nu / x * b).abs();
        prop_assert!((a + c - 2.0 * nu / x * b).abs() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn bessel_i_scaled_recurrence(nu in 0.5f64..6.0, x in 0.01f64..200.0) {
        let (a, b, c) = (
            bessel_i_scaled(nu - 1.0, x).unwrap(),
            bessel_i_scaled(nu, x).unwrap(),
            bessel_i_scaled(nu + 1.0, x).unwrap(),
        );
        prop_assert!(close(a - c, 2.0 * nu / x * b, 1e-11), "{a} {b} {c}");
    }

    #[test]
    fn phi_symmetric_about_midpoint(c in channel(), alpha in 0.05f64..2.0, t in 0.0f64..1.0) {
        prop_assume!(c.admits(alpha));
        let mid = 0.5 * (c.d() as f64 - alpha);
        let lo = -(c.ell() as f64);
        let sigma = lo + t * (mid - lo);
        let d = c.d() as f64;
        let a = phi(c, alpha, sigma).unwrap();
        let b = phi(c, alpha, d - alpha - sigma).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn phi_increases_up_to_midpoint(c in channel(), alpha in 0.05f64..2.0, t in 0.0f64..0.99) {
        prop_assume!(c.admits(alpha));
        let mid = 0.5 * (c.d() as f64 - alpha);
        let lo = -(c.ell() as f64);
        let s0 = lo + t * (mid - lo);
        let s1 = lo + (t + 0.01) * (mid - lo);
        prop_assert!(phi(c, alpha, s0).unwrap() < phi(c, alpha, s1).unwrap());
        prop_assert!(phi(c, alpha, mid).unwrap() <= kappa_c(c, alpha).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn phi_reduction_to_ell_zero(c in channel(), alpha in 0.05f64..2.0, t in 0.0f64..1.0) {
        prop_assume!(c.admits(alpha));
        let l = c.ell() as f64;
        let mid = 0.5 * (c.d() as f64 - alpha);
        let sigma = -l + t * (mid + l);
        let flat = Channel::new(c.d() + 2 * c.ell(), 0).unwrap();
        let a = phi(c, alpha, sigma).unwrap();
        let b = phi(flat, alpha, sigma + l).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn bessel_heat_symmetry_and_scaling(
        zeta in 0.0f64..3.0, t in 0.05f64..5.0, r in 0.1f64..4.0, s in 0.1f64..4.0, lambda in 0.3f64..3.0,
    ) {
        let p = bessel_heat(zeta, t, r, s).unwrap();
        prop_assert!(close(p, bessel_heat(zeta, t, s, r).unwrap(), 1e-14));
        let scaled = bessel_heat(zeta, lambda * lambda * t, lambda * r, lambda * s).unwrap();
        prop_assert!(close(scaled, lambda.powf(-2.0 * zeta - 1.0) * p, 1e-12));
    }

    #[test]
    fn levy_kernel_symmetry_and_homogeneity(
        zeta in 0.0f64..3.0, alpha in 0.1f64..1.95, r in 0.1f64..4.0, s in 0.1f64..4.0, lambda in 0.3f64..3.0,
    ) {
        prop_assume!((r - s).abs() > 1e-3);
        let params = LevyKernelParams::new(zeta, alpha).unwrap();
        let v = levy_kernel(params, r, s).unwrap();
        prop_assert!(v > 0.0);
        prop_assert!(close(v, levy_kernel(params, s, r).unwrap(), 1e-12));
        let scaled = levy_kernel(params, lambda * r, lambda * s).unwrap();
        prop_assert!(close(scaled, lambda.powf(-(2.0 * zeta + 1.0 + alpha)) * v, 1e-11));
    }

    #[test]
    fn subordinator_scaling(alpha in 0.2f64..1.9, t in 0.1f64..10.0, tau in 0.01f64..20.0) {
        let a = StableIndex::new(alpha).unwrap();
        let c = t.powf(2.0 / alpha);
        let lhs = density(a, t, tau).unwrap();
        let rhs = density(a, 1.0, tau / c).unwrap() / c;
        prop_assert!(close(lhs, rhs, 1e-10));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subordinated_heat_symmetry_and_scaling(
        zeta in 0.0f64..2.0, alpha in 0.3f64..1.9, t in 0.2f64..3.0, r in 0.2f64..3.0, s in 0.2f64..3.0,
        lambda in 0.5f64..2.0,
    ) {
        let params = KernelParams::new(zeta, alpha).unwrap();
        let p = subordinated_heat(params, t, r, s).unwrap();
        prop_assert!(close(p, subordinated_heat(params, t, s, r).unwrap(), 1e-10));
        let scaled = subordinated_heat(params, lambda.powf(alpha) * t, lambda * r, lambda * s).unwrap();
        prop_assert!(close(scaled, lambda.powf(-2.0 * zeta - 1.0) * p, 1e-9));
    }
}

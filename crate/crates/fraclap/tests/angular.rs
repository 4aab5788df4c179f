//! The one-angle reductions against brute-force quadrature over all angles.

use std::f64::consts::PI;

use fraclap::verify::angular::{angular_integral, KernelProfile};
use fraclap::verify::AngularKernel;
use fraclap_core::quad::gauss_legendre;
use fraclap_core::specfun::legendre_p;
use fraclap_core::QuadratureConfig;

/// Nodes and weights mapped from `[−1, 1]` to `[a, b]`.
fn rule(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let h = 0.5 * (b - a);
    x.iter().zip(&w).map(|(&x, &w)| (a + h * (x + 1.0), h * w)).collect()
}

/// `∬ Y(ω_x) Y(ω_y) P(|rω_x − sω_y|)` on S² with the unit-norm zonal harmonic,
/// integrated over both polar angles and the azimuth difference.
fn sphere_direct(ell: u32, profile: &KernelProfile, r: f64, s: f64) -> f64 {
    let norm = (2.0 * ell as f64 + 1.0) / (4.0 * PI);
    let polar = rule(40, 0.0, PI);
    let azimuth = rule(40, 0.0, 2.0 * PI);
    let mut total = 0.0;
    for &(tx, wx) in &polar {
        for &(ty, wy) in &polar {
            let ylm = norm * legendre_p(ell, tx.cos()) * legendre_p(ell, ty.cos());
            let jac = tx.sin() * ty.sin();
            for &(dp, wp) in &azimuth {
                let c = tx.cos() * ty.cos() + tx.sin() * ty.sin() * dp.cos();
                let rho = (r * r + s * s - 2.0 * r * s * c).max(0.0).sqrt();
                total += wx * wy * wp * jac * ylm * profile.eval(rho);
            }
        }
    }
    // The outer azimuth integrates to 2π.
    2.0 * PI * total
}

/// The same on the circle with `cos(ℓθ)` normalised on `[0, 2π)`.
fn circle_direct(ell: u32, profile: &KernelProfile, r: f64, s: f64) -> f64 {
    let norm = if ell == 0 { 1.0 / (2.0 * PI) } else { 1.0 / PI };
    let angle = rule(64, 0.0, 2.0 * PI);
    let mut total = 0.0;
    for &(tx, wx) in &angle {
        for &(ty, wy) in &angle {
            let rho = (r * r + s * s - 2.0 * r * s * (tx - ty).cos()).max(0.0).sqrt();
            total += wx * wy * norm * (ell as f64 * tx).cos() * (ell as f64 * ty).cos() * profile.eval(rho);
        }
    }
    total
}

const KERNELS: [AngularKernel; 3] = [
    AngularKernel::Heat { alpha: 2.0, t: 1.0 },
    AngularKernel::Heat { alpha: 1.0, t: 0.5 },
    AngularKernel::Levy { alpha: 1.2 },
];

#[test]
fn three_dimensional_reduction_matches_full_angles() {
    let cfg = QuadratureConfig::default().tightened(0.01);
    let (r, s) = (0.7, 1.6);
    for kernel in KERNELS {
        let profile = KernelProfile::new(3, kernel).unwrap();
        for ell in 0..=2 {
            let reduced = angular_integral(3, ell, &profile, r, s, &cfg).unwrap();
            let direct = sphere_direct(ell, &profile, r, s) * (r * s).powf(-(ell as f64));
            let rel = ((reduced - direct) / direct).abs();
            assert!(rel < 1e-7, "{kernel:?} ell={ell}: {reduced} vs {direct}");
        }
    }
}

#[test]
fn two_dimensional_reduction_matches_full_angles() {
    let cfg = QuadratureConfig::default().tightened(0.01);
    let (r, s) = (1.1, 2.0);
    for kernel in KERNELS {
        let profile = KernelProfile::new(2, kernel).unwrap();
        for ell in 0..=2 {
            let reduced = angular_integral(2, ell, &profile, r, s, &cfg).unwrap();
            let direct = circle_direct(ell, &profile, r, s) * (r * s).powf(-(ell as f64));
            let rel = ((reduced - direct) / direct).abs();
            assert!(rel < 1e-7, "{kernel:?} ell={ell}: {reduced} vs {direct}");
        }
    }
}

#[test]
fn odd_channel_on_the_line_subtracts_the_reflection() {
    let cfg = QuadratureConfig::default();
    let profile = KernelProfile::new(1, AngularKernel::Heat { alpha: 2.0, t: 1.0 }).unwrap();
    let even = angular_integral(1, 0, &profile, 0.5, 1.0, &cfg).unwrap();
    let odd = angular_integral(1, 1, &profile, 0.5, 1.0, &cfg).unwrap();
    let g = |x: f64| (-x * x / 4.0).exp() / (4.0 * PI).sqrt();
    assert!((even - (g(0.5) + g(1.5))).abs() < 1e-15);
    assert!((odd - (g(0.5) - g(1.5)) / 0.5).abs() < 1e-15);
}

//! Checks on the heat kernels, the Lévy kernel and the power moments.

use fraclap_core::hardy::{beta_for_eta, c_constant_alpha, h_beta_gamma_numeric, psi, q_beta_gamma};
use fraclap_core::heat_kernels::{
    chapman_kolmogorov_residual, kernel_config, subordinated_heat, subordinated_heat_spectral, total_mass,
};
use fraclap_core::levy_kernel::{levy_kernel, levy_kernel_zeta0, levy_kernel_zeta1};
use fraclap_core::{KernelParams, LevyKernelParams, QuadratureConfig};

use super::{attempt, defect};
use crate::report::{CheckReport, Tolerance};

pub const MASS_ZETAS: [f64; 4] = [0.0, 0.5, 1.0, 2.5];
pub const MASS_ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
pub const MASS_TIMES: [f64; 3] = [0.1, 1.0, 10.0];
pub const MASS_POINTS: [f64; 3] = [0.5, 1.0, 3.0];

/// `max_r |∫ p(t, r, s) s^{2ζ} ds − 1|` over [`MASS_POINTS`].
pub fn normalization(zeta: f64, alpha: f64, t: f64, cfg: &QuadratureConfig) -> CheckReport {
    let name = format!("kernel mass zeta={zeta},alpha={alpha},t={t}");
    attempt(&name.clone(), || {
        let params = KernelParams::new(zeta, alpha)?;
        let mut worst = 0.0f64;
        for r in MASS_POINTS {
            worst = worst.max((total_mass(params, t, r, cfg)? - 1.0).abs());
        }
        Ok(defect(name, worst, 1e-8).with_evaluations(MASS_POINTS.len() as u64))
    })
}

/// `(ζ, α, t, t′, r, s)` for the semigroup property.
pub const CK_CELLS: [(f64, f64, f64, f64, f64, f64); 12] = [
    (0.0, 2.0, 0.5, 0.5, 1.0, 1.5),
    (0.5, 2.0, 1.0, 0.3, 0.7, 1.2),
    (1.0, 2.0, 0.2, 0.8, 1.0, 2.0),
    (2.5, 2.0, 1.0, 1.0, 0.5, 0.5),
    (1.5, 2.0, 0.1, 0.1, 2.0, 2.2),
    (0.0, 2.0, 2.0, 1.0, 0.3, 3.0),
    (0.0, 0.5, 0.5, 1.0, 1.0, 1.5),
    (0.5, 1.0, 1.0, 0.3, 0.7, 1.2),
    (1.0, 1.5, 0.2, 0.8, 1.0, 2.0),
    (2.5, 1.0, 1.0, 1.0, 0.5, 0.5),
    (1.0, 0.5, 0.3, 0.3, 2.0, 2.2),
    (0.0, 1.5, 2.0, 1.0, 0.3, 3.0),
];

/// Relative residual of `∫ p(t, r, z) p(t′, z, s) z^{2ζ} dz = p(t + t′, r, s)`;
/// the tolerance is 1e-7 at α = 2 and 1e-5 below.
pub fn chapman_kolmogorov(cell: (f64, f64, f64, f64, f64, f64), cfg: &QuadratureConfig) -> CheckReport {
    let (zeta, alpha, t, t2, r, s) = cell;
    let name = format!("chapman-kolmogorov zeta={zeta},alpha={alpha},t={t},t'={t2},r={r},s={s}");
    attempt(&name.clone(), || {
        let params = KernelParams::new(zeta, alpha)?;
        let tol = if alpha == 2.0 { 1e-7 } else { 1e-5 };
        let res = chapman_kolmogorov_residual(params, t, t2, r, s, cfg)?;
        Ok(defect(name, res, tol))
    })
}

/// `(ζ, α, t, r, s)` compared between the subordination and spectral paths.
pub const DUAL_POINTS: [(f64, f64, f64, f64, f64); 12] = [
    (1.0, 1.0, 1.0, 0.7, 1.3),
    (0.0, 0.5, 1.0, 1.0, 1.0),
    (0.5, 1.5, 0.5, 0.4, 0.9),
    (1.0, 0.5, 2.0, 2.0, 0.5),
    (2.5, 1.0, 1.0, 1.5, 1.5),
    (1.5, 1.5, 2.0, 0.3, 2.5),
    (0.0, 2.0, 0.5, 1.0, 1.2),
    (2.0, 2.0, 1.0, 0.8, 1.6),
    (0.5, 0.8, 1.0, 1.0, 3.0),
    (1.0, 1.8, 0.5, 1.1, 1.0),
    (0.0, 1.2, 2.0, 0.2, 0.2),
    (2.5, 0.5, 0.5, 0.6, 0.7),
];

pub fn dual_path(point: (f64, f64, f64, f64, f64), cfg: &QuadratureConfig) -> CheckReport {
    let (zeta, alpha, t, r, s) = point;
    let name = format!("kernel dual path zeta={zeta},alpha={alpha},t={t},r={r},s={s}");
    attempt(&name.clone(), || {
        let params = KernelParams::new(zeta, alpha)?;
        let a = subordinated_heat(params, t, r, s)?;
        let b = subordinated_heat_spectral(params, t, r, s, cfg)?;
        Ok(CheckReport::compare(name, a, b, Tolerance::rel(1e-6)).with_evaluations(2))
    })
}

/// 20 off-diagonal `(r, s)` pairs from near-diagonal to far apart.
pub fn levy_points() -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(20);
    for r in [0.3, 1.0, 2.5, 7.0] {
        for q in [1.0001, 1.01, 1.3, 3.0, 40.0] {
            out.push((r, r * q));
        }
    }
    out
}

/// Hypergeometric ν_ζ against the elementary forms at ζ ∈ {0, 1}; worst
/// relative error over [`levy_points`].
pub fn levy_closed_form(zeta: f64, alpha: f64) -> CheckReport {
    let name = format!("levy closed form zeta={zeta},alpha={alpha}");
    attempt(&name.clone(), || {
        let params = LevyKernelParams::new(zeta, alpha)?;
        // At α = 1 the kernel interpolates across a removable singularity.
        let tol = if (alpha - 1.0).abs() < 1e-6 { 1e-6 } else { 1e-10 };
        let mut worst = 0.0f64;
        let points = levy_points();
        for &(r, s) in &points {
            let got = levy_kernel(params, r, s)?;
            let want = if zeta == 0.0 {
                levy_kernel_zeta0(alpha, r, s)?
            } else {
                levy_kernel_zeta1(alpha, r, s)?
            };
            worst = worst.max(((got - want) / want).abs());
        }
        Ok(defect(name, worst, tol).with_evaluations(points.len() as u64))
    })
}

pub const RATIO_TIMES: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// `(ζ, α, r, s)` for the small-time limit.
pub const RATIO_POINTS: [(f64, f64, f64, f64); 4] = [
    (0.0, 0.5, 1.0, 2.0),
    (1.0, 1.0, 0.7, 1.3),
    (1.0, 1.5, 1.0, 3.0),
    (2.5, 1.2, 1.5, 0.8),
];

/// `p(t, r, s)/t` at [`RATIO_TIMES`] extrapolated to `t = 0` by two
/// Richardson steps, against ν_ζ(r, s).
pub fn small_time_ratio(point: (f64, f64, f64, f64)) -> CheckReport {
    let (zeta, alpha, r, s) = point;
    let name = format!("small-t ratio zeta={zeta},alpha={alpha},r={r},s={s}");
    attempt(&name.clone(), || {
        let params = KernelParams::new(zeta, alpha)?;
        let f = RATIO_TIMES
            .iter()
            .map(|&t| Ok(subordinated_heat(params, t, r, s)? / t))
            .collect::<fraclap_core::Result<Vec<_>>>()?;
        let first = [(10.0 * f[1] - f[0]) / 9.0, (10.0 * f[2] - f[1]) / 9.0];
        let limit = (100.0 * first[1] - first[0]) / 99.0;
        let nu = levy_kernel(LevyKernelParams::new(zeta, alpha)?, r, s)?;
        Ok(CheckReport::compare(name, limit, nu, Tolerance::rel(1e-4)).with_evaluations(3))
    })
}

/// `(ζ, α, β, γ, r)` for the power moments.
pub const MOMENT_POINTS: [(f64, f64, f64, f64, f64); 6] = [
    (1.0, 2.0, 0.6, 0.0, 1.5),
    (1.0, 1.0, 0.8, 0.0, 1.0),
    (0.5, 1.5, 0.3, 0.2, 0.7),
    (2.5, 0.5, 2.0, 1.0, 2.0),
    (1.5, 1.2, 1.4, 1.0, 1.3),
    (0.0, 0.8, 0.4, -0.5, 0.9),
];

fn moment_cfg(cfg: &QuadratureConfig) -> QuadratureConfig {
    cfg.tightened(0.1)
}

/// `h_{β,γ}(r) = C^{(α)}(β, γ, ζ) r^{αβ+γ−2ζ}`.
pub fn moment(point: (f64, f64, f64, f64, f64), cfg: &QuadratureConfig) -> CheckReport {
    let (zeta, alpha, beta, gamma, r) = point;
    let name = format!("moment h zeta={zeta},alpha={alpha},beta={beta},gamma={gamma},r={r}");
    attempt(&name.clone(), || {
        let params = KernelParams::new(zeta, alpha)?;
        let h = h_beta_gamma_numeric(params, beta, gamma, r, &moment_cfg(cfg))?;
        let want = c_constant_alpha(alpha, beta, gamma, zeta)? * r.powf(alpha * beta + gamma - 2.0 * zeta);
        Ok(CheckReport::compare(name, h, want, Tolerance::rel(1e-5)))
    })
}

/// Least-squares slope of `ln h` against `ln r` over `r ∈ {0.5, 1, 2, 4}`.
pub fn moment_slope(point: (f64, f64, f64, f64, f64), cfg: &QuadratureConfig) -> CheckReport {
    let (zeta, alpha, beta, gamma, _) = point;
    let name = format!("moment slope zeta={zeta},alpha={alpha},beta={beta},gamma={gamma}");
    attempt(&name.clone(), || {
        let params = KernelParams::new(zeta, alpha)?;
        let xs = [0.5f64, 1.0, 2.0, 4.0].map(f64::ln);
        let mut ys = [0.0; 4];
        for (y, x) in ys.iter_mut().zip(xs) {
            *y = h_beta_gamma_numeric(params, beta, gamma, x.exp(), &moment_cfg(cfg))?.ln();
        }
        let mx = xs.iter().sum::<f64>() / 4.0;
        let my = ys.iter().sum::<f64>() / 4.0;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let want = alpha * beta + gamma - 2.0 * zeta;
        Ok(CheckReport::compare(name, sxy / sxx, want, Tolerance::abs(1e-3)).with_evaluations(4))
    })
}

/// `(ζ, α, γ, η)` with `β = (2ζ − γ − η)/α > 1`.
pub const Q_POINTS: [(f64, f64, f64, f64); 5] = [
    (1.0, 1.0, 0.0, 0.5),
    (1.0, 0.5, 0.0, 1.0),
    (2.5, 1.5, 1.0, 1.2),
    (1.5, 2.0, 0.0, 0.7),
    (0.5, 0.4, -0.3, 0.6),
];

/// The closed form of `q_{β,γ}` against `Ψ_ζ(η) r^{−α}` at `r = 1.7`.
pub fn q_matches_psi(point: (f64, f64, f64, f64)) -> CheckReport {
    let (zeta, alpha, gamma, eta) = point;
    let name = format!("q equals psi zeta={zeta},alpha={alpha},gamma={gamma},eta={eta}");
    attempt(&name.clone(), || {
        let params = KernelParams::new(zeta, alpha)?;
        let r = 1.7;
        let beta = beta_for_eta(params, gamma, eta);
        let q = q_beta_gamma(params, beta, gamma, r)?;
        Ok(CheckReport::compare(name, q, psi(zeta, alpha, eta)? * r.powf(-alpha), Tolerance::rel(1e-10)))
    })
}

/// `(β − 1) h_{β−1,γ}/h_{β,γ}` by quadrature against the closed form of
/// `q_{β,γ}`.
pub fn q_by_quadrature(point: (f64, f64, f64, f64), cfg: &QuadratureConfig) -> CheckReport {
    let (zeta, alpha, gamma, eta) = point;
    let name = format!("q by quadrature zeta={zeta},alpha={alpha},gamma={gamma},eta={eta}");
    attempt(&name.clone(), || {
        let params = KernelParams::new(zeta, alpha)?;
        let r = 1.7;
        let beta = beta_for_eta(params, gamma, eta);
        let c = moment_cfg(cfg);
        let top = h_beta_gamma_numeric(params, beta - 1.0, gamma, r, &c)?;
        let bottom = h_beta_gamma_numeric(params, beta, gamma, r, &c)?;
        let q = q_beta_gamma(params, beta, gamma, r)?;
        Ok(CheckReport::compare(name, (beta - 1.0) * top / bottom, q, Tolerance::rel(1e-5)).with_evaluations(2))
    })
}

pub fn suite(cfg: &QuadratureConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for zeta in MASS_ZETAS {
        for alpha in MASS_ALPHAS {
            for t in MASS_TIMES {
                out.push(normalization(zeta, alpha, t, cfg));
            }
        }
    }
    out.extend(CK_CELLS.iter().map(|&c| chapman_kolmogorov(c, cfg)));
    let kcfg = kernel_config();
    out.extend(DUAL_POINTS.iter().map(|&p| dual_path(p, &kcfg)));
    for zeta in [0.0, 1.0] {
        for alpha in [0.5, 1.0, 1.5] {
            out.push(levy_closed_form(zeta, alpha));
        }
    }
    out.extend(RATIO_POINTS.iter().map(|&p| small_time_ratio(p)));
    out.extend(MOMENT_POINTS.iter().map(|&p| moment(p, cfg)));
    out.extend(MOMENT_POINTS[..3].iter().map(|&p| moment_slope(p, cfg)));
    out.extend(Q_POINTS.iter().map(|&p| q_matches_psi(p)));
    out.extend(Q_POINTS.iter().map(|&p| q_by_quadrature(p, cfg)));
    out
}

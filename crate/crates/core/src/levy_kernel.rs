//! The jump kernel `ν_ζ(r, s) = lim_{t→0} p_ζ^{(α)}(t, r, s)/t` in closed
//! hypergeometric form, plus elementary forms for ζ = 0 and ζ = 1.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::specfun::{gamma, gamma_ratio, sin_pi, Hyp2F1};

/// Order `zeta > −1/2` and stability `alpha ∈ (0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevyKernelParams {
    pub zeta: f64,
    pub alpha: f64,
}

impl LevyKernelParams {
    pub fn new(zeta: f64, alpha: f64) -> Result<Self> {
        let p = Self { zeta, alpha };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.zeta > -0.5) || !self.zeta.is_finite() {
            return Err(domain("zeta must exceed -1/2"));
        }
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err(domain("the jump kernel needs alpha in (0, 2)"));
        }
        Ok(())
    }
}

/// Half-width of the window around α = 1 where the hypergeometric
/// connection formula degenerates; the kernel is interpolated across it.
const ALPHA_ONE_GAP: f64 = 1e-6;

/// `ν_ζ(r, s)`. The diagonal `r = s` is reported as an error.
pub fn levy_kernel(params: LevyKernelParams, r: f64, s: f64) -> Result<f64> {
    LevyKernel::new(params)?.eval(r, s)
}

/// `ν_ζ(r, r − w)`, taking the offset `w` as exact.
pub fn levy_kernel_with_gap(params: LevyKernelParams, r: f64, w: f64) -> Result<f64> {
    LevyKernel::new(params)?.eval_with_gap(r, w)
}

/// One branch of the closed form at a fixed α.
#[derive(Clone, Copy, Debug)]
struct Branch {
    exponent: f64,
    prefactor: f64,
    hyp: Hyp2F1,
}

impl Branch {
    fn new(zeta: f64, alpha: f64) -> Result<Self> {
        let e = zeta + 0.5 * alpha + 0.5;
        let prefactor = 2f64.powf(1.0 + alpha) * gamma(0.5 * alpha + 1.0)? * sin_pi(0.5 * alpha)
            / PI
            * gamma(e)?;
        Ok(Self {
            exponent: e,
            prefactor,
            hyp: Hyp2F1::new(0.5 * e, 0.5 * (e + 1.0), zeta + 0.5),
        })
    }

    fn eval(&self, sum: f64, z: f64, one_minus_z: f64) -> Result<f64> {
        Ok(self.prefactor * sum.powf(-self.exponent) * self.hyp.eval_with_complement(z, one_minus_z)?)
    }
}

/// Evaluator for `ν_ζ` with the parameter-dependent constants computed once.
#[derive(Clone, Copy, Debug)]
pub struct LevyKernel {
    params: LevyKernelParams,
    lower: Branch,
    /// Second branch and interpolation weight near α = 1.
    upper: Option<(Branch, f64)>,
}

impl LevyKernel {
    pub fn new(params: LevyKernelParams) -> Result<Self> {
        params.validate()?;
        let gap = params.alpha - 1.0;
        if gap.abs() < ALPHA_ONE_GAP {
            // c − a − b = −(1 + α)/2 is an integer at α = 1; the kernel is
            // smooth in α, so interpolate between the two sides.
            let lo = Branch::new(params.zeta, 1.0 - ALPHA_ONE_GAP)?;
            let hi = Branch::new(params.zeta, 1.0 + ALPHA_ONE_GAP)?;
            let t = 0.5 * (1.0 + gap / ALPHA_ONE_GAP);
            return Ok(Self {
                params,
                lower: lo,
                upper: Some((hi, t)),
            });
        }
        Ok(Self {
            params,
            lower: Branch::new(params.zeta, params.alpha)?,
            upper: None,
        })
    }

    pub fn params(&self) -> LevyKernelParams {
        self.params
    }

    pub fn eval(&self, r: f64, s: f64) -> Result<f64> {
        self.eval_parts(r, s, r - s)
    }

    /// `ν_ζ(r, r − w)`. Near the diagonal this avoids the rounding in `r − s`
    /// that the two-point form would see.
    pub fn eval_with_gap(&self, r: f64, w: f64) -> Result<f64> {
        self.eval_parts(r, r - w, w)
    }

    fn eval_parts(&self, r: f64, s: f64, w: f64) -> Result<f64> {
        if !(r > 0.0 && s > 0.0 && r.is_finite() && s.is_finite()) {
            return Err(domain("jump kernel arguments must be positive"));
        }
        if w == 0.0 {
            return Err(Error::DiagonalSingularity(r));
        }
        let (r2, s2) = (r * r, s * s);
        let sum = r2 + s2;
        let diff = w * (r + s) / sum;
        let one_minus_z = diff * diff;
        let z = if one_minus_z < 0.5 {
            1.0 - one_minus_z
        } else {
            4.0 * r2 * s2 / (sum * sum)
        };
        let lo = self.lower.eval(sum, z, one_minus_z)?;
        match self.upper {
            None => Ok(lo),
            Some((branch, t)) => {
                let hi = branch.eval(sum, z, one_minus_z)?;
                Ok(lo + t * (hi - lo))
            }
        }
    }
}

/// `(r + s)^{−2ζ} |r − s|^{−1−α}`, the two-sided comparison shape of `ν_ζ`.
pub fn levy_envelope(params: LevyKernelParams, r: f64, s: f64) -> Result<f64> {
    params.validate()?;
    if r == s {
        return Err(Error::DiagonalSingularity(r));
    }
    Ok((r + s).powf(-2.0 * params.zeta) * (r - s).abs().powf(-1.0 - params.alpha))
}

/// `A_{d,−α} = 2^α Γ((d+α)/2) / (π^{d/2} |Γ(−α/2)|)`, the constant in front of
/// `|x − y|^{−d−α}`.
pub fn aconstant(d: u32, alpha: f64) -> Result<f64> {
    if d == 0 || !(alpha > 0.0 && alpha < 2.0) {
        return Err(domain("A constant needs d >= 1 and alpha in (0, 2)"));
    }
    let df = d as f64;
    let ratio = gamma_ratio(&[0.5 * (df + alpha)], &[-0.5 * alpha])?;
    Ok(2f64.powf(alpha) * ratio.abs() / PI.powf(0.5 * df))
}

/// `ν_0(r, s) = A_{1,−α} (|r−s|^{−1−α} + (r+s)^{−1−α})`.
pub fn levy_kernel_zeta0(alpha: f64, r: f64, s: f64) -> Result<f64> {
    let a = aconstant(1, alpha)?;
    Ok(a * ((r - s).abs().powf(-1.0 - alpha) + (r + s).powf(-1.0 - alpha)))
}

/// `ν_1(r, s) = A_{3,−α} · 2π/(1+α) · (|r−s|^{−1−α} − (r+s)^{−1−α})/(rs)`.
pub fn levy_kernel_zeta1(alpha: f64, r: f64, s: f64) -> Result<f64> {
    let a = aconstant(3, alpha)?;
    let p = -1.0 - alpha;
    Ok(a * 2.0 * PI / (1.0 + alpha) * ((r - s).abs().powf(p) - (r + s).powf(p)) / (r * s))
}

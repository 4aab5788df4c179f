//! Identity checks over the core numerics. Each check returns a
//! [`CheckReport`]; evaluation errors become failing reports instead of
//! aborting the caller.

use std::time::Instant;

use fraclap_core::Result;

use crate::report::CheckReport;

pub mod angular;
pub mod constants;
pub mod forms;
pub mod gsr;
pub mod kernels;
pub mod subordinator;

pub use angular::{angular_projection, AngularKernel};
pub use forms::{hardy_quotient, plateau_profile, plateau_quotient, random_bump, PlateauSpectrum};
pub use gsr::{alpha2_identity_check, channel_synthesis, gsr_residual};

/// Runs `check`, stamps the wall time, and turns an error into a failed report.
pub(crate) fn attempt(name: &str, check: impl FnOnce() -> Result<CheckReport>) -> CheckReport {
    let start = Instant::now();
    match check() {
        Ok(r) => r.timed(start),
        Err(e) => CheckReport::failed(name, e).timed(start),
    }
}

/// A report on a quantity that should be zero: `lhs` is the observed
/// defect, `rhs` is zero, and the tolerance is absolute.
pub(crate) fn defect(name: impl Into<String>, value: f64, tol: f64) -> CheckReport {
    CheckReport::compare(name, value, 0.0, crate::report::Tolerance::abs(tol))
}

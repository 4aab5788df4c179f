//! Numerical kernels for the fractional Laplacian with a Hardy potential,
//! restricted to a single angular momentum channel.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its arguments; file formats, the CLI and the check batteries
//! live in the `fraclap` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod sum;

pub mod hardy;
pub mod heat_kernels;
pub mod levy_kernel;
pub mod quad;
pub mod radial;
pub mod specfun;
pub mod subordinator;
pub mod transforms;

pub use error::{Error, Result};
pub use heat_kernels::{Channel, KernelParams};
pub use levy_kernel::{LevyKernel, LevyKernelParams};
pub use quad::{QuadError, QuadResult, QuadratureConfig};
pub use radial::RadialFunction;
pub use subordinator::StableIndex;

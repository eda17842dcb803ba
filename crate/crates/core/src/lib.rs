//! Fourier-space solution theory for the one-dimensional dissipative Timoshenko system
//!
//! ```text
//! w_tt - w_xx + psi_x = 0
//! psi_tt - a^2 psi_xx - (w_x - psi) + psi_t = 0
//! ```
//!
//! Per frequency the system reduces to a scalar fourth-order ODE whose
//! characteristic quartic is solved numerically and cross-checked against
//! small- and large-frequency expansions. Everything above the per-frequency
//! layer (norms, profiles, rate fits, the semilinear stepper) is built on
//! [`spectral_core`].
//!
//! The crate is `no_std` and only needs `alloc`. FFTs for the semilinear
//! stepper are supplied by the caller through [`semilinear::Fft`].
//!
//! Fourier convention: `f̂(ξ) = ∫ f(x) e^{-ixξ} dx`, so `‖f‖² = (2π)⁻¹ ‖f̂‖²`.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod data;
pub mod experiments;
pub mod norms_rates;
pub mod profiles;
pub mod quadrature;
pub mod semilinear;
pub mod spectral_core;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use spectral_core::WaveSpeed;

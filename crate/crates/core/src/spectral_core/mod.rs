//! Exact per-frequency solution of the linear system.
//!
//! After a partial Fourier transform both `ŵ` and `ψ̂` solve the scalar ODE
//!
//! ```text
//! u'''' + u''' + [1 + (1+a²)ξ²] u'' + ξ² u' + a² ξ⁴ u = 0
//! ```
//!
//! with branch-dependent initial data ([`InducedData`]). The solution is
//! `Σ d_j e^{λ_j t}` with Cramer coefficients `d_j` built from closed-form
//! Vandermonde determinants ([`eval_fourier_solution`]), and is checked against
//! an independent Taylor-series integrator ([`ode_oracle`]).

mod expansions;
mod induced;
mod oracle;
mod representation;
mod roots;
mod state;

pub use expansions::{expand_roots_large, expand_roots_large_in, expand_roots_small, expand_roots_small_in};
pub use induced::{initial_data_transform, Branch, InducedData};
pub use oracle::ode_oracle;
pub use representation::{eval_fourier_solution, Representation};
pub use roots::{
    gap_tol, quartic_coefficients, solve_quartic, solve_quartic_in, track_roots, RootQuartet,
};
pub use state::{spectral_state, zero_mode_state, ModalSolution, SpectralState};

use crate::{Error, Result};
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// Wave speed `a > 1/2` together with `c_a = √(4a²−1)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeed {
    a: f64,
    c_a: f64,
}

impl WaveSpeed {
    pub fn new(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.5) {
            return Err(Error::InvalidWaveSpeed(a));
        }
        Ok(Self {
            a,
            c_a: (4.0 * a * a - 1.0).sqrt() / 2.0,
        })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn c_a(&self) -> f64 {
        self.c_a
    }

    pub fn equal_speeds(&self) -> bool {
        self.a == 1.0
    }
}

/// Frequency zones `|ξ| ≤ ε₀`, `ε₀ < |ξ| < N₀`, `|ξ| ≥ N₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Interior,
    Bounded,
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zones {
    pub eps0: f64,
    pub n0: f64,
}

impl Default for Zones {
    fn default() -> Self {
        Self { eps0: 0.1, n0: 10.0 }
    }
}

impl Zones {
    pub fn classify(&self, xi: f64) -> Zone {
        let r = xi.abs();
        if r <= self.eps0 {
            Zone::Interior
        } else if r >= self.n0 {
            Zone::Exterior
        } else {
            Zone::Bounded
        }
    }
}

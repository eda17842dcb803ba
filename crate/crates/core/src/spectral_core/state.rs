use super::{
    initial_data_transform, solve_quartic, Branch, Representation, RootQuartet, WaveSpeed,
};
use crate::Result;
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// `(ŵ, ∂ₜŵ, ψ̂, ∂ₜψ̂)` at one `(t, ξ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralState {
    pub w_hat: Complex64,
    pub dt_w_hat: Complex64,
    pub psi_hat: Complex64,
    pub dt_psi_hat: Complex64,
    pub t: f64,
    pub xi: f64,
}

impl SpectralState {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.w_hat, self.dt_w_hat, self.psi_hat, self.dt_psi_hat]
    }
}

/// Both branches at one frequency, ready for evaluation at many times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalSolution {
    pub roots: RootQuartet,
    pub w: Representation,
    pub psi: Representation,
}

impl ModalSolution {
    pub fn new(a: WaveSpeed, xi: f64, data_hat: [Complex64; 4]) -> Result<Self> {
        let roots = solve_quartic(a, xi)?;
        Self::with_roots(a, roots, data_hat)
    }

    pub fn with_roots(a: WaveSpeed, roots: RootQuartet, data_hat: [Complex64; 4]) -> Result<Self> {
        let xi = roots.xi;
        let w = Representation::new(&roots, &initial_data_transform(Branch::W, data_hat, a, xi))?;
        let psi =
            Representation::new(&roots, &initial_data_transform(Branch::Psi, data_hat, a, xi))?;
        Ok(Self { roots, w, psi })
    }

    pub fn state(&self, t: f64) -> SpectralState {
        SpectralState {
            w_hat: self.w.eval(t, 0),
            dt_w_hat: self.w.eval(t, 1),
            psi_hat: self.psi.eval(t, 0),
            dt_psi_hat: self.psi.eval(t, 1),
            t,
            xi: self.roots.xi,
        }
    }
}

/// Solution of the Fourier-space Cauchy problem at `(t, ξ)` for data
/// `(ŵ₀, ŵ₁, ψ̂₀, ψ̂₁)`.
pub fn spectral_state(
    a: WaveSpeed,
    xi: f64,
    t: f64,
    data_hat: [Complex64; 4],
) -> Result<SpectralState> {
    Ok(ModalSolution::new(a, xi, data_hat)?.state(t))
}

/// The `ξ = 0` mode in closed form: `ŵ = ŵ₀ + tŵ₁` and `ψ̂'' + ψ̂' + ψ̂ = 0`.
pub fn zero_mode_state(data_hat: [Complex64; 4], t: f64) -> SpectralState {
    let [w0, w1, p0, p1] = data_hat;
    let b = 3.0.sqrt() / 2.0;
    let (s, c) = (b * t).sin_cos();
    let e = (-0.5 * t).exp();
    let k = (p1 + p0 * 0.5) / b;
    let psi = (p0 * c + k * s) * e;
    let dpsi = ((k * b - p0 * 0.5) * c - (p0 * b + k * 0.5) * s) * e;
    SpectralState {
        w_hat: w0 + w1 * t,
        dt_w_hat: w1,
        psi_hat: psi,
        dt_psi_hat: dpsi,
        t,
        xi: 0.0,
    }
}

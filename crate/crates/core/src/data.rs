//! Initial data built from analytic generators with closed-form transforms.

use crate::quadrature::adaptive;
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// Analytic initial-data profiles. With `g(x) = A e^{-x²/σ²}`:
/// `Gaussian` is `g`, `DGaussian` is `g'`, `Ricker` is `g''`, and
/// `BoxMollified` is `(A/2)[erf(x+w) − erf(x−w)]`, the indicator of `[−w, w]`
/// smoothed by the unit heat kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Zero,
    Gaussian { sigma: f64, amp: f64 },
    DGaussian { sigma: f64, amp: f64 },
    Ricker { sigma: f64, amp: f64 },
    BoxMollified { half_width: f64, amp: f64 },
}

impl Generator {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Self::Zero => 0.0,
            Self::Gaussian { sigma, amp } => amp * (-(x * x) / (sigma * sigma)).exp(),
            Self::DGaussian { sigma, amp } => {
                let s2 = sigma * sigma;
                -2.0 * amp * x / s2 * (-(x * x) / s2).exp()
            }
            Self::Ricker { sigma, amp } => {
                let s2 = sigma * sigma;
                amp * (4.0 * x * x / (s2 * s2) - 2.0 / s2) * (-(x * x) / s2).exp()
            }
            Self::BoxMollified { half_width, amp } => {
                0.5 * amp * (libm::erf(x + half_width) - libm::erf(x - half_width))
            }
        }
    }

    /// `f̂(ξ) = ∫ f(x) e^{-ixξ} dx`.
    pub fn fourier(&self, xi: f64) -> Complex64 {
        let gauss = |sigma: f64, amp: f64| amp * sigma * PI.sqrt() * (-0.25 * sigma * sigma * xi * xi).exp();
        match *self {
            Self::Zero => Complex64::new(0.0, 0.0),
            Self::Gaussian { sigma, amp } => Complex64::new(gauss(sigma, amp), 0.0),
            Self::DGaussian { sigma, amp } => Complex64::new(0.0, xi * gauss(sigma, amp)),
            Self::Ricker { sigma, amp } => Complex64::new(-xi * xi * gauss(sigma, amp), 0.0),
            Self::BoxMollified { half_width, amp } => {
                let sinc = if (half_width * xi).abs() < 1e-8 {
                    half_width
                } else {
                    (half_width * xi).sin() / xi
                };
                Complex64::new(2.0 * amp * sinc * (-0.25 * xi * xi).exp(), 0.0)
            }
        }
    }

    /// Upper bound for `|f̂(ξ)|`.
    pub fn spectral_envelope(&self, xi: f64) -> f64 {
        let x = xi.abs();
        match *self {
            Self::BoxMollified { half_width, amp } => {
                2.0 * amp.abs() * half_width.min(1.0 / x.max(1e-300)) * (-0.25 * x * x).exp()
            }
            _ => self.fourier(x).norm(),
        }
    }

    /// Closed-form `P = ∫ f`.
    pub fn mean(&self) -> f64 {
        match *self {
            Self::Zero | Self::DGaussian { .. } | Self::Ricker { .. } => 0.0,
            Self::Gaussian { sigma, amp } => amp * sigma * PI.sqrt(),
            Self::BoxMollified { half_width, amp } => 2.0 * amp * half_width,
        }
    }

    /// Closed-form `Q = ∫ x f`.
    pub fn first_moment(&self) -> f64 {
        match *self {
            Self::DGaussian { sigma, amp } => -amp * sigma * PI.sqrt(),
            _ => 0.0,
        }
    }

    /// Radius beyond which `(1+|x|)² |f|` carries less than `1e-30` of mass.
    pub fn support_radius(&self) -> f64 {
        match *self {
            Self::Zero => 1.0,
            Self::Gaussian { sigma, .. } | Self::DGaussian { sigma, .. } | Self::Ricker { sigma, .. } => {
                10.0 * sigma + 4.0
            }
            Self::BoxMollified { half_width, .. } => half_width + 12.0,
        }
    }

    /// Bound on `∫_{|x|>r} (1+|x|)² |f(x)| dx`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        // every generator is dominated by C (1+x²)² e^{-(x−s)²/σ²} for suitable s, σ
        let (shift, width, scale) = match *self {
            Self::Zero => return 0.0,
            Self::Gaussian { sigma, amp } => (0.0, sigma, amp.abs()),
            Self::DGaussian { sigma, amp } => (0.0, sigma, 2.0 * amp.abs() / sigma),
            Self::Ricker { sigma, amp } => (0.0, sigma, 6.0 * amp.abs() / (sigma * sigma)),
            Self::BoxMollified { half_width, amp } => (half_width, 1.0, amp.abs()),
        };
        let d = (r - shift).max(0.0);
        let poly = (2.0 + r + width).powi(4);
        2.0 * scale * poly * width * PI.sqrt() * libm::erfc(d / width)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Self::Zero)
    }
}

/// `P = ∫f`, `Q = ∫x f` and `M2 = ∫x²|f|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub p: f64,
    pub q: f64,
    pub m2: f64,
}

/// Moments by adaptive quadrature on the generator's effective support.
pub fn moments(f: &Generator) -> Result<Moments> {
    if f.is_zero() {
        return Ok(Moments { p: 0.0, q: 0.0, m2: 0.0 });
    }
    let r = f.support_radius();
    let tail = f.tail_bound(r);
    if tail > 1e-12 {
        return Err(Error::TailDivergence(tail));
    }
    let integrate = |g: &mut dyn FnMut(f64) -> f64| -> f64 {
        let mut h = |x: f64| g(x);
        // split at the origin and at the data scale so panels see smooth pieces
        let mut s = 0.0;
        let cuts = [-r, -r / 4.0, 0.0, r / 4.0, r];
        for w in cuts.windows(2) {
            s += adaptive(&mut h, w[0], w[1], 1e-14, 1e-13);
        }
        s
    };
    let p = integrate(&mut |x| f.eval(x));
    let q = integrate(&mut |x| x * f.eval(x));
    let m2 = integrate(&mut |x| x * x * f.eval(x).abs());
    Ok(Moments { p, q, m2 })
}

/// The four data functions `(w₀, w₁, ψ₀, ψ₁)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialData {
    pub w0: Generator,
    pub w1: Generator,
    pub psi0: Generator,
    pub psi1: Generator,
}

impl InitialData {
    pub fn zero() -> Self {
        Self {
            w0: Generator::Zero,
            w1: Generator::Zero,
            psi0: Generator::Zero,
            psi1: Generator::Zero,
        }
    }

    /// Only `w₁` non-zero.
    pub fn w1_only(w1: Generator) -> Self {
        Self { w1, ..Self::zero() }
    }

    pub fn components(&self) -> [Generator; 4] {
        [self.w0, self.w1, self.psi0, self.psi1]
    }

    /// `(ŵ₀, ŵ₁, ψ̂₀, ψ̂₁)(ξ)`.
    pub fn transforms(&self, xi: f64) -> [Complex64; 4] {
        self.components().map(|g| g.fourier(xi))
    }

    pub fn spectral_envelope(&self, xi: f64) -> f64 {
        self.components().iter().map(|g| g.spectral_envelope(xi)).sum()
    }

    /// Frequency beyond which every transform is below `rel` of its peak.
    pub fn spectral_cutoff(&self, rel: f64) -> f64 {
        let peak = (0..200)
            .map(|i| self.spectral_envelope(0.05 * i as f64))
            .fold(0.0, f64::max);
        if peak == 0.0 {
            return 1.0;
        }
        let mut x = 1.0;
        while x < 1e4 {
            let tail = (0..8)
                .map(|k| self.spectral_envelope(x * (1.0 + 0.125 * k as f64)))
                .fold(0.0, f64::max);
            if tail < rel * peak {
                return x;
            }
            x *= 1.1;
        }
        x
    }

    /// Sampled values on `grid` for each component.
    pub fn sample(&self, grid: &[f64]) -> [Vec<f64>; 4] {
        self.components()
            .map(|g| grid.iter().map(|&x| g.eval(x)).collect())
    }

    pub fn scaled(&self, eps: f64) -> Self {
        let s = |g: Generator| match g {
            Generator::Zero => Generator::Zero,
            Generator::Gaussian { sigma, amp } => Generator::Gaussian { sigma, amp: amp * eps },
            Generator::DGaussian { sigma, amp } => Generator::DGaussian { sigma, amp: amp * eps },
            Generator::Ricker { sigma, amp } => Generator::Ricker { sigma, amp: amp * eps },
            Generator::BoxMollified { half_width, amp } => {
                Generator::BoxMollified { half_width, amp: amp * eps }
            }
        };
        Self {
            w0: s(self.w0),
            w1: s(self.w1),
            psi0: s(self.psi0),
            psi1: s(self.psi1),
        }
    }

    /// Closed-form `P_{w₁}`, `Q_{w₁}` and `P_{ψ₀+ψ₁}` used by the profiles.
    pub fn profile_moments(&self) -> (f64, f64, f64) {
        (
            self.w1.mean(),
            self.w1.first_moment(),
            self.psi0.mean() + self.psi1.mean(),
        )
    }
}

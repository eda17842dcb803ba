//! The diffusion-plate kernel `G(t,x)` and the large-time profiles
//!
//! ```text
//! w^pf = G P_{w₁} − ∂ₓG Q_{w₁} − ∂ₓG P_{ψ₀+ψ₁}
//! ψ^pf = ∂ₓG P_{w₁}
//! ```

use crate::data::{moments, InitialData};
use crate::quadrature::{composite, GaussLegendre};
use crate::spectral_core::WaveSpeed;
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// `Ĝ(t,ξ) = sin(c_a ξ² t)/(c_a ξ²) · e^{-ξ²t/2}`, with `Ĝ(t,0) = t`.
pub fn ghat(a: WaveSpeed, t: f64, xi: f64) -> f64 {
    let x2 = xi * xi;
    let z = a.c_a() * x2 * t;
    let damp = (-0.5 * x2 * t).exp();
    if z.abs() < 1e-4 {
        t * (1.0 - z * z / 6.0) * damp
    } else {
        z.sin() / (a.c_a() * x2) * damp
    }
}

/// Profile transforms `(ŵ^pf, ψ̂^pf)` at one frequency.
pub fn profile_hat(a: WaveSpeed, t: f64, xi: f64, pq: (f64, f64, f64)) -> (Complex64, Complex64) {
    let (p, q, p_psi) = pq;
    let g = ghat(a, t, xi);
    let ixg = Complex64::new(0.0, xi * g);
    (g * p - ixg * (q + p_psi), ixg * p)
}

/// Symmetric uniform grid `x_j = −L + jL/n`, `j = 0..=2n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialGrid {
    pub x: Vec<f64>,
}

impl SpatialGrid {
    pub fn symmetric(half_extent: f64, n: usize) -> Self {
        let h = half_extent / n as f64;
        let x = (0..=2 * n)
            .map(|j| {
                let k = j as i64 - n as i64;
                k as f64 * h
            })
            .collect();
        Self { x }
    }

    /// Extent `12·max(√t, 1)` with spacing fine enough for the kernel's
    /// oscillation at time `t`.
    pub fn for_time(t: f64, n: usize) -> Self {
        Self::symmetric(12.0 * t.sqrt().max(1.0), n)
    }

    pub fn spacing(&self) -> f64 {
        if self.x.len() < 2 {
            0.0
        } else {
            self.x[1] - self.x[0]
        }
    }
}

/// `G`, `∂ₓG` and the profiles on a spatial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileEval {
    pub t: f64,
    pub x: Vec<f64>,
    pub g: Vec<f64>,
    pub dg: Vec<f64>,
    pub w_pf: Vec<f64>,
    pub psi_pf: Vec<f64>,
}

/// `Ξ_max = max(10, 8√(ln 10¹⁰)/√t)`.
pub fn kernel_cutoff(t: f64) -> f64 {
    (8.0 * (1e10f64).ln().sqrt() / t.sqrt()).max(10.0)
}

/// `∫_Ξ^∞ |Ĝ|² dξ ≤ √π erfc(Ξ√t) / (2 c_a² Ξ⁴ √t)`.
fn kernel_tail(a: WaveSpeed, t: f64, xi_max: f64) -> f64 {
    let ca = a.c_a();
    PI.sqrt() * libm::erfc(xi_max * t.sqrt()) / (2.0 * ca * ca * xi_max.powi(4) * t.sqrt())
}

/// Quadrature nodes on `[0, Ξ]` resolving quarter periods of `sin(c_a ξ² t)`
/// and of `cos(ξ x)` for `|x| ≤ x_max`.
fn kernel_breaks(a: WaveSpeed, t: f64, xi_max: f64, x_max: f64) -> Vec<f64> {
    let quarter_sq = PI / (2.0 * a.c_a() * t);
    let dx = (PI / (2.0 * x_max.max(1.0))).min(0.05);
    // beyond √(1400/t) the factor e^{-ξ²t/2} underflows to zero
    let top = xi_max.min((1400.0 / t).sqrt());
    let mut b = Vec::new();
    let mut xi: f64 = 0.0;
    let mut quarter = 1u64;
    while xi < top {
        b.push(xi);
        let mut next = (quarter as f64 * quarter_sq).sqrt();
        while next <= xi {
            quarter += 1;
            next = (quarter as f64 * quarter_sq).sqrt();
        }
        if xi + dx < next {
            xi += dx;
        } else {
            xi = next;
            quarter += 1;
        }
    }
    b.push(top);
    b
}

/// `G(t,·)` and `∂ₓG(t,·)` by cosine and sine transforms of `Ĝ`.
pub fn g_kernel(a: WaveSpeed, t: f64, grid: &SpatialGrid) -> Result<ProfileEval> {
    g_kernel_with(a, t, grid, kernel_cutoff(t))
}

pub fn g_kernel_with(a: WaveSpeed, t: f64, grid: &SpatialGrid, xi_max: f64) -> Result<ProfileEval> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter("kernel time must be positive"));
    }
    let rule = GaussLegendre::new(16);
    let total = composite(&rule, &kernel_breaks(a, t, xi_max.min(kernel_cutoff(t)), 0.0), |x| {
        ghat(a, t, x).powi(2)
    });
    let tail = kernel_tail(a, t, xi_max);
    if tail > 1e-8 * total {
        return Err(Error::Resolution {
            cutoff: xi_max,
            tail: tail / total,
        });
    }
    let x_max = grid.x.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let breaks = kernel_breaks(a, t, xi_max, x_max);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for w in breaks.windows(2) {
        rule.push_panel(w[0], w[1], &mut nodes, &mut weights);
    }
    let gh: Vec<f64> = nodes.iter().map(|&xi| ghat(a, t, xi)).collect();
    let mut g = Vec::with_capacity(grid.x.len());
    let mut dg = Vec::with_capacity(grid.x.len());
    for &x in &grid.x {
        let (mut c, mut s) = (0.0, 0.0);
        for ((xi, w), gv) in nodes.iter().zip(&weights).zip(&gh) {
            let (sn, cs) = (xi * x).sin_cos();
            c += w * gv * cs;
            s += w * gv * xi * sn;
        }
        g.push(c / PI);
        dg.push(-s / PI);
    }
    Ok(ProfileEval {
        t,
        x: grid.x.clone(),
        g,
        dg,
        w_pf: Vec::new(),
        psi_pf: Vec::new(),
    })
}

fn with_profiles(mut k: ProfileEval, data: &InitialData) -> Result<ProfileEval> {
    let p = moments(&data.w1)?.p;
    let q = moments(&data.w1)?.q;
    let p_psi = moments(&data.psi0)?.p + moments(&data.psi1)?.p;
    k.w_pf = k
        .g
        .iter()
        .zip(&k.dg)
        .map(|(g, dg)| g * p - dg * q - dg * p_psi)
        .collect();
    k.psi_pf = k.dg.iter().map(|dg| dg * p).collect();
    Ok(k)
}

/// `w^pf(t,·)` on `grid`; the result also carries `G`, `∂ₓG` and `ψ^pf`.
pub fn profile_w(a: WaveSpeed, t: f64, grid: &SpatialGrid, data: &InitialData) -> Result<ProfileEval> {
    with_profiles(g_kernel(a, t, grid)?, data)
}

/// `ψ^pf(t,·)` on `grid`; identical evaluation to [`profile_w`].
pub fn profile_psi(
    a: WaveSpeed,
    t: f64,
    grid: &SpatialGrid,
    data: &InitialData,
) -> Result<ProfileEval> {
    profile_w(a, t, grid, data)
}

/// Trapezoidal `‖f‖_{L²}` of grid samples.
pub fn grid_l2(grid: &SpatialGrid, f: &[f64]) -> f64 {
    let h = grid.spacing();
    let n = f.len();
    let mut s: f64 = f.iter().map(|v| v * v).sum();
    if n > 0 {
        s -= 0.5 * (f[0] * f[0] + f[n - 1] * f[n - 1]);
    }
    (s * h).sqrt()
}

/// `‖Ĝ(t,·)‖_{L²}` normalised to physical space, `(π⁻¹ ∫₀^∞ Ĝ²)^{1/2}`.
pub fn g_norm_spectral(a: WaveSpeed, t: f64) -> f64 {
    let rule = GaussLegendre::new(16);
    let b = kernel_breaks(a, t, kernel_cutoff(t), 0.0);
    (composite(&rule, &b, |x| ghat(a, t, x).powi(2)) / PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghat_branches_agree_at_the_switch() {
        let a = WaveSpeed::new(1.0).unwrap();
        let t = 3.0;
        let xi = (1e-4 / (a.c_a() * t)).sqrt();
        let z = a.c_a() * xi * xi * t;
        let series = t * (1.0 - z * z / 6.0) * (-0.5 * xi * xi * t).exp();
        let direct = z.sin() / (a.c_a() * xi * xi) * (-0.5 * xi * xi * t).exp();
        assert!((series - direct).abs() <= 1e-12 * direct.abs());
    }
}

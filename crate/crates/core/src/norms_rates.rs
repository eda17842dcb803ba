//! Plancherel norms, frequency grids, the oscillatory integral `I(t;k)`,
//! smooth frequency cutoffs and log-log power-law fits.

use crate::data::{moments, Generator};
use crate::quadrature::{adaptive, GaussLegendre};
use crate::spectral_core::{solve_quartic, WaveSpeed};
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// C^∞ step: 0 for `u ≤ 0`, 1 for `u ≥ 1`, built from `h(u) = e^{-1/u}`.
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let h = |v: f64| (-1.0 / v).exp();
    let (p, q) = (h(u), h(1.0 - u));
    p / (p + q)
}

/// Interior, bounded and exterior frequency cutoffs.
///
/// `χ_int = 1` on `|ξ| ≤ ε₀/2` and vanishes for `|ξ| ≥ ε₀`; `χ_ext` vanishes
/// for `|ξ| ≤ N₀` and equals 1 for `|ξ| ≥ 2N₀`; `χ_bdd` is the remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffFamily {
    pub eps0: f64,
    pub n0: f64,
}

impl Default for CutoffFamily {
    fn default() -> Self {
        Self { eps0: 0.1, n0: 10.0 }
    }
}

impl CutoffFamily {
    pub fn chi_int(&self, xi: f64) -> f64 {
        let h = 0.5 * self.eps0;
        1.0 - smooth_step((xi.abs() - h) / h)
    }

    pub fn chi_ext(&self, xi: f64) -> f64 {
        smooth_step((xi.abs() - self.n0) / self.n0)
    }

    pub fn chi_bdd(&self, xi: f64) -> f64 {
        1.0 - self.chi_int(xi) - self.chi_ext(xi)
    }
}

/// Interior cutoff radius used by [`i_func`].
pub const IFUNC_CUTOFF_RADIUS: f64 = 0.3;

/// `I(t;k) = ‖χ_int(ξ) |sin(c_a ξ² t)| / (c_a |ξ|^k) e^{-cξ²t}‖_{L²(ℝ_ξ)}`.
pub fn i_func(a: WaveSpeed, t: f64, k: u32, c: f64) -> f64 {
    let cut = CutoffFamily {
        eps0: IFUNC_CUTOFF_RADIUS,
        ..CutoffFamily::default()
    };
    i_func_with(a, t, k, c, &cut)
}

/// [`i_func`] with an explicit cutoff family; panels are quarter periods of
/// `sin(c_a ξ² t)` in the variable `ξ²`.
pub fn i_func_with(a: WaveSpeed, t: f64, k: u32, c: f64, cut: &CutoffFamily) -> f64 {
    assert!(k <= 2, "I(t;k) is defined for k ∈ {{0,1,2}}");
    let ca = a.c_a();
    let f = |xi: f64| {
        let x2 = xi * xi;
        let z = ca * x2 * t;
        let sinc = if z.abs() < 1e-4 { 1.0 - z * z / 6.0 } else { z.sin() / z };
        let g = t * sinc * xi.powi(2 - k as i32) * cut.chi_int(xi);
        g * g * (-2.0 * c * x2 * t).exp()
    };
    let top2 = (30.0 / (c * t)).min(cut.eps0 * cut.eps0);
    let quarter = PI / (2.0 * ca * t);
    let step = quarter.min(top2 / 64.0);
    let n = (top2 / step).ceil() as usize;
    let mut breaks: Vec<f64> = (0..=n).map(|j| (step * j as f64).min(top2).sqrt()).collect();
    let mid = 0.5 * cut.eps0;
    if mid < breaks[n] {
        breaks.push(mid);
        breaks.sort_by(f64::total_cmp);
    }
    let rule = GaussLegendre::new(16);
    let s = crate::quadrature::composite(&rule, &breaks, f);
    (2.0 * s).sqrt()
}

/// Nodes and weights on `[0, ∞)`; a real-data field `f` has
/// `‖F⁻¹f‖² = (1/π) Σ wᵢ |f(ξᵢ)|²`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FreqGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl FreqGrid {
    /// Uniform 16-point panels on `[0, xi_max]`.
    pub fn uniform(xi_max: f64, panels: usize) -> Self {
        let rule = GaussLegendre::new(16);
        let mut g = Self::default();
        let h = xi_max / panels as f64;
        for j in 0..panels {
            rule.push_panel(j as f64 * h, (j + 1) as f64 * h, &mut g.nodes, &mut g.weights);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Controls for [`solution_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Panel density multiplier; 2 halves every panel width.
    pub density: f64,
    /// Cells whose amplitude envelope is below `envelope_rel` of the peak are dropped.
    pub envelope_rel: f64,
    /// Upper end of the search range.
    pub xi_max: f64,
    /// Number of log-spaced cells used to tabulate the envelope.
    pub coarse_cells: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            density: 1.0,
            envelope_rel: 1e-9,
            xi_max: 1e3,
            coarse_cells: 400,
        }
    }
}

/// Below this frequency the slow root pair is too close to resolve by
/// Cramer's rule; the sliver `[0, ξ_f]` is integrated by Simpson's rule.
pub fn xi_floor(a: WaveSpeed) -> f64 {
    (1e-6 / (2.0 * a.c_a())).sqrt()
}

/// Frequency quadrature for solution fields at time `t`.
///
/// `data_env(ξ)` bounds the data transforms and `m` is the highest power of
/// `|ξ|` any multiplier applies. Panel widths follow the decay and phase rates
/// of the roots that dominate each coarse cell.
pub fn solution_grid(
    a: WaveSpeed,
    t: f64,
    data_env: &dyn Fn(f64) -> f64,
    m: u32,
    spec: &GridSpec,
) -> Result<FreqGrid> {
    let xf = xi_floor(a);
    let xs = crate::quadrature::logspace(xf, spec.xi_max, spec.coarse_cells);
    let mut roots = Vec::with_capacity(xs.len());
    for &x in &xs {
        roots.push(solve_quartic(a, x)?);
    }
    let amp: Vec<f64> = xs
        .iter()
        .zip(&roots)
        .map(|(&x, q)| {
            let growth = 1.0 + t.min(1.0 / (x * x));
            growth * (1.0 + x).powi(m as i32) * data_env(x) * (t * q.max_real()).exp()
        })
        .collect();
    let peak = amp.iter().cloned().fold(0.0, f64::max).max(data_env(0.0) * (1.0 + t));
    let mut grid = FreqGrid::default();
    if peak == 0.0 {
        return Ok(grid);
    }
    let cut = spec.envelope_rel * peak;

    // Simpson on the sliver
    for (x, w) in [(0.0, 1.0), (0.5 * xf, 4.0), (xf, 1.0)] {
        grid.nodes.push(x);
        grid.weights.push(w * xf / 6.0);
    }

    let rule = GaussLegendre::new(16);
    let ncell = xs.len() - 1;
    for i in 0..ncell {
        let lo = i.saturating_sub(1);
        let hi = (i + 2).min(ncell);
        if amp[lo..=hi].iter().all(|&v| v < cut) {
            continue;
        }
        let (x0, x1) = (xs[i], xs[i + 1]);
        let dx = x1 - x0;
        let (q0, q1) = (&roots[i], &roots[i + 1]);
        let floor = q0.max_real().max(q1.max_real()) - 25.0 / t;
        // decay and phase rates of the pairs that matter on this cell
        let mut phase: f64 = 0.0;
        let mut decay: f64 = 0.0;
        let pairs = [
            (q0.lam_r1, q0.lam_i1, q1.lam_r1, q1.lam_i1),
            (q0.lam_r2, q0.lam_i2, q1.lam_r2, q1.lam_i2),
        ];
        let mut live = Vec::new();
        for &(r0, i0, r1, i1) in &pairs {
            if r0.max(r1) >= floor {
                live.push((i0, i1));
                phase = phase.max(2.0 * (i1 - i0).abs() / dx * t);
                decay = decay.max((r1 - r0).abs() / dx * t);
            }
        }
        if live.len() == 2 {
            let d0 = (live[0].0 - live[1].0).abs();
            let d1 = (live[0].1 - live[1].1).abs();
            phase = phase.max((d1 - d0).abs() / dx * t);
        }
        let mut width = 0.25 * x0.max(xf);
        width = width.min(1.0 / (8.0 * t.sqrt()).max(1.0));
        width = width.min(0.25);
        if phase > 0.0 {
            width = width.min(PI / phase);
        }
        if decay > 0.0 {
            width = width.min(2.0 / decay);
        }
        width /= spec.density;
        let n = (dx / width).ceil().max(1.0) as usize;
        let h = dx / n as f64;
        for j in 0..n {
            let a0 = x0 + j as f64 * h;
            let b0 = if j + 1 == n { x1 } else { a0 + h };
            rule.push_panel(a0, b0, &mut grid.nodes, &mut grid.weights);
        }
    }
    Ok(grid)
}

/// Fourier multiplier applied before taking the L² norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Multiplier {
    One,
    /// `|ξ|^k`.
    Homogeneous(f64),
    /// `⟨ξ⟩^s = (1+ξ²)^{s/2}`.
    Bessel(f64),
}

impl Multiplier {
    pub fn eval(&self, xi: f64) -> f64 {
        match *self {
            Self::One => 1.0,
            Self::Homogeneous(k) => {
                if k == 0.0 {
                    1.0
                } else {
                    xi.abs().powf(k)
                }
            }
            Self::Bessel(s) => (1.0 + xi * xi).powf(0.5 * s),
        }
    }
}

/// `‖F⁻¹(m·f)‖_{L²}` for a real-data field sampled on `grid`.
///
/// Returns [`Error::TailWarning`] when the weighted field at the last node
/// exceeds `tail_tol` times its maximum.
pub fn l2_norm_spectral(
    grid: &FreqGrid,
    field: &[Complex64],
    mult: Multiplier,
    tail_tol: f64,
) -> Result<f64> {
    if field.len() != grid.len() {
        return Err(Error::InvalidParameter("field and grid lengths differ"));
    }
    let mut s = 0.0;
    let mut peak: f64 = 0.0;
    for ((x, w), f) in grid.nodes.iter().zip(&grid.weights).zip(field) {
        let v = mult.eval(*x) * f.norm();
        peak = peak.max(v);
        s += w * v * v;
    }
    if let (Some(x), Some(f)) = (grid.nodes.last(), field.last()) {
        let edge = mult.eval(*x) * f.norm();
        if peak > 0.0 && edge > tail_tol * peak {
            return Err(Error::TailWarning(edge / peak));
        }
    }
    Ok((s / PI).sqrt())
}

/// Least-squares fit of `log y = α log t + β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    pub exponent: f64,
    pub stderr: f64,
    pub window: (f64, f64),
    pub n_samples: usize,
    pub residual_max: f64,
    /// `e^β`.
    pub prefactor: f64,
}

/// Fit a power law to the samples whose `t` lies in `window`.
pub fn fit_power_law(samples: &[(f64, f64)], window: (f64, f64)) -> Result<RateReport> {
    for w in samples.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::InvalidParameter("sample times must increase strictly"));
        }
    }
    let inside: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(t, _)| t >= window.0 && t <= window.1)
        .collect();
    if inside.len() < 8 {
        return Err(Error::InsufficientSamples {
            found: inside.len(),
            need: 8,
        });
    }
    if let Some(&(t, y)) = inside.iter().find(|&&(_, y)| !(y > 0.0)) {
        return Err(Error::NonPositiveSample { t, y });
    }
    let n = inside.len() as f64;
    let (xm, ym) = inside
        .iter()
        .fold((0.0, 0.0), |(a, b), &(t, y)| (a + t.ln(), b + y.ln()));
    let (xm, ym) = (xm / n, ym / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(t, y) in &inside {
        let dx = t.ln() - xm;
        sxx += dx * dx;
        sxy += dx * (y.ln() - ym);
    }
    let slope = sxy / sxx;
    let icpt = ym - slope * xm;
    let mut ssr = 0.0;
    let mut rmax: f64 = 0.0;
    for &(t, y) in &inside {
        let r = y.ln() - (slope * t.ln() + icpt);
        ssr += r * r;
        rmax = rmax.max(r.abs());
    }
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok(RateReport {
        exponent: slope,
        stderr,
        window,
        n_samples: inside.len(),
        residual_max: rmax,
        prefactor: icpt.exp(),
    })
}

/// Norms of one data component.
#[derive(Debug, Clone, PartialEq)]
pub struct DataNormBundle {
    pub l2: f64,
    /// `‖f‖_{Ḣ^k}` for `k = 0, 1, 2`.
    pub hdot: [f64; 3],
    /// `(s, ‖f‖_{H^s})` pairs.
    pub h: Vec<(f64, f64)>,
    /// `‖f‖_{L^{1,γ}} = ∫(1+|x|)^γ |f|` for `γ = 0, 1, 2`.
    pub l1_weighted: [f64; 3],
}

/// Sobolev orders reported by [`data_norms`].
pub const SOBOLEV_ORDERS: [f64; 6] = [-2.0, -1.0, 0.0, 1.0, 2.0, 3.0];

pub fn data_norms(f: &Generator) -> Result<DataNormBundle> {
    moments(f)?;
    let r = f.support_radius();
    let xi_top = 40.0 + r;
    let spectral = |m: Multiplier| -> f64 {
        let mut g = |xi: f64| {
            let v = m.eval(xi) * f.fourier(xi).norm();
            v * v
        };
        let mut s = 0.0;
        let cuts = [0.0, 1.0, 4.0, 12.0, xi_top];
        for w in cuts.windows(2) {
            s += adaptive(&mut g, w[0], w[1], 1e-16, 1e-12);
        }
        (s / PI).sqrt()
    };
    let l2 = spectral(Multiplier::One);
    let hdot = [0.0, 1.0, 2.0].map(|k| spectral(Multiplier::Homogeneous(k)));
    let h = SOBOLEV_ORDERS
        .iter()
        .map(|&s| (s, spectral(Multiplier::Bessel(s))))
        .collect();
    let mut l1_weighted = [0.0; 3];
    for (gamma, out) in l1_weighted.iter_mut().enumerate() {
        let mut g = |x: f64| (1.0 + x.abs()).powi(gamma as i32) * f.eval(x).abs();
        let cuts = [-r, -r / 4.0, 0.0, r / 4.0, r];
        *out = cuts
            .windows(2)
            .map(|w| adaptive(&mut g, w[0], w[1], 1e-14, 1e-12))
            .sum();
    }
    Ok(DataNormBundle {
        l2,
        hdot,
        h,
        l1_weighted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_step_endpoints() {
        assert_eq!(smooth_step(-1.0), 0.0);
        assert_eq!(smooth_step(1.5), 1.0);
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exact_power_law() {
        let s: Vec<(f64, f64)> = (0..25)
            .map(|i| {
                let t = 100.0 * 10f64.powf(i as f64 / 12.0);
                (t, t.powf(0.75))
            })
            .collect();
        let r = fit_power_law(&s, (1e2, 1e4)).unwrap();
        assert!((r.exponent - 0.75).abs() < 1e-12);
    }
}

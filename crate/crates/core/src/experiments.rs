//! End-to-end linear experiments: growth rates, profile convergence, the
//! shear-stress cancellation, energy decay, regularity loss and pointwise
//! bound ratios.
//!
//! Every time-series experiment is split into a per-time row function and a
//! `*_from_rows` reduction so callers can evaluate rows in parallel.

use crate::data::{moments, InitialData};
use crate::norms_rates::{
    fit_power_law, l2_norm_spectral, solution_grid, GridSpec, Multiplier, RateReport,
};
use crate::profiles::{ghat, profile_hat};
use crate::quadrature::logspace;
use crate::spectral_core::{solve_quartic, zero_mode_state, ModalSolution, WaveSpeed};
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// Inputs shared by the time-series experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub a: WaveSpeed,
    pub data: InitialData,
    /// Sample times, strictly increasing.
    pub times: Vec<f64>,
    /// Fit window.
    pub window: (f64, f64),
    pub grid: GridSpec,
    /// Relative size of the weighted field at the last frequency node above
    /// which a norm is rejected.
    pub tail_tol: f64,
}

impl ExperimentConfig {
    /// 25 log-spaced samples over `[10², 10⁴]`, fitted over the same window.
    pub fn new(a: WaveSpeed, data: InitialData) -> Self {
        Self {
            a,
            data,
            times: log_times(1e2, 1e4, 25),
            window: (1e2, 1e4),
            grid: GridSpec::default(),
            tail_tol: 1e-4,
        }
    }
}

/// `n` log-spaced times from `lo` to `hi` inclusive.
pub fn log_times(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    logspace(lo, hi, n - 1)
}

/// L² norms at one sample time.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NormRow {
    pub t: f64,
    pub w_l2: f64,
    /// `‖∂ₓw‖ = ‖w‖_{Ḣ¹}`.
    pub w_h1: f64,
    /// `‖w‖_{Ḣ²}`.
    pub w_h2: f64,
    pub psi_l2: f64,
    /// `‖ψ‖_{Ḣ¹}`.
    pub psi_h1: f64,
    /// `‖∂ₓw − ψ‖`.
    pub shear_l2: f64,
    /// `‖U‖` with `U = (∂ₓw−ψ, ∂ₜw, a∂ₓψ, ∂ₜψ)`.
    pub energy_l2: f64,
    pub dt_w_l2: f64,
    pub a_dx_psi_l2: f64,
    pub dt_psi_l2: f64,
    /// `‖w − w^pf‖`.
    pub w_err_l2: f64,
    /// `‖ψ − ψ^pf‖`.
    pub psi_err_l2: f64,
}

/// Moments entering the profiles: `(P_{w₁}, Q_{w₁}, P_{ψ₀+ψ₁})`.
pub fn profile_moments(data: &InitialData) -> Result<(f64, f64, f64)> {
    let m1 = moments(&data.w1)?;
    Ok((
        m1.p,
        m1.q,
        moments(&data.psi0)?.p + moments(&data.psi1)?.p,
    ))
}

/// `(ŵ, ∂ₜŵ, ψ̂, ∂ₜψ̂)` on the nodes of a frequency grid.
pub fn states_on_grid(
    a: WaveSpeed,
    data: &InitialData,
    t: f64,
    nodes: &[f64],
) -> Result<Vec<[Complex64; 4]>> {
    nodes
        .iter()
        .map(|&xi| {
            let d = data.transforms(xi);
            if xi == 0.0 {
                Ok(zero_mode_state(d, t).as_array())
            } else {
                Ok(ModalSolution::new(a, xi, d)?.state(t).as_array())
            }
        })
        .collect()
}

/// All norms of [`NormRow`] at time `t`.
pub fn norm_row(cfg: &ExperimentConfig, t: f64) -> Result<NormRow> {
    let pq = profile_moments(&cfg.data)?;
    norm_row_with(cfg, t, pq)
}

fn norm_row_with(cfg: &ExperimentConfig, t: f64, pq: (f64, f64, f64)) -> Result<NormRow> {
    let a = cfg.a;
    let env = |x: f64| cfg.data.spectral_envelope(x);
    let grid = solution_grid(a, t, &env, 2, &cfg.grid)?;
    let states = states_on_grid(a, &cfg.data, t, &grid.nodes)?;
    let i = Complex64::new(0.0, 1.0);
    let n = grid.len();
    let mut fields: [Vec<Complex64>; 8] = Default::default();
    for f in fields.iter_mut() {
        f.reserve(n);
    }
    for (xi, s) in grid.nodes.iter().zip(&states) {
        let [w, wt, p, pt] = *s;
        let (wpf, ppf) = profile_hat(a, t, *xi, pq);
        fields[0].push(w);
        fields[1].push(p);
        fields[2].push(i * xi * w - p);
        fields[3].push(wt);
        fields[4].push(i * (a.a() * xi) * p);
        fields[5].push(pt);
        fields[6].push(w - wpf);
        fields[7].push(p - ppf);
    }
    let tol = cfg.tail_tol;
    let norm = |f: &[Complex64], m: Multiplier| l2_norm_spectral(&grid, f, m, tol);
    let shear = norm(&fields[2], Multiplier::One)?;
    let dt_w = norm(&fields[3], Multiplier::One)?;
    let a_dx_psi = norm(&fields[4], Multiplier::One)?;
    let dt_psi = norm(&fields[5], Multiplier::One)?;
    Ok(NormRow {
        t,
        w_l2: norm(&fields[0], Multiplier::One)?,
        w_h1: norm(&fields[0], Multiplier::Homogeneous(1.0))?,
        w_h2: norm(&fields[0], Multiplier::Homogeneous(2.0))?,
        psi_l2: norm(&fields[1], Multiplier::One)?,
        psi_h1: norm(&fields[1], Multiplier::Homogeneous(1.0))?,
        shear_l2: shear,
        energy_l2: (shear * shear + dt_w * dt_w + a_dx_psi * a_dx_psi + dt_psi * dt_psi).sqrt(),
        dt_w_l2: dt_w,
        a_dx_psi_l2: a_dx_psi,
        dt_psi_l2: dt_psi,
        w_err_l2: norm(&fields[6], Multiplier::One)?,
        psi_err_l2: norm(&fields[7], Multiplier::One)?,
    })
}

/// Rows for every sample time, sequentially.
pub fn norm_rows(cfg: &ExperimentConfig) -> Result<Vec<NormRow>> {
    let pq = profile_moments(&cfg.data)?;
    cfg.times.iter().map(|&t| norm_row_with(cfg, t, pq)).collect()
}

fn fit_column(rows: &[NormRow], window: (f64, f64), col: fn(&NormRow) -> f64) -> Result<RateReport> {
    let s: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, col(r))).collect();
    fit_power_law(&s, window)
}

fn require_mean(data: &InitialData) -> Result<f64> {
    let p = moments(&data.w1)?.p;
    if p.abs() < 1e-10 {
        return Err(Error::MeanConditionViolated(p));
    }
    Ok(p)
}

/// Growth of `‖w‖` and `‖ψ‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub w: RateReport,
    pub psi: RateReport,
    /// Range of `‖w(t)‖ / (t^{3/4} |P_{w₁}|)` over the fit window.
    pub w_lower_ratio: (f64, f64),
    /// Range of `‖ψ(t)‖ / (t^{1/4} |P_{w₁}|)` over the fit window.
    pub psi_lower_ratio: (f64, f64),
}

pub fn run_growth(cfg: &ExperimentConfig) -> Result<GrowthReport> {
    require_mean(&cfg.data)?;
    let rows = norm_rows(cfg)?;
    growth_from_rows(cfg, &rows)
}

pub fn growth_from_rows(cfg: &ExperimentConfig, rows: &[NormRow]) -> Result<GrowthReport> {
    let p = require_mean(&cfg.data)?.abs();
    let ratio = |e: f64, col: fn(&NormRow) -> f64| {
        rows.iter()
            .filter(|r| r.t >= cfg.window.0 && r.t <= cfg.window.1)
            .map(|r| col(r) / (r.t.powf(e) * p))
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    Ok(GrowthReport {
        w: fit_column(rows, cfg.window, |r| r.w_l2)?,
        psi: fit_column(rows, cfg.window, |r| r.psi_l2)?,
        w_lower_ratio: ratio(0.75, |r| r.w_l2),
        psi_lower_ratio: ratio(0.25, |r| r.psi_l2),
    })
}

/// Decay of the distance to the large-time profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileErrorReport {
    pub w_err: RateReport,
    pub psi_err: RateReport,
    /// Fit of `‖w − w^pf‖ / ‖w^pf‖`, using `‖w‖` as the profile scale.
    pub w_relative: RateReport,
}

pub fn run_profile_error(cfg: &ExperimentConfig) -> Result<ProfileErrorReport> {
    let rows = norm_rows(cfg)?;
    profile_error_from_rows(cfg, &rows)
}

pub fn profile_error_from_rows(
    cfg: &ExperimentConfig,
    rows: &[NormRow],
) -> Result<ProfileErrorReport> {
    let rel: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, r.w_err_l2 / r.w_l2)).collect();
    Ok(ProfileErrorReport {
        w_err: fit_column(rows, cfg.window, |r| r.w_err_l2)?,
        psi_err: fit_column(rows, cfg.window, |r| r.psi_err_l2)?,
        w_relative: fit_power_law(&rel, cfg.window)?,
    })
}

/// Shear stress and energy-term rates next to the growing `‖ψ‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct CancellationReport {
    pub shear: RateReport,
    pub psi: RateReport,
    /// `‖∂ₓw‖ = ‖w‖_{Ḣ¹}` grows like `‖ψ‖`.
    pub dx_w: RateReport,
    /// `∂ₓw−ψ, ∂ₜw, a∂ₓψ, ∂ₜψ` in that order.
    pub energy: [RateReport; 4],
    pub energy_total: RateReport,
}

pub fn run_cancellation_energy(cfg: &ExperimentConfig) -> Result<CancellationReport> {
    require_mean(&cfg.data)?;
    let rows = norm_rows(cfg)?;
    cancellation_from_rows(cfg, &rows)
}

pub fn cancellation_from_rows(
    cfg: &ExperimentConfig,
    rows: &[NormRow],
) -> Result<CancellationReport> {
    let w = cfg.window;
    Ok(CancellationReport {
        shear: fit_column(rows, w, |r| r.shear_l2)?,
        psi: fit_column(rows, w, |r| r.psi_l2)?,
        dx_w: fit_column(rows, w, |r| r.w_h1)?,
        energy: [
            fit_column(rows, w, |r| r.shear_l2)?,
            fit_column(rows, w, |r| r.dt_w_l2)?,
            fit_column(rows, w, |r| r.a_dx_psi_l2)?,
            fit_column(rows, w, |r| r.dt_psi_l2)?,
        ],
        energy_total: fit_column(rows, w, |r| r.energy_l2)?,
    })
}

/// Reference decay function of the energy term:
/// `ξ²/(1+ξ²)` for `a = 1`, `ξ²/(1+ξ²)²` otherwise.
pub fn rho(a: WaveSpeed, xi: f64) -> f64 {
    let x2 = xi * xi;
    if a.equal_speeds() {
        x2 / (1.0 + x2)
    } else {
        x2 / ((1.0 + x2) * (1.0 + x2))
    }
}

/// The energy term `Û = (iξŵ − ψ̂, ∂ₜŵ, iaξψ̂, ∂ₜψ̂)` at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyTerm {
    pub xi: f64,
    pub t: f64,
    pub u: [Complex64; 4],
}

impl EnergyTerm {
    pub fn new(a: WaveSpeed, xi: f64, t: f64, data_hat: [Complex64; 4]) -> Result<Self> {
        let s = if xi == 0.0 {
            zero_mode_state(data_hat, t)
        } else {
            ModalSolution::new(a, xi, data_hat)?.state(t)
        };
        let i = Complex64::new(0.0, 1.0);
        Ok(Self {
            xi,
            t,
            u: [
                i * xi * s.w_hat - s.psi_hat,
                s.dt_w_hat,
                i * (a.a() * xi) * s.psi_hat,
                s.dt_psi_hat,
            ],
        })
    }

    pub fn norm(&self) -> f64 {
        self.u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Fitted exponential decay rate of the oscillation envelope of `|ŵ(t,ξ)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFit {
    pub xi: f64,
    /// `−d log(envelope)/dt`.
    pub rate: f64,
    pub stderr: f64,
    /// `−max_j Re λ_j`.
    pub predicted: f64,
    /// Window length used for the sliding maximum.
    pub window: f64,
    pub t_range: (f64, f64),
}

/// Number of sliding windows fitted per frequency.
pub const ENVELOPE_WINDOWS: usize = 40;

/// Envelope decay of `|ŵ(t,ξ)|` from `t₀` on.
///
/// The sliding-maximum window spans one period of the dominant frequency and
/// one beat period between the roots whose real parts lie within 0.05 of the
/// largest. The horizon doubles until the envelope has dropped by `e⁻⁴`.
pub fn envelope_rate(
    a: WaveSpeed,
    xi: f64,
    data_hat: [Complex64; 4],
    t0: f64,
) -> Result<EnvelopeFit> {
    let sol = ModalSolution::new(a, xi, data_hat)?;
    let q = sol.roots;
    let max_re = q.max_real();
    let mut ims = Vec::new();
    for (re, im) in [(q.lam_r1, q.lam_i1), (q.lam_r2, q.lam_i2)] {
        if re >= max_re - 0.05 {
            ims.push(im);
            ims.push(-im);
        }
    }
    let dom = ims.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut beat = f64::INFINITY;
    for i in 0..ims.len() {
        for j in i + 1..ims.len() {
            let d = (ims[i] - ims[j]).abs();
            if d > 1e-12 {
                beat = beat.min(d);
            }
        }
    }
    let mut window = 2.0 * PI / dom;
    if beat.is_finite() {
        window = window.max(2.0 * PI / beat);
    }
    let fastest = ims.iter().fold(0.0f64, |m, v| m.max(v.abs())) * 2.0;
    let samples = ((16.0 * window * fastest / (2.0 * PI)).ceil() as usize).max(64);
    let env = |c: f64| -> f64 {
        (0..samples)
            .map(|k| {
                let t = c - 0.5 * window + window * k as f64 / (samples - 1) as f64;
                sol.w.eval(t, 0).norm()
            })
            .fold(0.0, f64::max)
    };
    let start = t0 + 0.5 * window;
    let e0 = env(start);
    if !(e0 > 0.0) {
        return Err(Error::InvalidParameter("envelope vanishes at the start time"));
    }
    let mut horizon = 2.0 * t0;
    loop {
        let end = horizon - 0.5 * window;
        if end > start + 8.0 * window && env(end) <= (-4.0f64).exp() * e0 {
            break;
        }
        if horizon > 1e9 {
            return Err(Error::InvalidParameter("envelope does not decay"));
        }
        horizon *= 2.0;
    }
    let end = horizon - 0.5 * window;
    let pts: Vec<(f64, f64)> = (0..ENVELOPE_WINDOWS)
        .map(|k| {
            let c = start + (end - start) * k as f64 / (ENVELOPE_WINDOWS - 1) as f64;
            (c, env(c).ln())
        })
        .collect();
    let (slope, stderr) = linear_fit(&pts);
    Ok(EnvelopeFit {
        xi,
        rate: -slope,
        stderr,
        predicted: -max_re,
        window,
        t_range: (start, end),
    })
}

fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let xm = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ym = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in pts {
        sxx += (x - xm) * (x - xm);
        sxy += (x - xm) * (y - ym);
    }
    let slope = sxy / sxx;
    let ssr: f64 = pts
        .iter()
        .map(|&(x, y)| {
            let r = y - ym - slope * (x - xm);
            r * r
        })
        .sum();
    (slope, (ssr / (n - 2.0) / sxx).sqrt())
}

/// Envelope fits at several frequencies and the rate ratios between
/// consecutive ones.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub fits: Vec<EnvelopeFit>,
    /// `(ξ_k, ξ_{k+1}, rate_k / rate_{k+1})`.
    pub ratios: Vec<(f64, f64, f64)>,
}

/// Unit induced data used for the fixed-frequency envelope study.
pub const UNIT_DATA: [Complex64; 4] = [Complex64 { re: 1.0, im: 0.0 }; 4];

pub fn run_regularity_loss(a: WaveSpeed, xis: &[f64], t0: f64) -> Result<RegularityReport> {
    let fits = xis
        .iter()
        .map(|&xi| envelope_rate(a, xi, UNIT_DATA, t0))
        .collect::<Result<Vec<_>>>()?;
    let ratios = fits
        .windows(2)
        .map(|w| (w[0].xi, w[1].xi, w[0].rate / w[1].rate))
        .collect();
    Ok(RegularityReport { fits, ratios })
}

/// Bound-ratio grid for the interior-zone pointwise estimates: log-spaced
/// in `ξ`, uniform in `t`. The ratios peak on the narrow ridges
/// `sin(c_a ξ² t) ≈ 0`, whose width in `t` is of order one, so the time step
/// must stay below that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsConfig {
    pub xi_range: (f64, f64),
    pub t_range: (f64, f64),
    pub n_xi: usize,
    pub n_t: usize,
    /// Constant `c` in `e^{-cξ²t}`.
    pub c: f64,
    /// Allowed relative increase of a maximum under refinement.
    pub refine_tol: f64,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self {
            xi_range: (1e-3, 0.1),
            t_range: (1.0, 1e3),
            n_xi: 161,
            n_t: 5001,
            c: 0.25,
            refine_tol: 0.05,
        }
    }
}

/// Maxima of `|LHS| / RHS` for the four pointwise estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    /// Coarse-grid maxima: `|ŵ|`, `|ŵ − Ĝ(ŵ₁ − iξ(ψ̂₀+ψ̂₁))|`,
    /// `|ψ̂ − iξĜŵ₁|`, `|iξŵ − ψ̂|`.
    pub max_ratio: [f64; 4],
    /// The same maxima on the nested grid with twice the density.
    pub refined: [f64; 4],
    pub stable: bool,
    /// `(ξ, ratio of |iξŵ − ψ̂|, ratio of |iξŵ|, ratio of |ψ̂|)` along
    /// `t = ξ⁻²`, all against the cancellation right-hand side.
    pub witness: Vec<(f64, f64, f64, f64)>,
}

/// The four `|LHS|/RHS` ratios at one `(ξ, t)`. Zero data gives zeros.
pub fn bound_ratios(
    a: WaveSpeed,
    xi: f64,
    t: f64,
    data_hat: [Complex64; 4],
    c: f64,
) -> Result<[f64; 4]> {
    let sol = ModalSolution::new(a, xi, data_hat)?;
    Ok(bound_ratios_from(&sol, a, xi, t, data_hat, c))
}

fn bound_maxima(
    a: WaveSpeed,
    data: &InitialData,
    cfg: &BoundsConfig,
    n_xi: usize,
    n_t: usize,
) -> Result<[f64; 4]> {
    let xs = logspace(cfg.xi_range.0, cfg.xi_range.1, n_xi - 1);
    let (t0, t1) = cfg.t_range;
    let ts: Vec<f64> = (0..n_t)
        .map(|k| t0 + (t1 - t0) * k as f64 / (n_t - 1) as f64)
        .collect();
    let mut m = [0.0f64; 4];
    for &xi in &xs {
        let d = data.transforms(xi);
        let sol = ModalSolution::new(a, xi, d)?;
        for &t in &ts {
            let r = bound_ratios_from(&sol, a, xi, t, d, cfg.c);
            for k in 0..4 {
                m[k] = m[k].max(r[k]);
            }
        }
    }
    Ok(m)
}

fn bound_ratios_from(
    sol: &ModalSolution,
    a: WaveSpeed,
    xi: f64,
    t: f64,
    data_hat: [Complex64; 4],
    c: f64,
) -> [f64; 4] {
    let s = sol.state(t);
    let [_, w1, p0, p1] = data_hat;
    let d: f64 = data_hat.iter().map(|z| z.norm()).sum();
    if d == 0.0 {
        return [0.0; 4];
    }
    let i = Complex64::new(0.0, 1.0);
    let g = ghat(a, t, xi);
    let ca = a.c_a();
    let damp = (-c * xi * xi * t).exp() * d;
    [
        s.w_hat.norm() / ((1.0 + (ca * xi * xi * t).sin().abs() / (ca * xi * xi)) * damp),
        (s.w_hat - g * (w1 - i * xi * (p0 + p1))).norm() / damp,
        (s.psi_hat - i * xi * g * w1).norm() / damp,
        (i * xi * s.w_hat - s.psi_hat).norm() / ((1.0 + xi) * damp),
    ]
}

/// Bound ratios over the configured grid, the refinement check and the
/// cancellation witness sequence.
pub fn verify_pointwise_bounds(
    a: WaveSpeed,
    data: &InitialData,
    cfg: &BoundsConfig,
) -> Result<BoundsReport> {
    let max_ratio = bound_maxima(a, data, cfg, cfg.n_xi, cfg.n_t)?;
    let refined = bound_maxima(a, data, cfg, 2 * cfg.n_xi - 1, 2 * cfg.n_t - 1)?;
    let stable = max_ratio
        .iter()
        .zip(&refined)
        .all(|(m, r)| m.is_finite() && r.is_finite() && *r <= (1.0 + cfg.refine_tol) * m);
    let mut witness = Vec::new();
    let i = Complex64::new(0.0, 1.0);
    for k in 0..7 {
        let xi = 0.1 * 0.5f64.powi(k);
        let t = 1.0 / (xi * xi);
        let d = data.transforms(xi);
        let s = ModalSolution::new(a, xi, d)?.state(t);
        let dsum: f64 = d.iter().map(|z| z.norm()).sum();
        let rhs = (1.0 + xi) * (-cfg.c * xi * xi * t).exp() * dsum;
        if rhs == 0.0 {
            continue;
        }
        witness.push((
            xi,
            (i * xi * s.w_hat - s.psi_hat).norm() / rhs,
            (xi * s.w_hat).norm() / rhs,
            s.psi_hat.norm() / rhs,
        ));
    }
    Ok(BoundsReport {
        max_ratio,
        refined,
        stable,
        witness,
    })
}

/// `max Re λ` at `ξ`, the predicted envelope decay rate with a minus sign.
pub fn max_real_part(a: WaveSpeed, xi: f64) -> Result<f64> {
    Ok(solve_quartic(a, xi)?.max_real())
}

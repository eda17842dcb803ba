//! Pseudo-spectral integration of the semilinear system with `|ψ|^p` forcing
//! in the rotation equation, on a periodic box `[−L, L)`.
//!
//! Each Fourier mode carries `V_m = (ŵ, ∂ₜŵ, ψ̂, ∂ₜψ̂)` relative to
//! `e^{iξ_m x}`, `ξ_m = πm/L`. The linear part is propagated exactly per mode;
//! the forcing enters through an exponential midpoint rule
//!
//! ```text
//! V_half = P(dt/2) (V + dt/2 F(V))
//! V_next = P(dt) V + dt P(dt/2) F(V_half)
//! ```

use crate::data::{moments, InitialData};
use crate::experiments::{norm_rows, ExperimentConfig};
use crate::norms_rates::{fit_power_law, RateReport};
use crate::spectral_core::{solve_quartic, zero_mode_state, ModalSolution, WaveSpeed};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// Unnormalised complex DFTs supplied by the caller.
pub trait Fft {
    /// `X_k = Σ_j x_j e^{-2πi jk/n}` in place.
    fn forward(&mut self, buf: &mut [Complex64]);
    /// `x_j = Σ_k X_k e^{2πi jk/n}` in place.
    fn inverse(&mut self, buf: &mut [Complex64]);
}

/// Field magnitude above which the run is aborted.
pub const BLOWUP_THRESHOLD: f64 = 1e12;

pub type Matrix4c = [[Complex64; 4]; 4];

/// Exact solution map over `dt` of the linear 4-system at frequency `ξ`,
/// acting on `(ŵ, ∂ₜŵ, ψ̂, ∂ₜψ̂)`. Column `k` is the state reached from the
/// `k`-th unit vector.
pub fn linear_propagator(a: WaveSpeed, xi: f64, dt: f64) -> Result<Matrix4c> {
    if !(dt >= 0.0) {
        return Err(Error::InvalidParameter("step must be non-negative"));
    }
    let x = xi.abs();
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    let roots = if x == 0.0 { None } else { Some(solve_quartic(a, x)?) };
    for k in 0..4 {
        let mut e = [Complex64::new(0.0, 0.0); 4];
        e[k] = Complex64::new(1.0, 0.0);
        let col = match roots {
            None => zero_mode_state(e, dt).as_array(),
            Some(q) => ModalSolution::with_roots(a, q, e)?.state(dt).as_array(),
        };
        for (r, v) in col.iter().enumerate() {
            m[r][k] = if xi < 0.0 { v.conj() } else { *v };
        }
    }
    Ok(m)
}

fn apply(m: &Matrix4c, v: &[Complex64; 4]) -> [Complex64; 4] {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (r, row) in m.iter().enumerate() {
        out[r] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
    }
    out
}

/// Wavenumber of FFT slot `k` on an `n`-point grid.
fn mode_index(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Spectral state of the semilinear system.
#[derive(Debug, Clone, PartialEq)]
pub struct SemilinearState {
    pub l: f64,
    pub n: usize,
    /// `ξ_m` in FFT order.
    pub xi: Vec<f64>,
    pub v: Vec<[Complex64; 4]>,
    pub t: f64,
    pub p: f64,
}

impl SemilinearState {
    /// Coefficients `f̂(ξ_m)/(2L)` of the data; the Nyquist mode is zero.
    pub fn from_data(data: &InitialData, l: f64, n: usize, p: f64) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter("grid size must be a power of two"));
        }
        let xi: Vec<f64> = (0..n).map(|k| PI * mode_index(k, n) as f64 / l).collect();
        let v = xi
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                if k == n / 2 {
                    [Complex64::new(0.0, 0.0); 4]
                } else {
                    data.transforms(x).map(|z| z / (2.0 * l))
                }
            })
            .collect();
        Ok(Self { l, n, xi, v, t: 0.0, p })
    }

    /// `(2L Σ |ξ_m|^{2k} |c_m|²)^{1/2}` for component `c`.
    pub fn norm(&self, c: usize, k: i32) -> f64 {
        let s: f64 = self
            .xi
            .iter()
            .zip(&self.v)
            .map(|(x, v)| {
                let m = if k == 0 { 1.0 } else { x.abs().powi(k) };
                (m * v[c].norm()).powi(2)
            })
            .sum();
        (2.0 * self.l * s).sqrt()
    }

    /// Physical samples of component `c` on `x_j = −L + 2jL/n`, with the
    /// largest imaginary part encountered.
    pub fn physical(&self, c: usize, fft: &mut dyn Fft) -> (Vec<f64>, f64) {
        let mut buf: Vec<Complex64> = self
            .v
            .iter()
            .enumerate()
            .map(|(k, v)| v[c] * sign(mode_index(k, self.n)))
            .collect();
        fft.inverse(&mut buf);
        let imag = buf.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
        (buf.iter().map(|z| z.re).collect(), imag)
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| -self.l + 2.0 * self.l * j as f64 / self.n as f64)
            .collect()
    }
}

fn sign(m: i64) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Propagators for one step size, cached per mode.
#[derive(Debug, Clone)]
pub struct Stepper {
    pub dt: f64,
    full: Vec<Matrix4c>,
    half: Vec<Matrix4c>,
    /// Forcing switch; off gives the pure linear flow.
    pub forcing: bool,
    pad: Vec<Complex64>,
}

impl Stepper {
    pub fn new(a: WaveSpeed, state: &SemilinearState, dt: f64) -> Result<Self> {
        let mut full = Vec::with_capacity(state.n);
        let mut half = Vec::with_capacity(state.n);
        for &x in &state.xi {
            full.push(linear_propagator(a, x, dt)?);
            half.push(linear_propagator(a, x, 0.5 * dt)?);
        }
        Ok(Self {
            dt,
            full,
            half,
            forcing: true,
            pad: vec![Complex64::new(0.0, 0.0); 3 * state.n / 2],
        })
    }

    /// Coefficients of `|ψ|^p` from the `ψ̂` coefficients, evaluated on a
    /// 3/2-padded grid.
    fn forcing_term(&mut self, s: &SemilinearState, fft: &mut dyn Fft) -> Result<Vec<Complex64>> {
        let n = s.n;
        let m = self.pad.len();
        for z in self.pad.iter_mut() {
            *z = Complex64::new(0.0, 0.0);
        }
        for (k, v) in s.v.iter().enumerate() {
            let idx = mode_index(k, n);
            if idx == -(n as i64) / 2 {
                continue;
            }
            let slot = idx.rem_euclid(m as i64) as usize;
            self.pad[slot] = v[2] * sign(idx);
        }
        fft.inverse(&mut self.pad);
        let mut peak: f64 = 0.0;
        for z in self.pad.iter_mut() {
            let a = z.re.abs();
            peak = peak.max(a);
            *z = Complex64::new(a.powf(s.p), 0.0);
        }
        if !(peak < BLOWUP_THRESHOLD) {
            return Err(Error::Overflow { t: s.t, max: peak });
        }
        fft.forward(&mut self.pad);
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (k, o) in out.iter_mut().enumerate() {
            let idx = mode_index(k, n);
            if idx == -(n as i64) / 2 {
                continue;
            }
            let slot = idx.rem_euclid(m as i64) as usize;
            *o = self.pad[slot] * sign(idx) / m as f64;
        }
        Ok(out)
    }

    /// One exponential-midpoint step.
    pub fn step(&mut self, s: &mut SemilinearState, fft: &mut dyn Fft) -> Result<()> {
        let h = self.dt;
        if !self.forcing {
            for (v, p) in s.v.iter_mut().zip(&self.full) {
                *v = apply(p, v);
            }
            s.t += h;
            return Ok(());
        }
        let f0 = self.forcing_term(s, fft)?;
        let mut mid = s.clone();
        for ((v, p), f) in mid.v.iter_mut().zip(&self.half).zip(&f0) {
            let mut u = *v;
            u[3] += 0.5 * h * f;
            *v = apply(p, &u);
        }
        mid.t += 0.5 * h;
        let fm = self.forcing_term(&mid, fft)?;
        for (((v, p), q), f) in s.v.iter_mut().zip(&self.full).zip(&self.half).zip(&fm) {
            let lin = apply(p, v);
            for r in 0..4 {
                v[r] = lin[r] + h * q[r][3] * f;
            }
        }
        s.t += h;
        Ok(())
    }
}

/// Advance `state` by one step of size `dt`.
pub fn duhamel_step(
    a: WaveSpeed,
    state: &SemilinearState,
    dt: f64,
    fft: &mut dyn Fft,
) -> Result<SemilinearState> {
    let mut s = state.clone();
    Stepper::new(a, state, dt)?.step(&mut s, fft)?;
    Ok(s)
}

/// Running supremum of
/// `(1+t)^{-1/4}‖w‖ + (1+t)^{3/4}‖w‖_{Ḣ²} + (1+t)^{1/4}‖ψ‖ + (1+t)^{3/4}‖ψ‖_{Ḣ¹}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct XNormMonitor {
    /// `(t, running sup)`.
    pub samples: Vec<(f64, f64)>,
    pub sup: f64,
}

impl XNormMonitor {
    pub fn weighted(t: f64, w: f64, w_h2: f64, psi: f64, psi_h1: f64) -> f64 {
        let s = 1.0 + t;
        s.powf(-0.25) * w + s.powf(0.75) * w_h2 + s.powf(0.25) * psi + s.powf(0.75) * psi_h1
    }

    pub fn record(&mut self, t: f64, value: f64) {
        self.sup = self.sup.max(value);
        self.samples.push((t, self.sup));
    }

    /// Running sup at the last sample not after `t`.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        self.samples
            .iter()
            .take_while(|(s, _)| *s <= t + 1e-9)
            .last()
            .map(|(_, v)| *v)
    }
}

/// Parameters of a semilinear run.
#[derive(Debug, Clone, PartialEq)]
pub struct SemilinearConfig {
    pub a: WaveSpeed,
    /// Unscaled data; the run uses `eps · data`.
    pub data: InitialData,
    pub eps: f64,
    pub p: f64,
    pub l: f64,
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    /// Time between recorded samples; must divide 1.
    pub sample_every: f64,
    pub fit_window: (f64, f64),
}

impl SemilinearConfig {
    pub fn new(a: WaveSpeed, data: InitialData) -> Self {
        Self {
            a,
            data,
            eps: 1e-2,
            p: 4.0,
            l: 200.0,
            n: 4096,
            dt: 0.01,
            t_end: 200.0,
            sample_every: 0.5,
            fit_window: (20.0, 200.0),
        }
    }
}

/// One recorded sample of a semilinear run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub w_l2: f64,
    pub w_h2: f64,
    pub psi_l2: f64,
    pub psi_h1: f64,
    pub x_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemilinearReport {
    pub trajectory: Vec<TrajectoryRow>,
    pub monitor: XNormMonitor,
    pub w: RateReport,
    pub psi: RateReport,
    pub w_h2: RateReport,
    pub psi_h1: RateReport,
    /// Running sup at `t = 1`.
    pub x_at_one: f64,
    /// `sup ≤ 2 · x_at_one`.
    pub bounded: bool,
    /// Largest `|Im|` of the physical fields at the end, relative to their size.
    pub reality_defect: f64,
}

/// Time-step the semilinear system to `t_end`.
pub fn solve_semilinear(cfg: &SemilinearConfig, fft: &mut dyn Fft) -> Result<SemilinearReport> {
    if !cfg.a.equal_speeds() {
        return Err(Error::InvalidParameter("the semilinear solver requires a = 1"));
    }
    let pw = moments(&cfg.data.w1)?.p;
    if pw.abs() > 1e-10 {
        return Err(Error::MeanConditionViolated(pw));
    }
    let per_sample = (cfg.sample_every / cfg.dt).round() as usize;
    if per_sample == 0 || ((per_sample as f64) * cfg.dt - cfg.sample_every).abs() > 1e-9 {
        return Err(Error::InvalidParameter("sample interval must be a multiple of dt"));
    }
    let data = cfg.data.scaled(cfg.eps);
    let mut s = SemilinearState::from_data(&data, cfg.l, cfg.n, cfg.p)?;
    let mut stepper = Stepper::new(cfg.a, &s, cfg.dt)?;
    let steps = (cfg.t_end / cfg.dt).round() as usize;
    let mut monitor = XNormMonitor::default();
    let mut trajectory = Vec::new();
    let mut record = |s: &SemilinearState, monitor: &mut XNormMonitor| {
        let row = TrajectoryRow {
            t: s.t,
            w_l2: s.norm(0, 0),
            w_h2: s.norm(0, 2),
            psi_l2: s.norm(2, 0),
            psi_h1: s.norm(2, 1),
            x_norm: 0.0,
        };
        let x = XNormMonitor::weighted(s.t, row.w_l2, row.w_h2, row.psi_l2, row.psi_h1);
        monitor.record(s.t, x);
        trajectory.push(TrajectoryRow { x_norm: x, ..row });
    };
    record(&s, &mut monitor);
    for k in 1..=steps {
        stepper.step(&mut s, fft)?;
        s.t = k as f64 * cfg.dt;
        if k % per_sample == 0 {
            record(&s, &mut monitor);
        }
    }
    let x_at_one = monitor
        .value_at(1.0)
        .ok_or(Error::InvalidParameter("run ends before t = 1"))?;
    let fit = |col: fn(&TrajectoryRow) -> f64| {
        let pts: Vec<(f64, f64)> = trajectory.iter().map(|r| (r.t, col(r))).collect();
        fit_power_law(&pts, cfg.fit_window)
    };
    let (w_phys, wi) = s.physical(0, fft);
    let (p_phys, pi) = s.physical(2, fft);
    let scale = w_phys
        .iter()
        .chain(&p_phys)
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    Ok(SemilinearReport {
        w: fit(|r| r.w_l2)?,
        psi: fit(|r| r.psi_l2)?,
        w_h2: fit(|r| r.w_h2)?,
        psi_h1: fit(|r| r.psi_h1)?,
        bounded: monitor.sup <= 2.0 * x_at_one,
        x_at_one,
        reality_defect: wi.max(pi) / scale,
        monitor,
        trajectory,
    })
}

/// Linear decay rates for zero-mean `w₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedReport {
    pub w: RateReport,
    pub w_h2: RateReport,
    pub psi: RateReport,
    pub psi_h1: RateReport,
}

/// Fits `‖w‖ ~ t^{1/4}`, `‖w‖_{Ḣ²} ~ t^{-3/4}`, `‖ψ‖ ~ t^{-1/4}` and
/// `‖ψ‖_{Ḣ¹} ~ t^{-3/4}` from the linear solution with `P_{w₁} = 0`.
pub fn linearized_rate_check(cfg: &ExperimentConfig) -> Result<LinearizedReport> {
    let pw = moments(&cfg.data.w1)?.p;
    if pw.abs() > 1e-10 {
        return Err(Error::MeanConditionViolated(pw));
    }
    let rows = norm_rows(cfg)?;
    let fit = |col: fn(&crate::experiments::NormRow) -> f64| {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, col(r))).collect();
        fit_power_law(&pts, cfg.window)
    };
    Ok(LinearizedReport {
        w: fit(|r| r.w_l2)?,
        w_h2: fit(|r| r.w_h2)?,
        psi: fit(|r| r.psi_l2)?,
        psi_h1: fit(|r| r.psi_h1)?,
    })
}

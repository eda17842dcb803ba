//! One function per subcommand, each producing a [`Report`].

use crate::config::{Command, RunConfig};
use crate::fft::RustFft;
use crate::report::{series_table, Check, Report, SeriesRow, Table};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use timoshenko_core::data::moments;
use timoshenko_core::experiments::{
    cancellation_from_rows, growth_from_rows, log_times, norm_row, profile_error_from_rows,
    run_regularity_loss, verify_pointwise_bounds, ExperimentConfig, NormRow,
};
use timoshenko_core::norms_rates::{fit_power_law, i_func_with, RateReport};
use timoshenko_core::semilinear::solve_semilinear;
use timoshenko_core::spectral_core::{
    eval_fourier_solution, initial_data_transform, ode_oracle, quartic_coefficients, solve_quartic,
    Branch, Representation, Zone,
};
use timoshenko_core::{Complex64, Result, WaveSpeed};

/// Run `cmd` on a validated config.
pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Report> {
    let mut r = match cmd {
        Command::Roots => roots(cfg),
        Command::SolveLinear => solve_linear(cfg),
        Command::Rates => rates(cfg),
        Command::ProfileError => profile_error(cfg),
        Command::Cancellation => cancellation(cfg),
        Command::RegularityLoss => regularity_loss(cfg),
        Command::VerifyBounds => verify_bounds(cfg),
        Command::Semilinear => semilinear(cfg),
    }?;
    r.experiment = cmd.name().to_string();
    r.input_digest = cfg.digest(cmd);
    Ok(r)
}

/// Norm rows evaluated in parallel over the sample times, in time order.
pub fn parallel_rows(cfg: &ExperimentConfig) -> Result<Vec<NormRow>> {
    cfg.times.par_iter().map(|&t| norm_row(cfg, t)).collect()
}

fn rate_check(name: &str, r: &RateReport, lo: Option<f64>, hi: Option<f64>) -> Check {
    Check::new(name, r.exponent, lo, hi).with_stderr(r.stderr)
}

fn banded(name: &str, r: &RateReport, centre: f64, half: f64) -> Check {
    rate_check(name, r, Some(centre - half), Some(centre + half))
}

fn series(rows: &[NormRow]) -> Table {
    series_table(&rows.iter().map(SeriesRow::from).collect::<Vec<_>>())
}

fn zone_name(z: Zone) -> &'static str {
    match z {
        Zone::Interior => "interior",
        Zone::Bounded => "bounded",
        Zone::Exterior => "exterior",
    }
}

/// Largest relative error over the four Vieta identities.
pub fn vieta_error(a: WaveSpeed, roots: &[Complex64; 4], xi: f64) -> f64 {
    let l = roots;
    let zero = Complex64::new(0.0, 0.0);
    let mut e = [zero; 4];
    for i in 0..4 {
        e[0] += l[i];
        for j in i + 1..4 {
            e[1] += l[i] * l[j];
            for k in j + 1..4 {
                e[2] += l[i] * l[j] * l[k];
            }
        }
    }
    e[3] = l[0] * l[1] * l[2] * l[3];
    let [c0, c1, c2, c3] = quartic_coefficients(a, xi);
    let expect = [-c3, c2, -c1, c0];
    (0..4)
        .map(|k| (e[k] - expect[k]).norm() / expect[k].abs())
        .fold(0.0, f64::max)
}

fn roots(cfg: &RunConfig) -> Result<Report> {
    let r = &cfg.roots;
    let mut table = Table::new(
        "",
        &["a", "xi", "zone", "re_1", "im_1", "re_2", "im_2", "vieta_rel_err", "discriminant"],
    );
    let (mut vieta, mut max_re, mut min_disc) = (0.0f64, f64::NEG_INFINITY, f64::INFINITY);
    for &a in &r.speeds {
        let a = WaveSpeed::new(a)?;
        for xi in log_times(r.xi_min, r.xi_max, r.count) {
            let q = solve_quartic(a, xi)?;
            let err = vieta_error(a, &q.roots(), xi);
            let disc = q.discriminant();
            vieta = vieta.max(err);
            max_re = max_re.max(q.max_real());
            min_disc = min_disc.min(disc);
            let nums = [q.lam_r1, q.lam_i1, q.lam_r2, q.lam_i2, err, disc];
            let mut row = vec![
                crate::report::fmt_num(a.a()),
                crate::report::fmt_num(xi),
                zone_name(cfg.zones().classify(xi)).to_string(),
            ];
            row.extend(nums.iter().map(|&x| crate::report::fmt_num(x)));
            table.rows.push(row);
        }
    }
    Ok(Report {
        tables: vec![table],
        checks: vec![
            Check::new("vieta_max_rel_err", vieta, None, Some(1e-9)),
            Check::new("max_real_part", max_re, None, Some(-f64::MIN_POSITIVE)),
            Check::new("min_discriminant", min_disc, Some(f64::MIN_POSITIVE), None),
        ],
        ..Report::default()
    })
}

/// One random comparison of the modal representation with the ODE oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSample {
    pub a: f64,
    pub xi: f64,
    pub t: f64,
    pub zone: Zone,
    /// `|rep − oracle| / max(|oracle|, modal envelope)`, worst over both branches.
    pub rel_err: f64,
}

/// `cfg.oracle.samples` tuples drawn from `cfg.seed`, cycling through the
/// three frequency zones; every fourth tuple has equal wave speeds.
pub fn oracle_samples(cfg: &RunConfig) -> Result<Vec<OracleSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let zones = cfg.zones();
    let o = &cfg.oracle;
    let mut out = Vec::with_capacity(o.samples);
    for i in 0..o.samples {
        let a = if i % 4 == 0 { 1.0 } else { rng.random_range(0.6..2.0) };
        let (lo, hi): (f64, f64) = match i % 3 {
            0 => (zones.eps0 * 1e-2, zones.eps0),
            1 => (zones.eps0, zones.n0),
            _ => (zones.n0, o.xi_max.max(zones.n0)),
        };
        let xi = (lo.ln() + rng.random::<f64>() * (hi / lo).ln()).exp();
        let t = rng.random_range(0.0..o.t_max);
        let mut d = [Complex64::new(0.0, 0.0); 4];
        for z in &mut d {
            *z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let ws = WaveSpeed::new(a)?;
        let q = solve_quartic(ws, xi)?;
        let mut rel_err = 0.0f64;
        for branch in [Branch::W, Branch::Psi] {
            let ind = initial_data_transform(branch, d, ws, xi);
            let v = eval_fourier_solution(&q, &ind, t)?[0];
            let env = Representation::new(&q, &ind)?.envelope(t);
            let exact = ode_oracle(&ind, ws, xi, t, 1e-12)?[0];
            rel_err = rel_err.max((v - exact).norm() / exact.norm().max(env));
        }
        out.push(OracleSample {
            a,
            xi,
            t,
            zone: zones.classify(xi),
            rel_err,
        });
    }
    Ok(out)
}

fn solve_linear(cfg: &RunConfig) -> Result<Report> {
    let rows = parallel_rows(&cfg.experiment())?;
    let samples = oracle_samples(cfg)?;
    let mut table = Table::new("_oracle", &["a", "xi", "t", "zone", "rel_err"]);
    for s in &samples {
        table.rows.push(vec![
            crate::report::fmt_num(s.a),
            crate::report::fmt_num(s.xi),
            crate::report::fmt_num(s.t),
            zone_name(s.zone).to_string(),
            crate::report::fmt_num(s.rel_err),
        ]);
    }
    let worst = samples.iter().map(|s| s.rel_err).fold(0.0, f64::max);
    Ok(Report {
        tables: vec![series(&rows), table],
        checks: vec![Check::new("oracle_max_rel_err", worst, None, Some(cfg.oracle.tol))],
        ..Report::default()
    })
}

/// Fitted exponents of `I(t;k)` for `k = 0, 1, 2` with the `I(t;k)` samples.
pub fn ifunc_rates(cfg: &RunConfig) -> Result<([RateReport; 3], Table)> {
    let e = cfg.experiment();
    let cut = cfg.ifunc_cutoff();
    let vals: Vec<[f64; 3]> = e
        .times
        .par_iter()
        .map(|&t| [0, 1, 2].map(|k| i_func_with(e.a, t, k, cfg.ifunc.c, &cut)))
        .collect();
    let mut table = Table::new("_ifunc", &["t", "i_0", "i_1", "i_2"]);
    for (t, v) in e.times.iter().zip(&vals) {
        table.push_nums(&[*t, v[0], v[1], v[2]]);
    }
    let fit = |k: usize| {
        let s: Vec<(f64, f64)> = e.times.iter().zip(&vals).map(|(&t, v)| (t, v[k])).collect();
        fit_power_law(&s, e.window)
    };
    Ok(([fit(0)?, fit(1)?, fit(2)?], table))
}

fn rates(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.experiment();
    let rows = parallel_rows(&e)?;
    let (ifit, itable) = ifunc_rates(cfg)?;
    let mut checks: Vec<Check> = ifit
        .iter()
        .enumerate()
        .map(|(k, r)| banded(&format!("i{k}_exponent"), r, (2.0 * k as f64 - 1.0) / 4.0, 0.05))
        .collect();
    let pw = moments(&e.data.w1)?.p;
    if pw.abs() > 1e-10 {
        let g = growth_from_rows(&e, &rows)?;
        checks.push(banded("w_exponent", &g.w, 0.75, 0.05));
        checks.push(banded("psi_exponent", &g.psi, 0.25, 0.05));
    } else {
        let fit = |col: fn(&NormRow) -> f64| {
            let s: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, col(r))).collect();
            fit_power_law(&s, e.window)
        };
        checks.push(banded("w_exponent", &fit(|r| r.w_l2)?, 0.25, 0.05));
        checks.push(banded("psi_exponent", &fit(|r| r.psi_l2)?, -0.25, 0.05));
        checks.push(banded("psi_h1_exponent", &fit(|r| r.psi_h1)?, -0.75, 0.05));
        checks.push(rate_check("w_h2_exponent", &fit(|r| r.w_h2)?, None, None));
    }
    Ok(Report {
        tables: vec![series(&rows), itable],
        checks,
        values: vec![("p_w1".into(), pw)],
        ..Report::default()
    })
}

fn profile_error(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.experiment();
    let rows = parallel_rows(&e)?;
    let p = profile_error_from_rows(&e, &rows)?;
    let mut table = Table::new("_profile", &["t", "w_err_l2", "psi_err_l2"]);
    for r in &rows {
        table.push_nums(&[r.t, r.w_err_l2, r.psi_err_l2]);
    }
    Ok(Report {
        tables: vec![series(&rows), table],
        checks: vec![
            rate_check("w_err_exponent", &p.w_err, None, Some(-0.20)),
            rate_check("psi_err_exponent", &p.psi_err, None, Some(-0.20)),
            rate_check("w_relative_exponent", &p.w_relative, None, None),
        ],
        ..Report::default()
    })
}

fn cancellation(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.experiment();
    let rows = parallel_rows(&e)?;
    let c = cancellation_from_rows(&e, &rows)?;
    let mut table = Table::new(
        "_energy",
        &["t", "shear_l2", "dt_w_l2", "a_dx_psi_l2", "dt_psi_l2", "energy_l2"],
    );
    for r in &rows {
        table.push_nums(&[r.t, r.shear_l2, r.dt_w_l2, r.a_dx_psi_l2, r.dt_psi_l2, r.energy_l2]);
    }
    let names = ["shear", "dt_w", "a_dx_psi", "dt_psi"];
    let mut checks = vec![
        banded("shear_exponent", &c.shear, -0.25, 0.05),
        banded("psi_exponent", &c.psi, 0.25, 0.05),
        rate_check("dx_w_exponent", &c.dx_w, None, None),
    ];
    for (n, r) in names.iter().zip(&c.energy) {
        checks.push(rate_check(&format!("energy_{n}_exponent"), r, None, None));
    }
    checks.push(rate_check("energy_exponent", &c.energy_total, None, None));
    Ok(Report {
        tables: vec![series(&rows), table],
        checks,
        ..Report::default()
    })
}

fn regularity_loss(cfg: &RunConfig) -> Result<Report> {
    let a = cfg.wave_speed();
    let r = run_regularity_loss(a, &cfg.regularity.xis, cfg.regularity.t0)?;
    let mut fits = Table::new(
        "",
        &["xi", "rate", "stderr", "predicted", "window", "t_start", "t_end"],
    );
    for f in &r.fits {
        fits.push_nums(&[f.xi, f.rate, f.stderr, f.predicted, f.window, f.t_range.0, f.t_range.1]);
    }
    let mut ratios = Table::new("_ratios", &["xi_0", "xi_1", "rate_ratio"]);
    for &(x0, x1, q) in &r.ratios {
        ratios.push_nums(&[x0, x1, q]);
    }
    let checks = if a.equal_speeds() {
        let (first, last) = (&r.fits[0], &r.fits[r.fits.len() - 1]);
        vec![Check::new(
            &format!("rate_ratio_{}_{}", first.xi, last.xi),
            first.rate / last.rate,
            Some(0.5),
            Some(2.0),
        )]
    } else {
        r.ratios
            .iter()
            .map(|&(x0, x1, q)| Check::new(&format!("rate_ratio_{x0}_{x1}"), q, Some(3.0), Some(5.0)))
            .collect()
    };
    Ok(Report {
        tables: vec![fits, ratios],
        checks,
        ..Report::default()
    })
}

fn verify_bounds(cfg: &RunConfig) -> Result<Report> {
    let b = cfg.bounds_config();
    let r = verify_pointwise_bounds(cfg.wave_speed(), &cfg.initial_data(), &b)?;
    let mut table = Table::new("", &["bound", "max_ratio", "refined_max_ratio"]);
    let mut checks = Vec::new();
    for k in 0..4 {
        table.push_nums(&[(k + 1) as f64, r.max_ratio[k], r.refined[k]]);
        let growth = if r.max_ratio[k] > 0.0 { r.refined[k] / r.max_ratio[k] } else { 1.0 };
        checks.push(Check::new(&format!("bound_{}_refinement", k + 1), growth, None, Some(1.0 + b.refine_tol)));
    }
    let mut witness = Table::new("_witness", &["xi", "combined", "dx_w_term", "psi_term"]);
    for &(xi, c, w, p) in &r.witness {
        witness.push_nums(&[xi, c, w, p]);
    }
    Ok(Report {
        tables: vec![table, witness],
        checks,
        ..Report::default()
    })
}

fn semilinear(cfg: &RunConfig) -> Result<Report> {
    let mut fft = RustFft::default();
    let r = solve_semilinear(&cfg.semilinear_config(), &mut fft)?;
    let rows: Vec<SeriesRow> = r
        .trajectory
        .iter()
        .map(|s| SeriesRow {
            t: s.t,
            w_l2: s.w_l2,
            w_h2: s.w_h2,
            psi_l2: s.psi_l2,
            psi_h1: s.psi_h1,
            shear_l2: None,
            energy_l2: None,
        })
        .collect();
    let mut monitor = Table::new("_monitor", &["t", "x_norm", "running_sup"]);
    for (s, &(t, sup)) in r.trajectory.iter().zip(&r.monitor.samples) {
        monitor.push_nums(&[t, s.x_norm, sup]);
    }
    Ok(Report {
        tables: vec![series_table(&rows), monitor],
        checks: vec![
            Check::new("x_sup_over_t1", r.monitor.sup / r.x_at_one, None, Some(2.0)),
            rate_check("psi_exponent", &r.psi, Some(-0.35), Some(-0.15)),
            rate_check("w_exponent", &r.w, Some(0.15), Some(0.35)),
            rate_check("w_h2_exponent", &r.w_h2, None, None),
            rate_check("psi_h1_exponent", &r.psi_h1, None, None),
        ],
        values: vec![
            ("x_at_one".into(), r.x_at_one),
            ("x_sup".into(), r.monitor.sup),
            ("reality_defect".into(), r.reality_defect),
        ],
        ..Report::default()
    })
}

//! One PASS/FAIL line per acceptance criterion, each at its stated tolerance
//! and runtime budget.

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};
use timoshenko_core::data::{Generator, InitialData};
use timoshenko_core::experiments::*;
use timoshenko_core::semilinear::linearized_rate_check;
use timoshenko_core::spectral_core::{solve_quartic, Zone};
use timoshenko_core::{Result, WaveSpeed};
use timoshenko_lab::config::GeneratorSpec;
use timoshenko_lab::runs::{ifunc_rates, oracle_samples, parallel_rows, vieta_error};
use timoshenko_lab::{emit_reports, run, Command, RunConfig};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ws(a: f64) -> WaveSpeed {
    WaveSpeed::new(a).unwrap()
}

fn within(x: f64, centre: f64, half: f64) -> bool {
    (x - centre).abs() <= half
}

fn rates_config(a: f64) -> RunConfig {
    RunConfig {
        a,
        ..RunConfig::preset(Command::Rates)
    }
}

fn roots() -> Result<Outcome> {
    let (mut worst, mut max_re) = (0.0f64, f64::NEG_INFINITY);
    for a in [0.6, 1.0, 2.0] {
        for xi in log_times(1e-3, 1e3, 60) {
            let q = solve_quartic(ws(a), xi)?;
            worst = worst.max(vieta_error(ws(a), &q.roots(), xi));
            max_re = max_re.max(q.max_real());
        }
    }
    Ok(Outcome {
        pass: worst <= 1e-9 && max_re < 0.0,
        detail: format!("max Vieta error {worst:.2e}, max Re λ {max_re:.2e}"),
    })
}

fn oracle() -> Result<Outcome> {
    let cfg = RunConfig::preset(Command::SolveLinear);
    let s = oracle_samples(&cfg)?;
    let worst = s.iter().map(|s| s.rel_err).fold(0.0, f64::max);
    let zones = [Zone::Interior, Zone::Bounded, Zone::Exterior].map(|z| s.iter().filter(|x| x.zone == z).count());
    Ok(Outcome {
        pass: s.len() == 200 && worst <= 1e-6 && zones.iter().all(|&n| n > 0),
        detail: format!("{} tuples, zones {zones:?}, max relative error {worst:.2e}", s.len()),
    })
}

fn ifunc() -> Result<Outcome> {
    let (fits, _) = ifunc_rates(&RunConfig::preset(Command::Rates))?;
    let e = fits.map(|f| f.exponent);
    let pass = (0..3).all(|k| within(e[k], (2.0 * k as f64 - 1.0) / 4.0, 0.05));
    Ok(Outcome {
        pass,
        detail: format!("I(t;k) exponents {:.4} {:.4} {:.4}", e[0], e[1], e[2]),
    })
}

fn growth(rows_one: &[NormRow]) -> Result<Outcome> {
    let one = rates_config(1.0).experiment();
    let g1 = growth_from_rows(&one, rows_one)?;
    let two = rates_config(2.0).experiment();
    let g2 = growth_from_rows(&two, &parallel_rows(&two)?)?;
    let pass = [g1.w.exponent, g2.w.exponent].iter().all(|&e| within(e, 0.75, 0.05))
        && [g1.psi.exponent, g2.psi.exponent].iter().all(|&e| within(e, 0.25, 0.05));
    Ok(Outcome {
        pass,
        detail: format!(
            "a=1: w {:.4} ψ {:.4}; a=2: w {:.4} ψ {:.4}",
            g1.w.exponent, g1.psi.exponent, g2.w.exponent, g2.psi.exponent
        ),
    })
}

fn profile(rows_one: &[NormRow]) -> Result<Outcome> {
    let p = profile_error_from_rows(&rates_config(1.0).experiment(), rows_one)?;
    Ok(Outcome {
        pass: p.w_err.exponent <= -0.20 && p.psi_err.exponent <= -0.20,
        detail: format!("w − w^pf {:.4}, ψ − ψ^pf {:.4}", p.w_err.exponent, p.psi_err.exponent),
    })
}

fn cancellation(rows_one: &[NormRow]) -> Result<Outcome> {
    let c = cancellation_from_rows(&rates_config(1.0).experiment(), rows_one)?;
    Ok(Outcome {
        pass: within(c.shear.exponent, -0.25, 0.05) && within(c.psi.exponent, 0.25, 0.05),
        detail: format!("∂ₓw − ψ {:.4} (band −0.25 ± 0.05), ψ {:.4}", c.shear.exponent, c.psi.exponent),
    })
}

fn regularity() -> Result<Outcome> {
    let r2 = run_regularity_loss(ws(2.0), &[10.0, 20.0, 40.0, 80.0], 50.0)?;
    let r1 = run_regularity_loss(ws(1.0), &[10.0, 80.0], 50.0)?;
    let q1 = r1.ratios[0].2;
    let pass = r2.ratios.iter().all(|r| within(r.2, 4.0, 1.0)) && (0.5..=2.0).contains(&q1);
    let q2: Vec<String> = r2.ratios.iter().map(|r| format!("{:.3}", r.2)).collect();
    Ok(Outcome {
        pass,
        detail: format!("a=2 ratios [{}], a=1 rate(10)/rate(80) {q1:.3}", q2.join(", ")),
    })
}

fn zero_mean() -> Result<Outcome> {
    let data = InitialData::w1_only(Generator::DGaussian { sigma: 1.0, amp: 1.0 });
    let r = linearized_rate_check(&ExperimentConfig::new(ws(1.0), data))?;
    let pass = within(r.w.exponent, 0.25, 0.05)
        && within(r.psi.exponent, -0.25, 0.05)
        && within(r.psi_h1.exponent, -0.75, 0.05);
    Ok(Outcome {
        pass,
        detail: format!(
            "w {:.4}, ψ {:.4}, ψ_Ḣ¹ {:.4}",
            r.w.exponent, r.psi.exponent, r.psi_h1.exponent
        ),
    })
}

fn semilinear() -> Result<Outcome> {
    let cfg = RunConfig::preset(Command::Semilinear);
    assert_eq!(cfg.data.w1, GeneratorSpec::new("dgaussian", 1.0, 1.0));
    let s = cfg.semilinear_config();
    assert_eq!((s.p, s.eps, s.t_end), (4.0, 1e-2, 200.0));
    let mut fft = timoshenko_lab::fft::RustFft::default();
    let r = timoshenko_core::semilinear::solve_semilinear(&s, &mut fft)?;
    let pass = r.bounded
        && r.monitor.sup <= 2.0 * r.x_at_one
        && (-0.35..=-0.15).contains(&r.psi.exponent)
        && (0.15..=0.35).contains(&r.w.exponent);
    Ok(Outcome {
        pass,
        detail: format!(
            "sup X / X(1) {:.3}, ψ {:.4}, w {:.4}",
            r.monitor.sup / r.x_at_one,
            r.psi.exponent,
            r.w.exponent
        ),
    })
}

fn bounds() -> Result<Outcome> {
    let data = InitialData {
        psi0: Generator::Ricker { sigma: 1.0, amp: 0.5 },
        ..InitialData::w1_only(Generator::Gaussian { sigma: 1.0, amp: 1.0 })
    };
    let mut detail = Vec::new();
    let mut pass = true;
    for a in [1.0, 2.0] {
        let r = verify_pointwise_bounds(ws(a), &data, &BoundsConfig::default())?;
        let growth: Vec<f64> = (0..4).map(|k| r.refined[k] / r.max_ratio[k]).collect();
        pass &= r.max_ratio.iter().chain(&r.refined).all(|m| m.is_finite() && *m > 0.0)
            && growth.iter().all(|&g| g <= 1.05);
        detail.push(format!(
            "a={a}: refined/coarse {}",
            growth.iter().map(|g| format!("{g:.4}")).collect::<Vec<_>>().join(" ")
        ));
    }
    Ok(Outcome {
        pass,
        detail: detail.join("; "),
    })
}

fn determinism() -> Result<Outcome> {
    let tmp = tempfile::tempdir().expect("temporary directory");
    let mut differing = Vec::new();
    let mut files = 0;
    for cmd in Command::ALL {
        let cfg = RunConfig::preset(cmd);
        let dirs = [tmp.path().join(format!("{cmd}-1")), tmp.path().join(format!("{cmd}-2"))];
        let mut written = Vec::new();
        for d in &dirs {
            let report = run(cmd, &cfg)?;
            written.push(emit_reports(&report, d, cmd.name()).expect("writable temporary directory"));
        }
        for (p, q) in written[0].iter().zip(&written[1]) {
            files += 1;
            if fs::read(p).ok() != fs::read(q).ok() {
                differing.push(p.file_name().unwrap().to_string_lossy().into_owned());
            }
        }
    }
    Ok(Outcome {
        pass: differing.is_empty() && files > 0,
        detail: format!("{files} CSV/JSON files compared across 8 subcommands, differing: {differing:?}"),
    })
}

/// `carried` is time spent on shared work the criterion depends on.
fn report(
    id: usize,
    name: &str,
    budget: Option<Duration>,
    carried: Duration,
    f: impl FnOnce() -> Result<Outcome>,
) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed() + carried;
    let on_time = budget.is_none_or(|b| elapsed <= b);
    let (pass, detail) = match out {
        Ok(o) => (o.pass && on_time, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let limit = budget.map(|b| format!(" (budget {:.0} s)", b.as_secs_f64())).unwrap_or_default();
    println!(
        "{} [{id:>2}] {name}: {detail}; {:.2} s{limit}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    pass
}

fn main() -> ExitCode {
    let secs = |s: u64| Some(Duration::from_secs(s));
    let mut ok = true;
    ok &= report(1, "root correctness", secs(1), Duration::ZERO, roots);
    ok &= report(2, "representation vs oracle", secs(30), Duration::ZERO, oracle);
    ok &= report(3, "I(t;k) exponents", secs(60), Duration::ZERO, ifunc);

    let start = Instant::now();
    let rows_one = parallel_rows(&rates_config(1.0).experiment());
    let shared = start.elapsed();
    match rows_one {
        Ok(rows) => {
            ok &= report(4, "growth rates at a = 1 and a = 2", secs(300), shared, || growth(&rows));
            ok &= report(5, "profile convergence", secs(300), shared, || profile(&rows));
            ok &= report(6, "shear-stress cancellation", secs(300), shared, || cancellation(&rows));
        }
        Err(e) => {
            for (id, name) in [(4, "growth rates"), (5, "profile convergence"), (6, "shear-stress cancellation")] {
                println!("FAIL [{id:>2}] {name}: error: {e}");
            }
            ok = false;
        }
    }
    ok &= report(7, "regularity loss", secs(120), Duration::ZERO, regularity);
    ok &= report(8, "zero-mean linear rates", secs(300), Duration::ZERO, zero_mean);
    ok &= report(9, "semilinear run", secs(600), Duration::ZERO, semilinear);
    ok &= report(10, "pointwise-bound ratios", secs(120), Duration::ZERO, bounds);
    ok &= report(11, "determinism", None, Duration::ZERO, determinism);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use serde_json::Value;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use timoshenko_lab::report::{emit_reports, series_table, Check, Report, SERIES_HEADER};
use timoshenko_lab::OUT_DIR_ENV;

fn timoshenko(args: &[&str], env_out: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_timoshenko"));
    c.args(args).env_remove(OUT_DIR_ENV);
    if let Some(d) = env_out {
        c.env(OUT_DIR_ENV, d);
    }
    c.output().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const FAST_RATES: &str = "command = \"rates\"\n[time]\nsamples = 9\n";

#[test]
fn rates_summary_has_bands_and_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "r.toml", FAST_RATES);
    let out = tmp.path().join("out");
    let o = timoshenko(&["rates", "-c", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let csv = fs::read_to_string(out.join("rates.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), SERIES_HEADER.join(","));
    assert_eq!(lines.count(), 9);

    let j = json(&out.join("rates.json"));
    assert_eq!(j["experiment"], "rates");
    assert_eq!(j["pass"], true);
    assert_eq!(j["input_digest"].as_str().unwrap().len(), 64);
    let w = j["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c.get("w_exponent").is_some())
        .unwrap();
    assert!((w["w_exponent"].as_f64().unwrap() - 0.75).abs() < 0.05);
    assert_eq!(w["band"][0].as_f64(), Some(0.70));
    assert_eq!(w["band"][1].as_f64(), Some(0.80));
    assert_eq!(w["pass"], true);
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS w_exponent"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "r.toml", FAST_RATES);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for d in [&a, &b] {
        let o = timoshenko(&["rates", "-c", cfg.to_str().unwrap(), "-o", d.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0));
    }
    for f in ["rates.csv", "rates_ifunc.csv", "rates.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn environment_overrides_the_output_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "r.toml", "[output]\ndir = \"ignored\"\nstem = \"sweep\"\n");
    let env_dir = tmp.path().join("env");
    let o = timoshenko(&["roots", "-c", cfg.to_str().unwrap()], Some(&env_dir));
    assert_eq!(o.status.code(), Some(0));
    assert!(env_dir.join("sweep.csv").exists() && env_dir.join("sweep.json").exists());

    let flag_dir = tmp.path().join("flag");
    let o = timoshenko(&["roots", "-c", cfg.to_str().unwrap(), "-o", flag_dir.to_str().unwrap()], Some(&env_dir));
    assert_eq!(o.status.code(), Some(0));
    assert!(flag_dir.join("sweep.json").exists());
}

#[test]
fn band_failure_exits_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "c.toml", "[time]\nsamples = 9\n[data.w1]\nname = \"gaussian\"\n");
    let out = tmp.path().join("out");
    let o = timoshenko(&["cancellation", "-c", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&out.join("cancellation.json"));
    assert_eq!(j["pass"], false);
    assert!(out.join("cancellation_energy.csv").exists());
}

#[test]
fn configuration_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let bad_key = write_config(tmp.path(), "k.toml", "waveSpd = 2.0\n");
    let o = timoshenko(&["roots", "-c", bad_key.to_str().unwrap()], Some(tmp.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("waveSpd"));

    let slow = write_config(tmp.path(), "a.toml", "a = 0.4\n");
    let o = timoshenko(&["roots", "-c", slow.to_str().unwrap()], Some(tmp.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a must exceed 1/2"));

    let other = write_config(tmp.path(), "o.toml", "command = \"rates\"\n");
    let o = timoshenko(&["roots", "-c", other.to_str().unwrap()], Some(tmp.path()));
    assert_eq!(o.status.code(), Some(2));

    let o = timoshenko(&["roots", "-c", "/nonexistent/config.toml"], Some(tmp.path()));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_with_three() {
    let tmp = tempfile::tempdir().unwrap();
    // no sample time falls inside the fit window
    let cfg = write_config(tmp.path(), "f.toml", "[time]\nsamples = 5\nfit_window = [1e5, 1e6]\n");
    let o = timoshenko(&["profile-error", "-c", cfg.to_str().unwrap()], Some(tmp.path()));
    assert_eq!(o.status.code(), Some(3));

    let cfg = write_config(tmp.path(), "m.toml", "[semilinear]\nn = 64\nt_end = 2.0\n");
    let o = timoshenko(&["semilinear", "-c", cfg.to_str().unwrap()], Some(tmp.path()));
    assert_eq!(o.status.code(), Some(3), "gaussian w1 violates the mean condition");
}

#[test]
fn small_semilinear_run_writes_trajectory_and_monitor() {
    let tmp = tempfile::tempdir().unwrap();
    let text = "a = 1.0\n[data.w1]\nname = \"dgaussian\"\n\
                [semilinear]\nl = 50.0\nn = 512\nt_end = 20.0\nfit_window = [5.0, 20.0]\n";
    let cfg = write_config(tmp.path(), "s.toml", text);
    let o = timoshenko(&["semilinear", "-c", cfg.to_str().unwrap()], Some(tmp.path()));
    assert!(matches!(o.status.code(), Some(0 | 1)));
    let csv = fs::read_to_string(tmp.path().join("semilinear.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 41);
    // shear and energy are not computed by the pseudo-spectral solver
    assert!(csv.lines().nth(1).unwrap().ends_with(",,"));
    let monitor = fs::read_to_string(tmp.path().join("semilinear_monitor.csv")).unwrap();
    assert_eq!(monitor.lines().next().unwrap(), "t,x_norm,running_sup");
    let j = json(&tmp.path().join("semilinear.json"));
    assert!(j["values"]["x_at_one"].as_f64().unwrap() > 0.0);
}

#[test]
fn print_config_round_trips_the_preset() {
    let o = timoshenko(&["verify-bounds", "--print-config"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let c = timoshenko_lab::parse_config(&text).unwrap();
    assert_eq!(c, timoshenko_lab::RunConfig::preset(timoshenko_lab::Command::VerifyBounds));
}

#[test]
fn empty_record_list_gives_header_only_csv_and_empty_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let report = Report {
        tables: vec![series_table(&[])],
        ..Report::default()
    };
    let paths = emit_reports(&report, tmp.path(), "empty").unwrap();
    assert_eq!(paths.len(), 2);
    assert_eq!(fs::read_to_string(&paths[0]).unwrap(), format!("{}\n", SERIES_HEADER.join(",")));
    assert_eq!(fs::read_to_string(&paths[1]).unwrap(), "{}\n");
}

#[test]
fn numbers_keep_seventeen_significant_digits() {
    let x = 0.1 + 0.2;
    let report = Report {
        experiment: "x".into(),
        checks: vec![Check::new("v", x, Some(0.0), None).with_stderr(1.0 / 3.0)],
        values: vec![("tiny".into(), 5e-324)],
        ..Report::default()
    };
    let text = report.to_json();
    assert!(text.contains("3.0000000000000004e-1"), "{text}");
    let j: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(j["checks"][0]["v"].as_f64(), Some(x));
    assert_eq!(j["checks"][0]["stderr"].as_f64(), Some(1.0 / 3.0));
    assert_eq!(j["checks"][0]["band"][1], Value::Null);
    assert_eq!(j["values"]["tiny"].as_f64(), Some(5e-324));
}

#[test]
fn checks_respect_open_bands_and_reject_non_finite_values() {
    assert!(Check::new("a", -1e300, None, Some(0.0)).pass());
    assert!(!Check::new("a", 1.0, None, Some(0.0)).pass());
    assert!(!Check::new("a", f64::NAN, None, None).pass());
    assert!(!Check::new("a", f64::INFINITY, Some(0.0), None).pass());
    assert!(Check::new("a", 0.75, Some(0.7), Some(0.8)).line().starts_with("PASS a = 0.75"));
}

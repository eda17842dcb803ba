use proptest::prelude::*;
use std::f64::consts::PI;
use std::path::Path;
use timoshenko_core::data::{moments, Generator};
use timoshenko_lab::config::*;
use timoshenko_lab::{emit_config, generator, parse_config};

#[test]
fn minimal_config_takes_documented_defaults() {
    let c = parse_config("a = 1.0\n").unwrap();
    assert_eq!(c, RunConfig::default());
    assert_eq!(c.command, None);
    assert_eq!(c.seed, 0);
    assert_eq!(c.data.w1, GeneratorSpec::new("gaussian", 1.0, 1.0));
    assert_eq!(c.data.w0.name, "zero");
    assert_eq!((c.time.t_min, c.time.t_max, c.time.samples), (1e2, 1e4, 25));
    assert_eq!(c.time.fit_window, [1e2, 1e4]);
    assert_eq!((c.grid.eps0, c.grid.n0, c.grid.xi_max), (0.1, 10.0, 1e3));
    let s = &c.semilinear;
    assert_eq!((s.p, s.l, s.n, s.dt, s.t_end, s.eps), (4.0, 200.0, 4096, 0.01, 200.0, 1e-2));
    assert_eq!(c.output.dir, "out");
    assert_eq!(parse_config("").unwrap(), c);
}

#[test]
fn partial_tables_keep_other_defaults() {
    let c = parse_config("[time]\nsamples = 9\n[output]\nstem = \"x\"\n").unwrap();
    assert_eq!(c.time.samples, 9);
    assert_eq!(c.time.t_max, 1e4);
    assert_eq!(c.output.dir, "out");
    assert_eq!(c.output.stem.as_deref(), Some("x"));
}

#[test]
fn slow_wave_speed_is_rejected() {
    match parse_config("a = 0.4\n") {
        Err(ConfigError::Validation(v)) => {
            assert!(v.iter().any(|m| m.contains("a must exceed 1/2")), "{v:?}")
        }
        other => panic!("{other:?}"),
    }
    assert!(parse_config("a = 0.5\n").is_err());
}

#[test]
fn unknown_key_is_a_parse_error_naming_it() {
    let e = parse_config("a = 1.0\nwaveSpd = 2.0\n").unwrap_err();
    match &e {
        ConfigError::Parse { line, key, .. } => {
            assert_eq!(*line, 2);
            assert_eq!(key.as_deref(), Some("waveSpd"));
        }
        other => panic!("{other:?}"),
    }
    assert!(e.to_string().contains("waveSpd"));

    let e = parse_config("[grid]\ndensity = 1.0\npanels = 3\n").unwrap_err();
    assert!(matches!(e, ConfigError::Parse { line: 3, ref key, .. } if key.as_deref() == Some("panels")));
}

#[test]
fn type_errors_report_line_and_key() {
    let e = parse_config("seed = 1\na = \"fast\"\n").unwrap_err();
    assert!(matches!(e, ConfigError::Parse { line: 2, ref key, .. } if key.as_deref() == Some("a")), "{e:?}");
}

#[test]
fn validation_lists_every_violation() {
    let text = "a = 0.3\n[time]\nt_min = -1.0\n[semilinear]\nn = 1000\n";
    match parse_config(text) {
        Err(ConfigError::Validation(v)) => {
            assert!(v.len() >= 3, "{v:?}");
            assert!(v.iter().any(|m| m.contains("time.t_min")));
            assert!(v.iter().any(|m| m.contains("semilinear.n")));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_generator_is_reported() {
    let e = parse_config("[data.w1]\nname = \"sech\"\n").unwrap_err();
    assert_eq!(e, ConfigError::UnknownGenerator("sech".into()));
}

#[test]
fn command_requirements() {
    let c = RunConfig::preset(Command::Semilinear);
    assert!(c.validate_for(Command::Semilinear).is_ok());
    assert!(c.validate_for(Command::Rates).is_err());
    let c = RunConfig { a: 2.0, command: None, ..c };
    assert!(c.validate_for(Command::Semilinear).is_err());
}

#[test]
fn registry_examples() {
    let g = generator(&GeneratorSpec::new("gaussian", 1.0, 1.0)).unwrap();
    let m = moments(&g).unwrap();
    assert!((m.p - PI.sqrt()).abs() < 1e-10 && m.q.abs() < 1e-12);

    let g = generator(&GeneratorSpec::new("dgaussian", 1.0, 1.0)).unwrap();
    assert!(moments(&g).unwrap().p.abs() < 1e-12);

    let g = generator(&GeneratorSpec::new("ricker", 1.0, 1.0)).unwrap();
    let m = moments(&g).unwrap();
    assert!(m.p.abs() < 1e-12 && m.q.abs() < 1e-12);

    let spec = GeneratorSpec {
        derivative: 2,
        ..GeneratorSpec::new("gaussian", 0.5, 3.0)
    };
    assert_eq!(generator(&spec).unwrap(), Generator::Ricker { sigma: 0.5, amp: 3.0 });
    assert_eq!(
        generator(&GeneratorSpec::new("box-mollified", 2.0, 0.5)).unwrap(),
        Generator::BoxMollified { half_width: 2.0, amp: 0.5 }
    );
    let too_deep = GeneratorSpec {
        derivative: 1,
        ..GeneratorSpec::new("ricker", 1.0, 1.0)
    };
    assert!(matches!(generator(&too_deep), Err(ConfigError::Validation(_))));
}

#[test]
fn shipped_configs_are_the_presets() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for cmd in Command::ALL {
        let text = std::fs::read_to_string(dir.join(format!("{cmd}.toml"))).unwrap();
        let c = parse_config(&text).unwrap();
        assert_eq!(c, RunConfig::preset(cmd), "{cmd}");
        c.validate_for(cmd).unwrap();
    }
}

#[test]
fn digest_ignores_output_paths() {
    let c = RunConfig::preset(Command::Rates);
    let mut d = c.clone();
    d.output.dir = "elsewhere".into();
    d.output.stem = Some("r".into());
    assert_eq!(c.digest(Command::Rates), d.digest(Command::Rates));
    assert_eq!(c.digest(Command::Rates).len(), 64);
    d.a = 1.5;
    assert_ne!(c.digest(Command::Rates), d.digest(Command::Rates));
}

fn positive() -> impl Strategy<Value = f64> {
    (-6.0f64..6.0).prop_map(|e| 10f64.powf(e))
}

fn spec() -> impl Strategy<Value = GeneratorSpec> {
    (
        prop_oneof![Just("zero"), Just("gaussian"), Just("dgaussian"), Just("ricker"), Just("box-mollified")],
        -10.0f64..10.0,
        positive(),
    )
        .prop_map(|(n, amp, width)| GeneratorSpec::new(n, width, amp))
}

fn config() -> impl Strategy<Value = RunConfig> {
    (
        (0.5001f64..5.0, 0u64..=i64::MAX as u64, proptest::option::of(0usize..8)),
        (spec(), spec(), spec(), spec()),
        (positive(), 2usize..100, positive(), positive()),
        (1.0f64..3.0, 2usize..64, proptest::collection::vec(0.51f64..4.0, 1..4)),
        (1.5f64..8.0, 4u32..14, 1u32..50, proptest::option::of("[a-z]{1,8}")),
    )
        .prop_map(|(top, data, time, misc, semi)| {
            let mut c = RunConfig::default();
            (c.a, c.seed) = (top.0, top.1);
            c.command = top.2.map(|i| Command::ALL[i]);
            (c.data.w0, c.data.w1, c.data.psi0, c.data.psi1) = data;
            c.time.t_min = time.0;
            c.time.t_max = time.0 * (1.0 + time.2);
            c.time.samples = time.1;
            c.time.fit_window = [time.0, time.0 + time.3];
            c.grid.density = misc.0;
            c.roots.count = misc.1;
            c.roots.speeds = misc.2;
            c.semilinear.p = semi.0;
            c.semilinear.n = 1 << semi.1;
            c.semilinear.sample_every = c.semilinear.dt * semi.2 as f64;
            c.output.stem = semi.3;
            c
        })
}

proptest! {
    #[test]
    fn emit_then_parse_is_identity(c in config()) {
        let text = emit_config(&c);
        prop_assert_eq!(parse_config(&text).unwrap(), c);
    }
}

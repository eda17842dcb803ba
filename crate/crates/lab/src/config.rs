//! Run configuration.
//!
//! A config is a TOML document with a few top-level keys and one table per
//! concern. Every key has a default, unknown keys are rejected, and
//! [`emit_config`] writes a document that [`parse_config`] reads back to the
//! same value.
//!
//! ```toml
//! command = "rates"
//! a = 1.0
//!
//! [data.w1]
//! name = "gaussian"
//! width = 1.0
//! amp = 1.0
//!
//! [time]
//! t_min = 100.0
//! t_max = 10000.0
//! samples = 25
//! ```

use crate::generators::{generate_data, generator};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use timoshenko_core::data::InitialData;
use timoshenko_core::experiments::{log_times, BoundsConfig, ExperimentConfig};
use timoshenko_core::norms_rates::{CutoffFamily, GridSpec};
use timoshenko_core::semilinear::SemilinearConfig;
use timoshenko_core::spectral_core::Zones;
use timoshenko_core::WaveSpeed;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("parse error at line {line}{}: {message}", key.as_ref().map(|k| format!(", key `{k}`")).unwrap_or_default())]
    Parse {
        line: usize,
        key: Option<String>,
        message: String,
    },
    #[error("invalid configuration: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Roots,
    SolveLinear,
    Rates,
    ProfileError,
    Cancellation,
    RegularityLoss,
    VerifyBounds,
    Semilinear,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Roots,
        Command::SolveLinear,
        Command::Rates,
        Command::ProfileError,
        Command::Cancellation,
        Command::RegularityLoss,
        Command::VerifyBounds,
        Command::Semilinear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::SolveLinear => "solve-linear",
            Command::Rates => "rates",
            Command::ProfileError => "profile-error",
            Command::Cancellation => "cancellation",
            Command::RegularityLoss => "regularity-loss",
            Command::VerifyBounds => "verify-bounds",
            Command::Semilinear => "semilinear",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn one() -> f64 {
    1.0
}

/// A registered data generator: `name(width, amp)`, optionally
/// differentiated `derivative` times (gaussian only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default = "one")]
    pub amp: f64,
    #[serde(default = "one")]
    pub width: f64,
    #[serde(default)]
    pub derivative: u32,
}

impl GeneratorSpec {
    pub fn new(name: &str, width: f64, amp: f64) -> Self {
        Self {
            name: name.to_string(),
            amp,
            width,
            derivative: 0,
        }
    }

    pub fn zero() -> Self {
        Self::new("zero", 1.0, 1.0)
    }
}

/// Initial data `(w₀, w₁, ψ₀, ψ₁)`. Defaults: `w₁ = gaussian(1, 1)`, the rest zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataSection {
    pub w0: GeneratorSpec,
    pub w1: GeneratorSpec,
    pub psi0: GeneratorSpec,
    pub psi1: GeneratorSpec,
}

impl Default for DataSection {
    fn default() -> Self {
        Self {
            w0: GeneratorSpec::zero(),
            w1: GeneratorSpec::new("gaussian", 1.0, 1.0),
            psi0: GeneratorSpec::zero(),
            psi1: GeneratorSpec::zero(),
        }
    }
}

/// Log-spaced sample times and the power-law fit window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeSection {
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    pub fit_window: [f64; 2],
}

impl Default for TimeSection {
    fn default() -> Self {
        Self {
            t_min: 1e2,
            t_max: 1e4,
            samples: 25,
            fit_window: [1e2, 1e4],
        }
    }
}

/// Frequency zones `(ε₀, N₀)` and the adaptive quadrature controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub eps0: f64,
    pub n0: f64,
    pub density: f64,
    pub envelope_rel: f64,
    pub xi_max: f64,
    pub coarse_cells: usize,
    pub tail_tol: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        let g = GridSpec::default();
        let z = Zones::default();
        Self {
            eps0: z.eps0,
            n0: z.n0,
            density: g.density,
            envelope_rel: g.envelope_rel,
            xi_max: g.xi_max,
            coarse_cells: g.coarse_cells,
            tail_tol: 1e-4,
        }
    }
}

/// Cutoff radius and Gaussian constant of `I(t;k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IfuncSection {
    pub radius: f64,
    pub c: f64,
}

impl Default for IfuncSection {
    fn default() -> Self {
        Self { radius: 0.3, c: 0.5 }
    }
}

/// Root sweep: `count` log-spaced frequencies per wave speed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RootsSection {
    pub speeds: Vec<f64>,
    pub xi_min: f64,
    pub xi_max: f64,
    pub count: usize,
}

impl Default for RootsSection {
    fn default() -> Self {
        Self {
            speeds: vec![0.6, 1.0, 2.0],
            xi_min: 1e-3,
            xi_max: 1e3,
            count: 60,
        }
    }
}

/// Random comparison of the modal representation with the ODE oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleSection {
    pub samples: usize,
    pub t_max: f64,
    pub xi_max: f64,
    pub tol: f64,
}

impl Default for OracleSection {
    fn default() -> Self {
        Self {
            samples: 200,
            t_max: 100.0,
            xi_max: 100.0,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegularitySection {
    pub xis: Vec<f64>,
    pub t0: f64,
}

impl Default for RegularitySection {
    fn default() -> Self {
        Self {
            xis: vec![10.0, 20.0, 40.0, 80.0],
            t0: 50.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsSection {
    pub xi_min: f64,
    pub xi_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub n_xi: usize,
    pub n_t: usize,
    pub c: f64,
    pub refine_tol: f64,
}

impl Default for BoundsSection {
    fn default() -> Self {
        let b = BoundsConfig::default();
        Self {
            xi_min: b.xi_range.0,
            xi_max: b.xi_range.1,
            t_min: b.t_range.0,
            t_max: b.t_range.1,
            n_xi: b.n_xi,
            n_t: b.n_t,
            c: b.c,
            refine_tol: b.refine_tol,
        }
    }
}

/// Pseudo-spectral run on `[−l, l)` with `n` modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SemilinearSection {
    pub p: f64,
    pub l: f64,
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub eps: f64,
    pub sample_every: f64,
    pub fit_window: [f64; 2],
}

impl Default for SemilinearSection {
    fn default() -> Self {
        Self {
            p: 4.0,
            l: 200.0,
            n: 4096,
            dt: 0.01,
            t_end: 200.0,
            eps: 1e-2,
            sample_every: 0.5,
            fit_window: [20.0, 200.0],
        }
    }
}

/// Reports go to `dir/stem.csv` and `dir/stem.json`; the stem defaults to
/// the command name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: "out".to_string(),
            stem: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    pub a: f64,
    pub seed: u64,
    pub data: DataSection,
    pub time: TimeSection,
    pub grid: GridSection,
    pub ifunc: IfuncSection,
    pub roots: RootsSection,
    pub oracle: OracleSection,
    pub regularity: RegularitySection,
    pub bounds: BoundsSection,
    pub semilinear: SemilinearSection,
    pub output: OutputSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            a: 1.0,
            seed: 0,
            data: DataSection::default(),
            time: TimeSection::default(),
            grid: GridSection::default(),
            ifunc: IfuncSection::default(),
            roots: RootsSection::default(),
            oracle: OracleSection::default(),
            regularity: RegularitySection::default(),
            bounds: BoundsSection::default(),
            semilinear: SemilinearSection::default(),
            output: OutputSection::default(),
        }
    }
}

impl RunConfig {
    /// The config shipped in `configs/<command>.toml`.
    pub fn preset(cmd: Command) -> Self {
        let mut c = Self {
            command: Some(cmd),
            ..Self::default()
        };
        match cmd {
            Command::RegularityLoss => c.a = 2.0,
            Command::Semilinear => c.data.w1 = GeneratorSpec::new("dgaussian", 1.0, 1.0),
            _ => {}
        }
        c
    }

    pub fn wave_speed(&self) -> WaveSpeed {
        WaveSpeed::new(self.a).expect("validated config")
    }

    pub fn initial_data(&self) -> InitialData {
        generate_data(&self.data).expect("validated config")
    }

    pub fn experiment(&self) -> ExperimentConfig {
        ExperimentConfig {
            a: self.wave_speed(),
            data: self.initial_data(),
            times: log_times(self.time.t_min, self.time.t_max, self.time.samples),
            window: (self.time.fit_window[0], self.time.fit_window[1]),
            grid: GridSpec {
                density: self.grid.density,
                envelope_rel: self.grid.envelope_rel,
                xi_max: self.grid.xi_max,
                coarse_cells: self.grid.coarse_cells,
            },
            tail_tol: self.grid.tail_tol,
        }
    }

    pub fn zones(&self) -> Zones {
        Zones {
            eps0: self.grid.eps0,
            n0: self.grid.n0,
        }
    }

    pub fn ifunc_cutoff(&self) -> CutoffFamily {
        CutoffFamily {
            eps0: self.ifunc.radius,
            n0: self.grid.n0,
        }
    }

    pub fn bounds_config(&self) -> BoundsConfig {
        let b = &self.bounds;
        BoundsConfig {
            xi_range: (b.xi_min, b.xi_max),
            t_range: (b.t_min, b.t_max),
            n_xi: b.n_xi,
            n_t: b.n_t,
            c: b.c,
            refine_tol: b.refine_tol,
        }
    }

    pub fn semilinear_config(&self) -> SemilinearConfig {
        let s = &self.semilinear;
        SemilinearConfig {
            eps: s.eps,
            p: s.p,
            l: s.l,
            n: s.n,
            dt: s.dt,
            t_end: s.t_end,
            sample_every: s.sample_every,
            fit_window: (s.fit_window[0], s.fit_window[1]),
            ..SemilinearConfig::new(self.wave_speed(), self.initial_data())
        }
    }

    pub fn stem(&self, cmd: Command) -> String {
        self.output.stem.clone().unwrap_or_else(|| cmd.name().to_string())
    }

    /// SHA-256 of the canonical document for `cmd`, output paths excluded.
    pub fn digest(&self, cmd: Command) -> String {
        let canonical = RunConfig {
            command: Some(cmd),
            output: OutputSection::default(),
            ..self.clone()
        };
        hex::encode(Sha256::digest(emit_config(&canonical).as_bytes()))
    }

    /// Invariants that hold for every command.
    pub fn validate(&self) -> Result<(), ConfigError> {
        for g in [&self.data.w0, &self.data.w1, &self.data.psi0, &self.data.psi1] {
            generator(g)?;
        }
        let mut v = Vec::new();
        let mut positive = |name: &str, x: f64| {
            if !(x > 0.0 && x.is_finite()) {
                v.push(format!("{name} must be positive and finite, got {x}"));
            }
        };
        for (k, g) in [
            ("data.w0", &self.data.w0),
            ("data.w1", &self.data.w1),
            ("data.psi0", &self.data.psi0),
            ("data.psi1", &self.data.psi1),
        ] {
            positive(&format!("{k}.width"), g.width);
        }
        let t = &self.time;
        positive("time.t_min", t.t_min);
        positive("time.t_max", t.t_max);
        positive("time.fit_window[0]", t.fit_window[0]);
        positive("time.fit_window[1]", t.fit_window[1]);
        let g = &self.grid;
        positive("grid.eps0", g.eps0);
        positive("grid.n0", g.n0);
        positive("grid.density", g.density);
        positive("grid.envelope_rel", g.envelope_rel);
        positive("grid.xi_max", g.xi_max);
        positive("grid.tail_tol", g.tail_tol);
        positive("ifunc.radius", self.ifunc.radius);
        positive("ifunc.c", self.ifunc.c);
        let r = &self.roots;
        positive("roots.xi_min", r.xi_min);
        positive("roots.xi_max", r.xi_max);
        let o = &self.oracle;
        positive("oracle.t_max", o.t_max);
        positive("oracle.xi_max", o.xi_max);
        positive("oracle.tol", o.tol);
        positive("regularity.t0", self.regularity.t0);
        for (i, &xi) in self.regularity.xis.iter().enumerate() {
            positive(&format!("regularity.xis[{i}]"), xi);
        }
        let b = &self.bounds;
        positive("bounds.xi_min", b.xi_min);
        positive("bounds.xi_max", b.xi_max);
        positive("bounds.t_min", b.t_min);
        positive("bounds.t_max", b.t_max);
        positive("bounds.c", b.c);
        positive("bounds.refine_tol", b.refine_tol);
        let s = &self.semilinear;
        positive("semilinear.l", s.l);
        positive("semilinear.dt", s.dt);
        positive("semilinear.t_end", s.t_end);
        positive("semilinear.eps", s.eps);
        positive("semilinear.sample_every", s.sample_every);
        positive("semilinear.fit_window[0]", s.fit_window[0]);
        positive("semilinear.fit_window[1]", s.fit_window[1]);

        if !(self.a > 0.5) {
            v.push(format!("a must exceed 1/2, got {}", self.a));
        }
        if !(t.t_min < t.t_max) {
            v.push("time.t_min must be below time.t_max".into());
        }
        if t.samples < 2 {
            v.push("time.samples must be at least 2".into());
        }
        if !(t.fit_window[0] < t.fit_window[1]) {
            v.push("time.fit_window must be increasing".into());
        }
        if !(g.eps0 < g.n0) {
            v.push("grid.eps0 must be below grid.n0".into());
        }
        if g.coarse_cells < 2 {
            v.push("grid.coarse_cells must be at least 2".into());
        }
        if r.speeds.is_empty() {
            v.push("roots.speeds must not be empty".into());
        }
        for &a in &r.speeds {
            if !(a > 0.5) {
                v.push(format!("roots.speeds: a must exceed 1/2, got {a}"));
            }
        }
        if !(r.xi_min < r.xi_max) {
            v.push("roots.xi_min must be below roots.xi_max".into());
        }
        if r.count < 2 {
            v.push("roots.count must be at least 2".into());
        }
        if o.samples == 0 {
            v.push("oracle.samples must be positive".into());
        }
        if self.regularity.xis.len() < 2 {
            v.push("regularity.xis needs at least two frequencies".into());
        }
        if !(b.xi_min < b.xi_max && b.t_min < b.t_max) {
            v.push("bounds ranges must be increasing".into());
        }
        if b.n_xi < 2 || b.n_t < 2 {
            v.push("bounds.n_xi and bounds.n_t must be at least 2".into());
        }
        if !(s.p > 1.0) {
            v.push(format!("semilinear.p must exceed 1, got {}", s.p));
        }
        if s.n < 4 || !s.n.is_power_of_two() {
            v.push(format!("semilinear.n must be a power of two, got {}", s.n));
        }
        let per = s.sample_every / s.dt;
        if !((per.round() - per).abs() < 1e-9 && per.round() >= 1.0) {
            v.push("semilinear.sample_every must be a multiple of semilinear.dt".into());
        }
        if !(s.fit_window[0] < s.fit_window[1]) {
            v.push("semilinear.fit_window must be increasing".into());
        }
        if self.seed > i64::MAX as u64 {
            v.push("seed must fit in a signed 64-bit integer".into());
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Validation(v))
        }
    }

    /// [`RunConfig::validate`] plus the requirements of one command.
    pub fn validate_for(&self, cmd: Command) -> Result<(), ConfigError> {
        self.validate()?;
        let mut v = Vec::new();
        if let Some(c) = self.command {
            if c != cmd {
                v.push(format!("config is for `{c}`, not `{cmd}`"));
            }
        }
        if cmd == Command::Semilinear && self.a != 1.0 {
            v.push(format!("semilinear runs require a = 1, got {}", self.a));
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Validation(v))
        }
    }
}

/// Parse and validate a config document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| parse_error(text, &e))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Canonical TOML for a config.
pub fn emit_config(cfg: &RunConfig) -> String {
    toml::to_string(cfg).expect("configs always serialise")
}

fn parse_error(text: &str, e: &toml::de::Error) -> ConfigError {
    let message = e.message().to_string();
    let Some(span) = e.span() else {
        return ConfigError::Parse {
            line: 0,
            key: None,
            message,
        };
    };
    let line = text[..span.start].matches('\n').count() + 1;
    let named = message
        .strip_prefix("unknown field `")
        .and_then(|m| m.split('`').next())
        .map(str::to_string);
    let key = named.or_else(|| {
        let row = text.lines().nth(line - 1)?;
        let k = row.split('=').next()?.trim();
        (!k.is_empty() && !k.starts_with('[')).then(|| k.to_string())
    });
    ConfigError::Parse { line, key, message }
}

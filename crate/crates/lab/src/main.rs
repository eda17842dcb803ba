use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use timoshenko_lab::{emit_reports, exit, parse_config, run, Command, RunConfig, OUT_DIR_ENV};

/// Decay-rate experiments for the dissipative Timoshenko system.
///
/// Without `--config` the shipped default for the command is used. Reports
/// go to `--out-dir`, else `$TIMOSHENKO_OUT_DIR`, else `output.dir`.
/// Exit status: 0 all bands pass, 1 band failure, 2 configuration error,
/// 3 numerical failure.
#[derive(Parser)]
#[command(name = "timoshenko", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// TOML run configuration.
    #[arg(short, long)]
    config: Option<PathBuf>,
    #[arg(short, long)]
    out_dir: Option<PathBuf>,
    /// Print the effective configuration and exit.
    #[arg(long)]
    print_config: bool,
}

fn load(cli: &Cli) -> Result<RunConfig, String> {
    let cfg = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse_config(&text).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => RunConfig::preset(cli.command),
    };
    cfg.validate_for(cli.command).map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::CONFIG_ERROR);
        }
    };
    if cli.print_config {
        print!("{}", timoshenko_lab::emit_config(&cfg));
        return ExitCode::from(exit::PASS);
    }
    let dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(&cfg.output.dir));
    let report = match run(cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("numerical failure: {e}");
            return ExitCode::from(exit::NUMERICAL_FAILURE);
        }
    };
    match emit_reports(&report, &dir, &cfg.stem(cli.command)) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("error: cannot write reports to {}: {e}", dir.display());
            return ExitCode::from(exit::CONFIG_ERROR);
        }
    }
    for c in &report.checks {
        println!("{}", c.line());
    }
    if report.pass() {
        ExitCode::from(exit::PASS)
    } else {
        ExitCode::from(exit::BAND_FAILURE)
    }
}

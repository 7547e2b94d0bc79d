use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use experiments::{execute, ExperimentConfig};

/// Run one experiment suite and write its CSV tables and manifest.
#[derive(Parser, Debug)]
#[command(name = "workbench", version)]
struct Cli {
    /// identities, cuspidality, norm_equiv, vanishing, stabilize, orbital_bound, volumes or mc
    suite: String,
    /// key = value file applied before the flags below
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    ell: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    translates: Option<String>,
    #[arg(long = "mc-draws")]
    mc_draws: Option<String>,
    #[arg(long)]
    imax: Option<String>,
    #[arg(long)]
    kmax: Option<String>,
    #[arg(long)]
    jmax: Option<String>,
    #[arg(long)]
    precision: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    cache: Option<String>,
    /// exact or mc
    #[arg(long)]
    mode: Option<String>,
    /// also scan the inflated Lie algebra cuspidal
    #[arg(long)]
    lie: bool,
}

fn config(cli: &Cli) -> Result<ExperimentConfig, String> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.apply_file(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    cfg.set("suite", &cli.suite).map_err(|e| e.to_string())?;
    let flags = [
        ("n", &cli.n),
        ("ell", &cli.ell),
        ("seed", &cli.seed),
        ("samples", &cli.samples),
        ("translates", &cli.translates),
        ("mc_draws", &cli.mc_draws),
        ("i_max", &cli.imax),
        ("k_max", &cli.kmax),
        ("j_max", &cli.jmax),
        ("precision", &cli.precision),
        ("out", &cli.out),
        ("cache", &cli.cache),
        ("mode", &cli.mode),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v).map_err(|e| e.to_string())?;
        }
    }
    if cli.lie {
        cfg.lie = true;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("workbench: {e}");
            return ExitCode::from(2);
        }
    };
    match execute(&cfg) {
        Ok(m) => {
            for c in &m.checks {
                let status = if c.passed() { "ok  " } else { "FAIL" };
                println!("{status} {} ({} cases, {} failures)", c.name, c.cases, c.failures);
            }
            for note in &m.notes {
                println!("note: {note}");
            }
            if let Some(e) = &m.error {
                eprintln!("workbench: {e}");
            }
            if m.noop {
                println!("no-op: nothing was checked");
            }
            println!("manifest: {}", experiments::run::manifest_path(&cfg).display());
            ExitCode::from(m.exit_code as u8)
        }
        Err(e) => {
            eprintln!("workbench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

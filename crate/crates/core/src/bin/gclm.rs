use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gclm::config::RunConfig;
use gclm::io::output_root;
use gclm::pipeline::{self, exit};
use gclm::presets::preset_names;
use gclm::profiles::ProfileKind;
use gclm::traveling_wave::WaveSettings;
use gclm::Error;

/// Dynamic rescaling and traveling-wave computations for the generalized
/// Constantin-Lax-Majda model. Output goes under $GCLM_OUTPUT_ROOT (default
/// ./gclm-out) unless --out is given.
#[derive(Parser)]
#[command(name = "gclm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a dynamic rescaling simulation.
    Simulate {
        /// Config file or preset name.
        #[arg(long)]
        config: String,
        /// Override a config key, as key=value.
        #[arg(long = "set")]
        overrides: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the traveling-wave fixed point for parameter a.
    TravelingWave {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 0.005)]
        drho: f64,
        /// Outer end of the grid (default 1e6 for a < 0, 1e2 otherwise).
        #[arg(long)]
        m_w: Option<f64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1.0)]
        relaxation: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the steady-equation residual of a closed-form profile.
    VerifyProfile {
        /// clm0, de-gregorio-half, castro, c-alpha, singular-halfline.
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.5, 2.0, 5.0])]
        points: Vec<f64>,
        /// Exit with status 4 if any residual exceeds this.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Fit two-scale power laws to a history CSV.
    Fit {
        #[arg(long)]
        history: PathBuf,
        /// Physical-time window t1,t2.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        window: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the normalized inner profile from a snapshot CSV.
    InnerProfile {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long, default_value_t = 5.0)]
        extent: f64,
        #[arg(long, default_value_t = 401)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the exact a = 0 solution at time t.
    OracleA0 {
        #[arg(long)]
        t: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 0.25, 0.5, 0.8, 1.2, 2.0, 3.0])]
        points: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run several configurations concurrently.
    Sweep {
        /// Config files or preset names.
        #[arg(long = "config")]
        configs: Vec<String>,
        /// Add every preset whose name starts with this.
        #[arg(long)]
        prefix: Option<String>,
        /// Override a key in every config, as key=value.
        #[arg(long = "set")]
        overrides: Vec<String>,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(source: &str, overrides: &[String]) -> gclm::Result<RunConfig> {
    let mut cfg = RunConfig::load(source)?;
    for o in overrides {
        cfg.set_str(o)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn profile_kind(kind: &str, a: Option<f64>, alpha: Option<f64>) -> gclm::Result<ProfileKind> {
    let need = |v: Option<f64>, n: &str| v.ok_or_else(|| Error::Config(format!("--{n} is required for {kind}")));
    Ok(match kind {
        "clm0" => ProfileKind::Clm0,
        "de-gregorio-half" => ProfileKind::DeGregorioHalf,
        "castro" => ProfileKind::Castro { a: need(a, "a")? },
        "c-alpha" => ProfileKind::CAlpha { alpha: need(alpha, "alpha")? },
        "singular-halfline" => ProfileKind::SingularHalfLine { a: need(a, "a")? },
        _ => return Err(Error::Config(format!("unknown profile kind {kind}"))),
    })
}

fn run(cli: Cli) -> gclm::Result<i32> {
    let root = output_root();
    match cli.command {
        Command::Simulate { config, overrides, out } => {
            let cfg = load(&config, &overrides)?;
            let dir = out.unwrap_or_else(|| root.join(&cfg.name));
            let (s, code) = pipeline::simulate_to(&dir, &cfg)?;
            println!("{}", serde_json::to_string(&s)?);
            Ok(code)
        }
        Command::TravelingWave { a, drho, m_w, tol, max_iter, relaxation, out } => {
            let settings = WaveSettings { m_w, drho, tol, max_iter, relaxation, ..Default::default() };
            let dir = out.unwrap_or_else(|| root.join(format!("wave_a{a}")));
            let (_, s) = pipeline::traveling_wave_to(&dir, a, &settings)?;
            println!("{}", serde_json::to_string(&s)?);
            Ok(if s.converged { exit::OK } else { exit::NOT_CONVERGED })
        }
        Command::VerifyProfile { kind, a, alpha, points, tol } => {
            let k = profile_kind(&kind, a, alpha)?;
            let rows = pipeline::verify_profile(k, &points)?;
            println!("{:>12} {:>14} {:>14} {:>14} {:>12}", "X", "Omega", "HOmega", "U", "residual");
            for r in &rows {
                println!("{:>12.6} {:>14.6e} {:>14.6e} {:>14.6e} {:>12.3e}", r.x, r.omega, r.hilbert, r.velocity, r.residual);
            }
            let ok = rows.iter().all(|r| r.residual.abs() <= tol);
            Ok(if ok { exit::OK } else { exit::NOT_CONVERGED })
        }
        Command::Fit { history, window, out } => {
            let dir = out.unwrap_or_else(|| history.parent().map(PathBuf::from).unwrap_or_default());
            let w = window.map(|v| [v[0], v[1]]);
            let fit = pipeline::fit_to(&history, &dir, w)?;
            println!("{}", serde_json::to_string(&fit)?);
            Ok(exit::OK)
        }
        Command::InnerProfile { snapshot, extent, samples, out } => {
            let dir = out.unwrap_or_else(|| snapshot.parent().map(PathBuf::from).unwrap_or_default());
            let inner = pipeline::inner_profile_to(&snapshot, &dir, extent, samples)?;
            println!("{}", serde_json::to_string(&inner.peak)?);
            Ok(exit::OK)
        }
        Command::OracleA0 { t, points, out } => {
            let dir = out.unwrap_or_else(|| root.join(format!("oracle_t{t}")));
            for r in pipeline::oracle_to(&dir, &points, t)? {
                println!("{:.6} {:.12e} {:.12e}", r[0], r[1], r[2]);
            }
            Ok(exit::OK)
        }
        Command::Sweep { mut configs, prefix, overrides, threads, out } => {
            if let Some(p) = prefix {
                configs.extend(preset_names(&p).into_iter().map(String::from));
            }
            if configs.is_empty() {
                return Err(Error::Config("sweep needs --config or --prefix".into()));
            }
            let cfgs = configs.iter().map(|c| load(c, &overrides)).collect::<gclm::Result<Vec<_>>>()?;
            let dir = out.unwrap_or(root);
            let entries = pipeline::sweep(&dir, &cfgs, threads)?;
            for e in &entries {
                match &e.summary {
                    Some(s) => println!("{} code={} gamma={:.6} residual={:.3e}", e.name, e.code, s.gamma, s.residual),
                    None => println!("{} code={} error={}", e.name, e.code, e.error.as_deref().unwrap_or("")),
                }
            }
            Ok(entries.iter().map(|e| e.code).max().unwrap_or(exit::OK))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("gclm: {e}");
            ExitCode::from(pipeline::error_code(&e) as u8)
        }
    }
}

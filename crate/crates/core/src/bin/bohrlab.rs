use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bohrlab::cli::{emit_plot_data, run, OutputFormat, PlotKind, RunConfig};
use bohrlab::modular::{coefficients_of_minus_j_minus, eval_j, max_modulus_on_circle, minus_j_minus};
use bohrlab::{Error, VerificationReport, C64, E_MINUS_PI};

#[derive(Parser)]
#[command(name = "bohrlab", version, about = "Bohr-type inequality workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Truncation order of every series.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// json or csv
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the tolerance of records whose name starts with NAME.
    #[arg(long = "tolerance", value_name = "NAME=VAL")]
    tolerances: Vec<String>,
    /// key = value file; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        /// theorem21, proof-trace, classical, von-neumann, harmonic,
        /// radius-scan, modular, hyperbolic, algebra or all (repeatable).
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Modular coefficients, constants and the max-modulus scan as JSON.
    Modular {
        #[arg(long, default_value_t = 64)]
        order: usize,
    },
    /// Hyperbolic inequality battery.
    Hyperbolic {
        #[command(flatten)]
        common: Common,
    },
    /// Plot-ready CSV table.
    Plot {
        /// bohr-vs-radius, modular-coefficients or margin-histogram
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        common: Common,
    },
}

fn config(common: &Common, suites: Option<Vec<String>>) -> Result<RunConfig, Error> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = suites {
        cfg.suites = s;
    }
    if let Some(n) = common.order {
        cfg.order = n;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(f) = &common.format {
        cfg.output_format = f.parse()?;
    }
    if common.out.is_some() {
        cfg.output_path = common.out.clone();
    }
    for t in &common.tolerances {
        let (k, v) = t.split_once('=').ok_or_else(|| Error::Config(format!("--tolerance {t:?}: expected NAME=VAL")))?;
        let v: f64 = v.parse().map_err(|e| Error::Config(format!("--tolerance {t:?}: {e}")))?;
        cfg.tolerance_overrides.insert(k.to_string(), v);
    }
    Ok(cfg)
}

fn print_report(report: &VerificationReport, cfg: &RunConfig) {
    if cfg.output_path.is_none() {
        match cfg.output_format {
            OutputFormat::Json => println!("{}", report.to_json()),
            OutputFormat::Csv => print!("{}", report.to_csv()),
        }
    }
    eprintln!("{} passed, {} failed", report.summary.passed, report.summary.failed);
}

fn modular_json(order: usize) -> Result<serde_json::Value, Error> {
    let exp = coefficients_of_minus_j_minus(order);
    let q = E_MINUS_PI;
    let half = eval_j(C64::new(q, 0.0))?;
    let minus = eval_j(C64::new(-q, 0.0))?;
    let mut scan = Vec::new();
    for k in 1..=20 {
        let m = max_modulus_on_circle(q * k as f64 / 20.0, 720)?;
        scan.push(serde_json::json!({
            "radius": m.radius,
            "max": m.max_value,
            "at_minus_r": m.value_at_minus_r,
            "argmax_at_minus_r": m.argmax_at_minus_r(),
        }));
    }
    Ok(serde_json::json!({
        "m_coeffs": exp.m_coeffs(),
        "constants": {
            "J(e^-pi)": { "value": [half.re, half.im], "residual": (half - 0.5).norm() },
            "J(-e^-pi)": { "value": [minus.re, minus.im], "residual": (minus.norm() - 1.0).abs() },
            "-J(-e^-pi)": minus_j_minus(q)?,
        },
        "max_modulus_scan": scan,
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| -> Result<bool, Error> {
        match cli.command {
            Command::Verify { suites, common } => {
                let cfg = config(&common, Some(suites))?;
                let report = run(&cfg)?;
                print_report(&report, &cfg);
                Ok(report.all_passed())
            }
            Command::Hyperbolic { common } => {
                let cfg = config(&common, Some(vec!["hyperbolic".into()]))?;
                let report = run(&cfg)?;
                print_report(&report, &cfg);
                Ok(report.all_passed())
            }
            Command::Modular { order } => {
                println!("{}", serde_json::to_string_pretty(&modular_json(order)?).expect("json"));
                Ok(true)
            }
            Command::Plot { kind, common } => {
                let kind: PlotKind = kind.parse()?;
                let mut cfg = config(&common, None)?;
                let out = cfg.output_path.take();
                let report = run(&cfg)?;
                let table = emit_plot_data(&report, kind)?;
                match out {
                    Some(p) => std::fs::write(&p, table).map_err(|e| Error::IoFailure(format!("{}: {e}", p.display())))?,
                    None => print!("{table}"),
                }
                Ok(true)
            }
        }
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

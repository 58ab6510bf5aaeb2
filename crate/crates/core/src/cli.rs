//! Run configuration, the suite runner and plot-data tables.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lab::{self, build_corpus};
use crate::modular::coefficients_of_minus_j_minus;
use crate::report::{csv_field, VerificationRecord, VerificationReport};

pub const SUITES: [&str; 9] = ["theorem21", "proof-trace", "classical", "von-neumann", "harmonic", "radius-scan", "modular", "hyperbolic", "algebra"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub order: usize,
    /// Record-name prefix → tolerance.
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub suites: Vec<String>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: crate::series::DEFAULT_ORDER,
            tolerance_overrides: BTreeMap::new(),
            suites: vec!["all".to_string()],
            output_format: OutputFormat::Json,
            output_path: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Applies `key = value` lines (`#` comments allowed). Keys: `order`,
    /// `seed`, `suites` (comma separated), `format`, `out`, `tolerance.<name>`.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = |e: &dyn std::fmt::Display| Error::Config(format!("line {}: {k}: {e}", i + 1));
            match k {
                "order" => self.order = v.parse().map_err(|e| bad(&e))?,
                "seed" => self.seed = v.parse().map_err(|e| bad(&e))?,
                "suites" | "suite" => self.suites = v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                "format" => self.output_format = v.parse()?,
                "out" => self.output_path = Some(PathBuf::from(v)),
                _ => match k.strip_prefix("tolerance.") {
                    Some(name) => {
                        self.tolerance_overrides.insert(name.to_string(), v.parse().map_err(|e| bad(&e))?);
                    }
                    None => return Err(Error::Config(format!("line {}: unknown key {k:?}", i + 1))),
                },
            }
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let mut cfg = RunConfig::default();
        cfg.apply_file(&std::fs::read_to_string(path)?)?;
        Ok(cfg)
    }

    fn resolved_suites(&self) -> Result<Vec<&'static str>> {
        if self.suites.is_empty() {
            return Err(Error::UnknownSuite(String::new()));
        }
        let mut out = Vec::new();
        for s in &self.suites {
            if s == "all" {
                out.extend(SUITES);
            } else {
                out.push(*SUITES.iter().find(|k| **k == s.as_str()).ok_or_else(|| Error::UnknownSuite(s.clone()))?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn run_suite(name: &str, cfg: &RunConfig) -> Result<Vec<VerificationRecord>> {
    let n = cfg.order;
    match name {
        "theorem21" => lab::suite_theorem21(n),
        "proof-trace" => lab::suite_proof_trace(n),
        "classical" => lab::suite_classical(n),
        "von-neumann" => lab::suite_von_neumann(n),
        "harmonic" => lab::suite_harmonic(n),
        "radius-scan" => lab::suite_radius_scan(n),
        "modular" => lab::suite_modular(n),
        "hyperbolic" => lab::suite_hyperbolic(cfg.seed),
        "algebra" => lab::suite_algebra(n, cfg.seed),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Runs the requested suites on worker threads and joins the records into a
/// sorted report; writes it when `output_path` is set.
pub fn run(config: &RunConfig) -> Result<VerificationReport> {
    if config.order < 8 {
        return Err(Error::Config(format!("order {} is below 8", config.order)));
    }
    let suites = config.resolved_suites()?;
    let results: Vec<Result<Vec<VerificationRecord>>> = std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|name| s.spawn(move || run_suite(name, config))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    for rec in &mut records {
        // longest matching prefix wins
        let hit = config.tolerance_overrides.iter().filter(|(k, _)| rec.name.starts_with(k.as_str())).max_by_key(|(k, _)| k.len());
        if let Some((_, &tol)) = hit {
            rec.retolerate(tol);
        }
    }
    let cfg_json = serde_json::json!({
        "order": config.order,
        "seed": config.seed,
        "suites": suites,
        "tolerance_overrides": config.tolerance_overrides,
    });
    let report = VerificationReport::new(cfg_json, records);
    if let Some(path) = &config.output_path {
        let body = match config.output_format {
            OutputFormat::Json => report.to_json(),
            OutputFormat::Csv => report.to_csv(),
        };
        std::fs::write(path, body).map_err(|e| Error::IoFailure(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    BohrVsRadius,
    ModularCoefficients,
    MarginHistogram,
}

impl FromStr for PlotKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bohr-vs-radius" => Ok(PlotKind::BohrVsRadius),
            "modular-coefficients" => Ok(PlotKind::ModularCoefficients),
            "margin-histogram" => Ok(PlotKind::MarginHistogram),
            _ => Err(Error::Config(format!("unknown plot kind {s:?}"))),
        }
    }
}

/// CSV table for plotting. The order is read from the report's config.
pub fn emit_plot_data(report: &VerificationReport, kind: PlotKind) -> Result<String> {
    if report.records.is_empty() {
        return Err(Error::MissingData("report has no records".to_string()));
    }
    let order = report.config.get("order").and_then(|v| v.as_u64()).unwrap_or(crate::series::DEFAULT_ORDER as u64) as usize;
    let mut out = String::new();
    match kind {
        PlotKind::BohrVsRadius => {
            let corpus = build_corpus(order)?;
            out.push('r');
            for e in &corpus {
                out.push(',');
                out.push_str(&csv_field(&e.label));
            }
            out.push('\n');
            for i in 0..100 {
                let r = i as f64 / 99.0 / 3.0;
                out.push_str(&format!("{r:e}"));
                for e in &corpus {
                    out.push_str(&format!(",{:e}", e.series.bohr_majorant(r, 1)?.value));
                }
                out.push('\n');
            }
        }
        PlotKind::ModularCoefficients => {
            out.push_str("n,M_n\n");
            for (n, m) in coefficients_of_minus_j_minus(order).m_coeffs().iter().enumerate() {
                out.push_str(&format!("{n},{m:e}\n"));
            }
        }
        PlotKind::MarginHistogram => {
            let margins: Vec<f64> = report.records.iter().map(|r| r.margin).filter(|m| m.is_finite()).collect();
            if margins.is_empty() {
                return Err(Error::MissingData("no finite margins".to_string()));
            }
            let lo = margins.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = margins.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let bins = 20usize;
            let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
            let mut counts = vec![0usize; bins];
            for m in margins {
                counts[(((m - lo) / width) as usize).min(bins - 1)] += 1;
            }
            out.push_str("bin_lo,bin_hi,count\n");
            for (i, n) in counts.iter().enumerate() {
                out.push_str(&format!("{:e},{:e},{n}\n", lo + i as f64 * width, lo + (i + 1) as f64 * width));
            }
        }
    }
    Ok(out)
}

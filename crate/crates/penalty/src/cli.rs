//! Subcommands and exit codes: 0 on success, 1 on a domain or verification
//! failure, 2 on an I/O or parse failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use penalty_core::oracles::{verify_report_using, ClosedForms, McConfig, Standard, VerifyOptions};
use penalty_core::{
    consent_analysis_pi, consent_optimal_penalty, critical_gratification, critical_gratification_pi,
    critical_weight, region_map, welfare_optimal_penalty, welfare_optimal_penalty_pi, woman_optimal_penalty,
    woman_optimal_penalty_pi, FormulaVariant, LinearConsent, ModelParams, Penalty, Regime,
};
use thiserror::Error;

use crate::config::{ConfigError, RunConfig};
use crate::output::{self, OptimalRow};
use crate::parallel::Threaded;
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "penalty", version, about = "Optimal penalties for unwelcome advances: curves, optima and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides `output_dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Monte Carlo root seed; overrides `monte_carlo.seed`.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the model assumptions.
    Validate(Common),
    /// Classify a grid of type pairs at one penalty.
    RegionMap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: f64,
    },
    /// Welfare and consent curves over the penalty grid.
    Curves(Common),
    /// Optimal penalties and critical thresholds for both regimes.
    Optimal(Common),
    /// Closed forms against quadrature, Monte Carlo and search oracles.
    Verify(Common),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Write { .. } => 2,
            CliError::Domain(_) => 1,
        }
    }
}

/// A loaded configuration with command-line overrides applied.
pub struct Run {
    pub config: RunConfig,
    pub out_dir: PathBuf,
}

impl Run {
    pub fn load(common: &Common) -> Result<Run, CliError> {
        let mut config = RunConfig::load(&common.config)?;
        if let Some(seed) = common.seed {
            config.monte_carlo.seed = seed;
        }
        let out_dir = common.out.clone().unwrap_or_else(|| config.output_dir.clone());
        Ok(Run { config, out_dir })
    }

    fn valid_params(&self) -> Result<ModelParams, CliError> {
        let params = self.config.params();
        params.validate().map_err(|violations| {
            CliError::Domain(violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))
        })?;
        Ok(params)
    }

    fn write(&self, name: &str, fill: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> Result<PathBuf, CliError> {
        let path = self.out_dir.join(name);
        let mut buf = Vec::new();
        fill(&mut buf).map_err(|source| CliError::Write { path: path.clone(), source })?;
        write_file(&path, &buf)?;
        Ok(path)
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let wrap = |source| CliError::Write { path: path.to_path_buf(), source };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(wrap)?;
    }
    fs::write(path, bytes).map_err(wrap)
}

/// Parses `args` and runs the subcommand, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli.command, out, &Standard) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a subcommand against the given closed forms. Only `verify` consults
/// them; tests pass altered forms to confirm a wrong formula is caught.
pub fn dispatch(command: &Command, out: &mut dyn Write, forms: &dyn ClosedForms) -> Result<u8, CliError> {
    match command {
        Command::Validate(common) => validate(&Run::load(common)?, out),
        Command::RegionMap { common, lambda } => region(&Run::load(common)?, *lambda, out),
        Command::Curves(common) => curves(&Run::load(common)?, out),
        Command::Optimal(common) => optimal(&Run::load(common)?, out),
        Command::Verify(common) => verify(&Run::load(common)?, out, forms),
    }
}

fn validate(run: &Run, out: &mut dyn Write) -> Result<u8, CliError> {
    match run.config.params().validate() {
        Ok(()) => {
            let _ = writeln!(out, "ok");
            Ok(0)
        }
        Err(violations) => {
            for v in violations {
                let _ = writeln!(out, "{v}");
            }
            Ok(1)
        }
    }
}

fn region(run: &Run, lambda: f64, out: &mut dyn Write) -> Result<u8, CliError> {
    let params = run.valid_params()?;
    if Regime::from(run.config.regime) != Regime::Complete {
        return Err(CliError::Domain("region maps are defined for the complete regime only".into()));
    }
    let pen = Penalty::try_new(lambda).ok_or_else(|| CliError::Domain(format!("lambda = {lambda} is not a valid penalty")))?;
    let map = region_map(&params, pen, run.config.resolution);
    let path = run.write("region_map.csv", |b| output::write_region_map(b, &map))?;
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(0)
}

fn curves(run: &Run, out: &mut dyn Write) -> Result<u8, CliError> {
    let params = run.valid_params()?;
    let lambdas = run.config.lambda_grid.points();
    let paths = match Regime::from(run.config.regime) {
        Regime::Complete => vec![
            run.write("welfare.csv", |b| output::write_welfare_curve(b, &params, &lambdas))?,
            run.write("consent.csv", |b| output::write_consent_curve(b, &params, &lambdas))?,
        ],
        Regime::Private => vec![run.write("private_curves.csv", |b| output::write_private_curves(b, &params, &lambdas))?],
    };
    for p in paths {
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok(0)
}

/// The optimal-penalty table for both regimes.
pub fn optimal_rows(params: &ModelParams) -> Vec<OptimalRow> {
    let row = |regime, approach, value| OptimalRow { regime, approach, value };
    let alpha = params.alpha;
    let linear = LinearConsent::new(alpha);
    vec![
        row("complete", "woman_optimal", Some(woman_optimal_penalty(params).value())),
        row("complete", "welfare_optimal", Some(welfare_optimal_penalty(params).penalty.value())),
        row("complete", "consent_optimal", consent_optimal_penalty(params, alpha).ok().map(|o| o.penalty.value())),
        row("complete", "critical_gratification_as_printed", Some(critical_gratification(params, FormulaVariant::AsPrinted))),
        row("complete", "critical_gratification_rederived", Some(critical_gratification(params, FormulaVariant::Rederived))),
        row("complete", "critical_weight_as_printed", Some(critical_weight(params, FormulaVariant::AsPrinted))),
        row("complete", "critical_weight_rederived", Some(critical_weight(params, FormulaVariant::Rederived))),
        row("private", "woman_optimal", Some(woman_optimal_penalty_pi(params).value())),
        row("private", "welfare_optimal", Some(welfare_optimal_penalty_pi(params).penalty.value())),
        row(
            "private",
            "consent_optimal_min",
            consent_analysis_pi(params, Penalty::ZERO, &linear).ok().map(|a| a.min_optimal_penalty.value()),
        ),
        row("private", "critical_gratification", Some(critical_gratification_pi(params))),
    ]
}

fn optimal(run: &Run, out: &mut dyn Write) -> Result<u8, CliError> {
    let params = run.valid_params()?;
    let rows = optimal_rows(&params);
    run.write("optimal.csv", |b| output::write_optimal(b, &rows))?;
    let _ = write!(out, "{}", report::optimal_table(&rows));
    Ok(0)
}

fn verify(run: &Run, out: &mut dyn Write, forms: &dyn ClosedForms) -> Result<u8, CliError> {
    let opts = VerifyOptions { monte_carlo: Some(McConfig::from(run.config.monte_carlo)), ..VerifyOptions::default() };
    let result = verify_report_using(&run.config.params(), &opts, forms, &Threaded);
    let table = report::report_table(&result);
    run.write("verify.txt", |b| b.write_all(table.as_bytes()))?;
    run.write("verify.json", |b| b.write_all(report::report_json(&result).as_bytes()))?;
    let _ = write!(out, "{table}");
    Ok(if result.passed() { 0 } else { 1 })
}

//! The `generate`, `run` and `sweep` subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use lle_core::dataset::{gen_swiss_roll_hole, load_csv, save_csv, Hole, SwissRollDomain};
use lle_core::diagnostics::diagnose;
use lle_core::oracle::projection_pattern;
use lle_core::spectral::run_lle;
use lle_core::{LleRun, PointCloud, ProjectionPattern};

use crate::config::{ExperimentConfig, ModeKind};
use crate::report::{self, ExperimentOutcome};
use crate::{svg, CliError};

/// Offset that decorrelates the isometry's random stream from the roll's.
const EMBEDDING_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

/// Loads `--input` or samples the roll, then applies the configured
/// embedding.
pub fn build_cloud(config: &ExperimentConfig) -> Result<PointCloud, CliError> {
    let base = match &config.input {
        Some(path) => load_csv(path)?,
        None => {
            let hole = config.hole.then(|| Hole::centered(&SwissRollDomain::default()));
            gen_swiss_roll_hole(config.n_points, config.seed, hole)?
        }
    };
    Ok(config
        .embedding
        .apply(&base, config.d_out, config.seed.wrapping_add(EMBEDDING_SEED_OFFSET))?)
}

fn check_sizes(config: &ExperimentConfig, cloud: &PointCloud) -> Result<(), CliError> {
    if config.k >= cloud.len() {
        return Err(CliError::Config(format!("k must be less than the number of points (k={}, N={})", config.k, cloud.len())));
    }
    if config.d >= cloud.len() {
        return Err(CliError::Config(format!("d must be less than the number of points (d={}, N={})", config.d, cloud.len())));
    }
    Ok(())
}

/// Runs the pipeline, the projection-pattern oracle and the diagnostics.
pub fn experiment(
    cloud: &PointCloud,
    config: &ExperimentConfig,
) -> Result<(LleRun, ProjectionPattern, ExperimentOutcome), CliError> {
    check_sizes(config, cloud)?;
    let run = run_lle(cloud, config.k, config.d, config.weight_mode())?;
    let pattern = projection_pattern(cloud, &run.graph, &run.weights, config.d)?;
    let report = diagnose(cloud, &run, &pattern)?;
    let outcome = ExperimentOutcome { report, pattern_cost: pattern.cost, n_points: cloud.len(), d_out: cloud.dim() };
    Ok((run, pattern, outcome))
}

fn shade(cloud: &PointCloud) -> Vec<f64> {
    match cloud.params() {
        Some(p) => p.column(0).iter().copied().collect(),
        None => (0..cloud.len()).map(|i| i as f64).collect(),
    }
}

fn write_experiment(
    dir: &Path,
    config: &ExperimentConfig,
    cloud: &PointCloud,
    run: &LleRun,
    pattern: &ProjectionPattern,
    outcome: &ExperimentOutcome,
) -> Result<String, CliError> {
    fs::create_dir_all(dir)?;
    let mut buf = Vec::new();
    run.embedding.write_csv(&mut buf)?;
    fs::write(dir.join("embedding.csv"), buf)?;
    let mut buf = Vec::new();
    pattern.write_csv(&mut buf)?;
    fs::write(dir.join("pattern.csv"), buf)?;
    let row = report::row(config, outcome);
    fs::write(dir.join("report.csv"), report::table([row.as_str()]))?;
    let eps = match config.mode {
        ModeKind::Exact => "exact".to_string(),
        ModeKind::Regularized => format!("eps_ratio={:e}", config.eps_ratio),
    };
    let title = format!("{} k={} {eps}", config.embedding.name(), config.k);
    fs::write(dir.join("scatter.svg"), svg::scatter(&run.embedding.y, &shade(cloud), &title))?;
    Ok(row)
}

/// Writes `swissroll.csv` (with the `s,h` chart) into the output directory.
pub fn cmd_generate(config: &ExperimentConfig) -> Result<PathBuf, CliError> {
    config.validate_data()?;
    let cloud = build_cloud(config)?;
    fs::create_dir_all(&config.out)?;
    let path = config.out.join("swissroll.csv");
    save_csv(&cloud, &path)?;
    Ok(path)
}

/// Writes `embedding.csv`, `pattern.csv`, `report.csv` and `scatter.svg`.
pub fn cmd_run(config: &ExperimentConfig) -> Result<ExperimentOutcome, CliError> {
    config.validate()?;
    let cloud = build_cloud(config)?;
    let (run, pattern, outcome) = experiment(&cloud, config)?;
    write_experiment(&config.out, config, &cloud, &run, &pattern, &outcome)?;
    Ok(outcome)
}

/// Regularized runs at each ratio, each in its own `eps_NN` directory, plus
/// `sweep.csv` (all report rows) and `summary.csv`.
pub fn cmd_sweep_eps(config: &ExperimentConfig, ratios: &[f64]) -> Result<Vec<ExperimentOutcome>, CliError> {
    if ratios.is_empty() {
        return Err(CliError::Config("eps ratio list is empty".into()));
    }
    let configs: Vec<ExperimentConfig> = ratios
        .iter()
        .enumerate()
        .map(|(i, &eps_ratio)| ExperimentConfig {
            mode: ModeKind::Regularized,
            eps_ratio,
            out: config.out.join(format!("eps_{i:02}")),
            ..config.clone()
        })
        .collect();
    for c in &configs {
        c.validate()?;
    }
    let cloud = build_cloud(config)?;
    let results: Vec<(String, ExperimentOutcome)> = configs
        .par_iter()
        .map(|c| {
            let (run, pattern, outcome) = experiment(&cloud, c)?;
            let row = write_experiment(&c.out, c, &cloud, &run, &pattern, &outcome)?;
            Ok((row, outcome))
        })
        .collect::<Result<_, CliError>>()?;

    fs::write(config.out.join("sweep.csv"), report::table(results.iter().map(|(r, _)| r.as_str())))?;
    let mut summary = String::from("eps_ratio,affine_fit_residual,param_recovery,null_multiplicity,projection_detected\n");
    for (eps, (_, o)) in ratios.iter().zip(&results) {
        let recovery = o.report.param_recovery.map(|v| format!("{v:.16e}")).unwrap_or_default();
        summary.push_str(&format!(
            "{eps:.16e},{:.16e},{recovery},{},{}\n",
            o.report.affine_fit_residual,
            o.report.null_multiplicity,
            o.report.projection_detected()
        ));
    }
    fs::write(config.out.join("summary.csv"), summary)?;
    Ok(results.into_iter().map(|(_, o)| o).collect())
}

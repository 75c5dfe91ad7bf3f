//! Experiment configuration: a flat JSON document, environment overrides
//! for the grid parameters, command-line flags on top, and a content hash
//! of the fully resolved result for provenance tagging.

use crate::CliError;
use hb_core::Grid;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

/// Flat experiment description. Every field is optional; the subcommand
/// decides which ones it needs. Coefficients are [re, im] pairs.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Redundant experiment kind; must match the subcommand when present.
    pub kind: Option<String>,
    /// Named symbol ("half-one-plus-z" or "rz(r)").
    pub preset: Option<String>,
    /// Polynomial or rational symbol, as numerator coefficients ...
    pub b_numerator: Option<Vec<[f64; 2]>>,
    /// ... over optional denominator coefficients.
    pub b_denominator: Option<Vec<[f64; 2]>>,
    pub grid_n: Option<usize>,
    pub grid_m: Option<usize>,
    pub lambda_max: Option<f64>,
    pub eps_floor: Option<f64>,
    /// Input function for lift / cyclicity / gr, as coefficients.
    pub f: Option<Vec<[f64; 2]>>,
    /// "cauchy" | "b_cauchy" | "hb".
    pub kernel_kind: Option<String>,
    pub lambda_point: Option<[f64; 2]>,
    pub alpha: Option<[f64; 2]>,
    pub c: Option<[f64; 2]>,
    /// Section sizes for cyclicity, or family prefix sizes for completeness.
    pub degrees: Option<Vec<usize>>,
    /// "harmonic" | "geometric" | "constant" | "explicit".
    pub lambda_generator: Option<String>,
    pub lambda_count: Option<usize>,
    pub lambda_q: Option<f64>,
    pub lambda_x: Option<[f64; 2]>,
    pub lambda_points: Option<Vec<[f64; 2]>>,
    pub targets: Option<Vec<String>>,
    pub gr_n: Option<usize>,
    pub gr_r: Option<f64>,
    /// Preset list for `verify` when none are passed on the command line.
    pub presets: Option<Vec<String>>,
    pub seed: Option<u64>,
}

/// Configuration after merging file, environment, and flags.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub cfg: ExperimentConfig,
    pub grid: Grid,
    pub seed: u64,
    /// First 12 hex digits of the SHA-256 of the resolved configuration.
    pub hash: String,
}

fn env_usize(name: &str) -> Result<Option<usize>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::Validation(format!("{name} must be an integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn env_f64(name: &str) -> Result<Option<f64>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::Validation(format!("{name} must be a number, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

pub fn load(path: Option<&Path>) -> Result<ExperimentConfig, CliError> {
    let Some(path) = path else {
        return Ok(ExperimentConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Merge precedence: flag > environment > config file > default.
pub fn resolve(
    kind: &str,
    mut cfg: ExperimentConfig,
    flag_grid_size: Option<usize>,
    flag_seed: Option<u64>,
) -> Result<Resolved, CliError> {
    if let Some(declared) = &cfg.kind {
        if declared != kind {
            return Err(CliError::Validation(format!(
                "config kind {declared:?} does not match subcommand {kind:?}"
            )));
        }
    }

    let n = flag_grid_size
        .or(env_usize("HB_GRID_SIZE")?)
        .or(cfg.grid_n)
        .unwrap_or(4096);
    if !n.is_power_of_two() || !(1024..=65536).contains(&n) {
        return Err(CliError::Validation(format!(
            "grid size must be a power of two in [1024, 65536], got {n}"
        )));
    }
    let m = env_usize("HB_GRID_TRUNCATION")?
        .or(cfg.grid_m)
        .unwrap_or(n / 4);
    if !(16..=n / 2).contains(&m) {
        return Err(CliError::Validation(format!(
            "truncation degree must lie in [16, {}], got {m}",
            n / 2
        )));
    }
    let lambda_max = env_f64("HB_LAMBDA_MAX")?.or(cfg.lambda_max).unwrap_or(0.95);
    if !(0.0 < lambda_max && lambda_max < 1.0) {
        return Err(CliError::Validation(format!(
            "lambda_max must lie strictly between 0 and 1, got {lambda_max}"
        )));
    }
    let eps_floor = env_f64("HB_EPS_FLOOR")?.or(cfg.eps_floor).unwrap_or(1e-12);
    if !(eps_floor > 0.0 && eps_floor < 1e-3) {
        return Err(CliError::Validation(format!(
            "eps_floor must be a small positive number, got {eps_floor}"
        )));
    }
    let seed = flag_seed.or(cfg.seed).unwrap_or(42);

    let grid = Grid::with_guards(n, m, lambda_max, eps_floor)
        .map_err(|e| CliError::Validation(e.to_string()))?;

    // freeze the effective values back into the config before hashing, so
    // the provenance hash covers every override
    cfg.kind = Some(kind.to_string());
    cfg.grid_n = Some(n);
    cfg.grid_m = Some(m);
    cfg.lambda_max = Some(lambda_max);
    cfg.eps_floor = Some(eps_floor);
    cfg.seed = Some(seed);

    let canonical = serde_json::to_string(&cfg)
        .map_err(|e| CliError::Validation(format!("cannot serialize config: {e}")))?;
    let digest = Sha256::digest(canonical.as_bytes());
    let hash: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();

    Ok(Resolved {
        cfg,
        grid,
        seed,
        hash,
    })
}

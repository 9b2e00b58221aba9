//! `maskuq simulate` — the (N, R) discretization-error sweep.

use std::path::PathBuf;

use maskuq_core::sim::{run_sweep, BoundaryMode, SimConfig};

use crate::inputs::{apply_config_file, join_axis, parse_axis};
use crate::manifest::RunManifest;
use crate::EXIT_OK;

pub struct Args {
    pub domain: Option<f64>,
    pub cells: Option<String>,
    pub radii: Option<String>,
    pub iters: Option<u64>,
    pub seed: Option<u64>,
    pub boundary: Option<BoundaryMode>,
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub json: Option<PathBuf>,
}

/// Resolves config file + flags into a validated sweep configuration.
pub fn resolve_config(args: &Args) -> maskuq_core::Result<SimConfig> {
    let mut config = SimConfig::default();
    if let Some(path) = &args.config {
        apply_config_file(path, &mut config)?;
    }
    if let Some(d) = args.domain {
        config.domain_length = d;
    }
    if let Some(cells) = &args.cells {
        config.cell_sizes = parse_axis(cells)?;
    }
    if let Some(radii) = &args.radii {
        config.radii = parse_axis(radii)?;
    }
    if let Some(iters) = args.iters {
        config.iterations = iters;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(mode) = args.boundary {
        config.boundary_mode = mode;
    }
    // validate before any compute
    config.normalized()
}

pub fn run(args: Args) -> maskuq_core::Result<u8> {
    let started = std::time::Instant::now();
    let config = resolve_config(&args)?;
    let matrix = run_sweep(&config)?;
    std::fs::write(&args.out, matrix.to_csv())?;
    let mut outputs = vec![args.out.display().to_string()];
    if let Some(json_path) = &args.json {
        let body = serde_json::to_string_pretty(&matrix).expect("matrix serializes") + "\n";
        std::fs::write(json_path, body)?;
        outputs.push(json_path.display().to_string());
    }

    let mut manifest = RunManifest::new("simulate", resolved_args(&config, &args));
    manifest.seed = Some(config.seed);
    manifest.outputs = outputs;
    manifest.elapsed_seconds = started.elapsed().as_secs_f64();
    manifest.write_alongside(&args.out)?;
    Ok(EXIT_OK)
}

fn resolved_args(config: &SimConfig, args: &Args) -> Vec<String> {
    let mut out = vec![
        "simulate".to_string(),
        "--domain".into(),
        config.domain_length.to_string(),
        "--cells".into(),
        join_axis(&config.cell_sizes),
        "--radii".into(),
        join_axis(&config.radii),
        "--iters".into(),
        config.iterations.to_string(),
        "--seed".into(),
        config.seed.to_string(),
        "--boundary".into(),
        config.boundary_mode.to_string(),
        "--out".into(),
        args.out.display().to_string(),
    ];
    if let Some(json_path) = &args.json {
        out.extend(["--json".into(), json_path.display().to_string()]);
    }
    out
}

//! `maskuq metrics` — per-frame boiling metrics.

use std::path::{Path, PathBuf};

use maskuq_core::boiling;
use serde::Serialize;

use crate::commands::opt_cell;
use crate::inputs::{expand_inputs, load_mask_file};
use crate::manifest::RunManifest;
use crate::{OutputFormat, EXIT_OK, EXIT_PARTIAL};

#[derive(Serialize)]
struct Row {
    frame_id: String,
    theta_dry: f64,
    rho_cl_pixel: f64,
    rho_cl_physical: Option<f64>,
}

pub fn run(
    paths: &[PathBuf],
    resolution: Option<f64>,
    format: OutputFormat,
    out: Option<&Path>,
) -> maskuq_core::Result<u8> {
    if let Some(r) = resolution {
        if r <= 0.0 || !r.is_finite() {
            return Err(maskuq_core::Error::Argument(format!(
                "resolution must be positive, got {r}"
            )));
        }
    }
    let started = std::time::Instant::now();
    let files = expand_inputs(paths);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for file in &files {
        match load_mask_file(file, resolution) {
            Ok(mask) => {
                let m = boiling::compute(&mask);
                rows.push(Row {
                    frame_id: file.display().to_string(),
                    theta_dry: m.theta_dry,
                    rho_cl_pixel: m.rho_cl_pixel,
                    rho_cl_physical: m.rho_cl_physical,
                });
            }
            Err(err) => failures.push(format!("{}: {err}", file.display())),
        }
    }

    let body = match format {
        OutputFormat::Csv => {
            let mut text = String::from("frame_id,theta_dry,rho_cl_pixel,rho_cl_physical\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    r.frame_id,
                    r.theta_dry,
                    r.rho_cl_pixel,
                    opt_cell(r.rho_cl_physical)
                ));
            }
            text
        }
        OutputFormat::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
    };

    match out {
        Some(path) => {
            std::fs::write(path, &body)?;
            let mut manifest =
                RunManifest::new("metrics", resolved_args(paths, resolution, format, path));
            manifest.inputs = files.iter().map(|f| f.display().to_string()).collect();
            manifest.outputs = vec![path.display().to_string()];
            manifest.elapsed_seconds = started.elapsed().as_secs_f64();
            manifest.write_alongside(path)?;
        }
        None => print!("{body}"),
    }

    for failure in &failures {
        eprintln!("maskuq: {failure}");
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_PARTIAL
    })
}

fn resolved_args(
    paths: &[PathBuf],
    resolution: Option<f64>,
    format: OutputFormat,
    out: &Path,
) -> Vec<String> {
    let mut args = vec!["metrics".to_string()];
    if let Some(r) = resolution {
        args.extend(["--resolution".into(), r.to_string()]);
    }
    args.extend([
        "--format".into(),
        match format {
            OutputFormat::Csv => "csv".into(),
            OutputFormat::Json => "json".into(),
        },
        "--out".into(),
        out.display().to_string(),
    ]);
    args.extend(paths.iter().map(|p| p.display().to_string()));
    args
}

//! Input expansion, axis-list parsing, and the plain key=value config file.

use std::path::{Path, PathBuf};

use maskuq_core::error::{Error, Result};
use maskuq_core::io::{load_mask_auto, MaskFormat};
use maskuq_core::sim::{steps, SimConfig};
use maskuq_core::BinaryMask;

/// Expands arguments into a concrete file list: directories contribute
/// their `.pgm`/`.csv` entries sorted by name, plain paths pass through
/// (existence is checked when the file is read).
pub fn expand_inputs(paths: &[PathBuf]) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(path)
                .map(|rd| {
                    rd.filter_map(|e| e.ok())
                        .map(|e| e.path())
                        .filter(|p| MaskFormat::from_path(p).is_some())
                        .collect()
                })
                .unwrap_or_default();
            entries.sort();
            out.extend(entries);
        } else {
            out.push(path.clone());
        }
    }
    out
}

/// Loads a mask file, applying `resolution` when the file carries none.
pub fn load_mask_file(path: &Path, resolution: Option<f64>) -> Result<BinaryMask> {
    let bytes = std::fs::read(path)?;
    let mask = match MaskFormat::from_path(path) {
        Some(format) => maskuq_core::io::load_mask(&bytes, format)?,
        None => load_mask_auto(&bytes)?,
    };
    match (mask.resolution(), resolution) {
        (None, Some(r)) => mask.with_resolution(r),
        _ => Ok(mask),
    }
}

/// Parses an axis list: `start:stop:step` (stop included when reached
/// exactly), a comma-separated list, or a single value.
pub fn parse_axis(text: &str) -> Result<Vec<f64>> {
    let parse = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Argument(format!("expected a number, got {s:?}")))
    };
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Argument(format!(
                "range must be start:stop:step, got {text:?}"
            )));
        }
        let (start, stop, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        if step <= 0.0 || step.is_nan() || stop < start {
            return Err(Error::Argument(format!("invalid range {text:?}")));
        }
        Ok(steps(start, stop, step))
    } else {
        text.split(',').map(parse).collect()
    }
}

/// Parses comma-separated ascending positive integers (milestones,
/// class thresholds as floats elsewhere).
pub fn parse_milestones(text: &str) -> Result<Vec<u64>> {
    let values: Result<Vec<u64>> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Argument(format!("expected an integer, got {s:?}")))
        })
        .collect();
    values
}

/// Applies a plain `key = value` config file onto a simulation config.
/// Keys: domain, cells, radii, iters, seed, boundary. Lines starting with
/// `#` and blank lines are ignored.
pub fn apply_config_file(path: &Path, config: &mut SimConfig) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| {
            Error::Argument(format!(
                "config line {line_no} is not key = value: {trimmed:?}"
            ))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "domain" => {
                config.domain_length = value
                    .parse()
                    .map_err(|_| Error::Argument(format!("bad domain on line {line_no}")))?
            }
            "cells" => config.cell_sizes = parse_axis(value)?,
            "radii" => config.radii = parse_axis(value)?,
            "iters" => {
                config.iterations = value
                    .parse()
                    .map_err(|_| Error::Argument(format!("bad iters on line {line_no}")))?
            }
            "seed" => {
                config.seed = value
                    .parse()
                    .map_err(|_| Error::Argument(format!("bad seed on line {line_no}")))?
            }
            "boundary" => config.boundary_mode = value.parse()?,
            other => {
                return Err(Error::Argument(format!(
                    "unknown config key {other:?} on line {line_no}"
                )))
            }
        }
    }
    Ok(())
}

/// Joins floats for canonical manifest args.
pub fn join_axis(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

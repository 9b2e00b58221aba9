//! `maskuq calibrate` — weighted uncertainty tables from an experimental
//! bubble population and simulated error matrices.

use std::path::{Path, PathBuf};

use maskuq_core::bubbles::{
    build_histogram, measure_bubbles, Histogram, HistogramScale, MeasureField,
};
use maskuq_core::calibrate::{build_uncertainty_table, compare_boundary_modes};
use maskuq_core::error::Error;
use maskuq_core::sim::{run_sweep, BoundaryMode, ErrorMatrix, SimConfig};
use maskuq_core::Connectivity;

use crate::inputs::{join_axis, load_mask_file, parse_axis};
use crate::manifest::RunManifest;
use crate::EXIT_OK;

pub struct Args {
    pub mask: Option<PathBuf>,
    pub histogram: Option<PathBuf>,
    pub bins: usize,
    pub resolution: f64,
    pub matrix: Option<PathBuf>,
    pub iters: Option<u64>,
    pub seed: Option<u64>,
    pub radii: Option<String>,
    pub domain: Option<f64>,
    pub boundary: Option<BoundaryMode>,
    pub compare_boundary: bool,
    pub out: PathBuf,
}

/// Histogram CSV: header `bin_lo,bin_hi,count`, one row per bin.
pub fn read_histogram_csv(path: &Path) -> maskuq_core::Result<Histogram> {
    let text = std::fs::read_to_string(path)?;
    let mut edges: Vec<f64> = Vec::new();
    let mut counts = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with("bin_lo") {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Argument(format!(
                "{}: line {line_no}: expected bin_lo,bin_hi,count",
                path.display()
            )));
        }
        let parse = |s: &str| -> maskuq_core::Result<f64> {
            s.trim().parse().map_err(|_| {
                Error::Argument(format!(
                    "{}: line {line_no}: bad number {s:?}",
                    path.display()
                ))
            })
        };
        let (lo, hi) = (parse(fields[0])?, parse(fields[1])?);
        let count = parse(fields[2])? as u64;
        if let Some(&last) = edges.last() {
            if lo != last {
                return Err(Error::Argument(format!(
                    "{}: line {line_no}: bins are not contiguous ({lo} after {last})",
                    path.display()
                )));
            }
        } else {
            edges.push(lo);
        }
        if hi <= lo {
            return Err(Error::Argument(format!(
                "{}: line {line_no}: bin edges must ascend",
                path.display()
            )));
        }
        edges.push(hi);
        counts.push(count);
    }
    if counts.is_empty() {
        return Err(Error::Argument(format!(
            "{}: no histogram rows",
            path.display()
        )));
    }
    Ok(Histogram {
        edges,
        counts,
        scale: HistogramScale::Linear,
    })
}

fn population_histogram(args: &Args) -> maskuq_core::Result<Histogram> {
    match (&args.mask, &args.histogram) {
        (Some(mask_path), None) => {
            let mask = load_mask_file(mask_path, Some(args.resolution))?;
            if let Some(embedded) = mask.resolution() {
                if embedded != args.resolution {
                    return Err(Error::Argument(format!(
                        "{}: embedded resolution {embedded} µm/px conflicts with --resolution {}",
                        mask_path.display(),
                        args.resolution
                    )));
                }
            }
            let records = measure_bubbles(&mask, Connectivity::Eight);
            build_histogram(
                &records,
                MeasureField::Radius,
                args.bins,
                HistogramScale::Linear,
            )
        }
        (None, Some(hist_path)) => read_histogram_csv(hist_path),
        _ => Err(Error::Argument(
            "exactly one of --mask or --histogram is required".to_string(),
        )),
    }
}

fn inline_sweep(args: &Args, mode: BoundaryMode) -> maskuq_core::Result<ErrorMatrix> {
    let mut config = SimConfig {
        cell_sizes: vec![args.resolution],
        boundary_mode: mode,
        ..SimConfig::default()
    };
    if let Some(radii) = &args.radii {
        config.radii = parse_axis(radii)?;
    }
    if let Some(iters) = args.iters {
        config.iterations = iters;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(domain) = args.domain {
        config.domain_length = domain;
    }
    run_sweep(&config)
}

pub fn run(args: Args) -> maskuq_core::Result<u8> {
    if args.resolution <= 0.0 || !args.resolution.is_finite() {
        return Err(Error::Argument(format!(
            "resolution must be positive, got {}",
            args.resolution
        )));
    }
    let started = std::time::Instant::now();
    let hist = population_histogram(&args)?;

    let body = if args.compare_boundary {
        let eroded = inline_sweep(&args, BoundaryMode::Erode)?;
        let dilated = inline_sweep(&args, BoundaryMode::Dilate)?;
        let cmp = compare_boundary_modes(&hist, &eroded, &dilated, args.resolution)?;
        let erode_table = build_uncertainty_table(&hist, &eroded, args.resolution)?;
        let dilate_table = build_uncertainty_table(&hist, &dilated, args.resolution)?;
        let mut text = String::from("# boundary mode: erode\n");
        text.push_str(&erode_table.to_csv());
        text.push_str("\n# boundary mode: dilate\n");
        text.push_str(&dilate_table.to_csv());
        text.push_str("\n# weighted summaries side by side\nquantity,erode,dilate\n");
        for (name, e, d) in [
            ("pre_area", cmp.erode.pre_area, cmp.dilate.pre_area),
            ("me_area", cmp.erode.me_area, cmp.dilate.me_area),
            (
                "pre_perimeter",
                cmp.erode.pre_perimeter,
                cmp.dilate.pre_perimeter,
            ),
            (
                "me_perimeter",
                cmp.erode.me_perimeter,
                cmp.dilate.me_perimeter,
            ),
        ] {
            text.push_str(&format!("{name},{e},{d}\n"));
        }
        text
    } else {
        let matrix = match &args.matrix {
            Some(path) => ErrorMatrix::from_csv(&std::fs::read_to_string(path)?)?,
            None => inline_sweep(&args, args.boundary.unwrap_or_default())?,
        };
        build_uncertainty_table(&hist, &matrix, args.resolution)?.to_csv()
    };

    std::fs::write(&args.out, body)?;
    let mut manifest = RunManifest::new("calibrate", resolved_args(&args));
    manifest.seed = args.seed;
    manifest.inputs = [&args.mask, &args.histogram, &args.matrix]
        .into_iter()
        .flatten()
        .map(|p| p.display().to_string())
        .collect();
    manifest.outputs = vec![args.out.display().to_string()];
    manifest.elapsed_seconds = started.elapsed().as_secs_f64();
    manifest.write_alongside(&args.out)?;
    Ok(EXIT_OK)
}

fn resolved_args(args: &Args) -> Vec<String> {
    let mut out = vec!["calibrate".to_string()];
    if let Some(mask) = &args.mask {
        out.extend(["--mask".into(), mask.display().to_string()]);
        out.extend(["--bins".into(), args.bins.to_string()]);
    }
    if let Some(hist) = &args.histogram {
        out.extend(["--histogram".into(), hist.display().to_string()]);
    }
    out.extend(["--resolution".into(), args.resolution.to_string()]);
    match &args.matrix {
        Some(path) => out.extend(["--matrix".into(), path.display().to_string()]),
        None => {
            let config = SimConfig::default();
            out.extend([
                "--domain".into(),
                args.domain.unwrap_or(config.domain_length).to_string(),
                "--radii".into(),
                args.radii
                    .clone()
                    .unwrap_or_else(|| join_axis(&config.radii)),
                "--iters".into(),
                args.iters.unwrap_or(config.iterations).to_string(),
                "--seed".into(),
                args.seed.unwrap_or(config.seed).to_string(),
            ]);
            if !args.compare_boundary {
                out.extend([
                    "--boundary".into(),
                    args.boundary.unwrap_or_default().to_string(),
                ]);
            }
        }
    }
    if args.compare_boundary {
        out.push("--compare-boundary".into());
    }
    out.extend(["--out".into(), args.out.display().to_string()]);
    out
}

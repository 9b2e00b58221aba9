//! `maskuq evaluate` — confusion-matrix scoring of predictions against
//! ground truth, with micro (pooled pixels) and macro (per-frame mean)
//! aggregates, both labeled.

use std::path::{Path, PathBuf};

use maskuq_core::error::Error;
use maskuq_core::segeval::{aggregate_macro, confusion, metrics, ConfusionMatrix, MetricSet};
use serde::Serialize;

use crate::commands::opt_cell;
use crate::inputs::{expand_inputs, load_mask_file};
use crate::manifest::RunManifest;
use crate::{OutputFormat, EXIT_OK, EXIT_PARTIAL};

#[derive(Serialize)]
struct FrameRow {
    frame_id: String,
    #[serde(flatten)]
    metrics: MetricSet,
}

#[derive(Serialize)]
struct Report {
    frames: Vec<FrameRow>,
    micro: Option<MetricSet>,
    macro_aggregates: Vec<AggregateRow>,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct AggregateRow {
    metric: String,
    mean: Option<f64>,
    min: Option<f64>,
    max: Option<f64>,
    std: Option<f64>,
    defined: usize,
    undefined: usize,
}

pub fn run(
    pred: &[PathBuf],
    truth: &[PathBuf],
    format: OutputFormat,
    out: Option<&Path>,
) -> maskuq_core::Result<u8> {
    let started = std::time::Instant::now();
    let pred_files = expand_inputs(pred);
    let truth_files = expand_inputs(truth);
    if pred_files.len() != truth_files.len() {
        return Err(Error::Argument(format!(
            "{} predictions but {} ground-truth masks",
            pred_files.len(),
            truth_files.len()
        )));
    }
    if pred_files.is_empty() {
        return Err(Error::Argument("no mask pairs to score".to_string()));
    }

    let mut frames = Vec::new();
    let mut sets = Vec::new();
    let mut matrices: Vec<ConfusionMatrix> = Vec::new();
    let mut failures = Vec::new();
    for (p, t) in pred_files.iter().zip(&truth_files) {
        let pair = (|| -> maskuq_core::Result<ConfusionMatrix> {
            let pm = load_mask_file(p, None)?;
            let tm = load_mask_file(t, None)?;
            confusion(&pm, &tm)
        })();
        match pair {
            Ok(cm) => {
                let set = metrics(&cm);
                frames.push(FrameRow {
                    frame_id: p.display().to_string(),
                    metrics: set,
                });
                sets.push(set);
                matrices.push(cm);
            }
            Err(err) => failures.push(format!("{} vs {}: {err}", p.display(), t.display())),
        }
    }

    let micro = ConfusionMatrix::merged(&matrices)
        .ok()
        .map(|cm| metrics(&cm));
    let macro_aggregates: Vec<AggregateRow> = aggregate_macro(&sets)
        .into_iter()
        .zip(MetricSet::NAMES)
        .map(|(agg, name)| AggregateRow {
            metric: name.to_string(),
            mean: agg.mean,
            min: agg.min,
            max: agg.max,
            std: agg.std,
            defined: agg.defined,
            undefined: agg.undefined,
        })
        .collect();

    let body = match format {
        OutputFormat::Csv => render_csv(&frames, &micro, &macro_aggregates),
        OutputFormat::Json => {
            let report = Report {
                frames,
                micro,
                macro_aggregates,
                failures: failures.clone(),
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
    };

    match out {
        Some(path) => {
            std::fs::write(path, &body)?;
            let mut manifest =
                RunManifest::new("evaluate", resolved_args(pred, truth, format, path));
            manifest.inputs = pred_files
                .iter()
                .chain(&truth_files)
                .map(|f| f.display().to_string())
                .collect();
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

fn render_csv(
    frames: &[FrameRow],
    micro: &Option<MetricSet>,
    aggregates: &[AggregateRow],
) -> String {
    let mut text = String::from("frame_id,accuracy,precision,recall,specificity,f1,iou,mcc\n");
    let metric_cells = |m: &MetricSet| {
        m.values()
            .into_iter()
            .map(opt_cell)
            .collect::<Vec<_>>()
            .join(",")
    };
    for row in frames {
        text.push_str(&format!(
            "{},{}\n",
            row.frame_id,
            metric_cells(&row.metrics)
        ));
    }
    if let Some(m) = micro {
        text.push_str(&format!("micro,{}\n", metric_cells(m)));
    }
    text.push_str("\nmetric,macro_mean,macro_min,macro_max,macro_std,defined,undefined\n");
    for agg in aggregates {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            agg.metric,
            opt_cell(agg.mean),
            opt_cell(agg.min),
            opt_cell(agg.max),
            opt_cell(agg.std),
            agg.defined,
            agg.undefined
        ));
    }
    text
}

fn resolved_args(
    pred: &[PathBuf],
    truth: &[PathBuf],
    format: OutputFormat,
    out: &Path,
) -> Vec<String> {
    let mut args = vec!["evaluate".to_string(), "--pred".into()];
    args.extend(pred.iter().map(|p| p.display().to_string()));
    args.push("--truth".into());
    args.extend(truth.iter().map(|p| p.display().to_string()));
    args.extend([
        "--format".into(),
        match format {
            OutputFormat::Csv => "csv".into(),
            OutputFormat::Json => "json".into(),
        },
        "--out".into(),
        out.display().to_string(),
    ]);
    args
}

//! `maskuq bubbles` — per-bubble tables and pooled size histograms.

use std::path::PathBuf;

use maskuq_core::bubbles::{
    field_value, histogram_of_values, measure_bubbles, BubbleRecord, HistogramScale, MeasureField,
};
use maskuq_core::error::Error;
use maskuq_core::Connectivity;

use crate::commands::opt_cell;
use crate::inputs::{expand_inputs, load_mask_file};
use crate::manifest::RunManifest;
use crate::{OutputFormat, EXIT_OK, EXIT_PARTIAL};

pub struct Args {
    pub paths: Vec<PathBuf>,
    pub resolution: Option<f64>,
    pub connectivity: Connectivity,
    pub field: MeasureField,
    pub bins: usize,
    pub scale: HistogramScale,
    pub classes: Option<String>,
    pub format: OutputFormat,
    pub out: PathBuf,
    pub hist: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

fn parse_classes(text: &str) -> maskuq_core::Result<Vec<f64>> {
    let thresholds: maskuq_core::Result<Vec<f64>> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Argument(format!("bad class threshold {s:?}")))
        })
        .collect();
    let thresholds = thresholds?;
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument(
            "class thresholds must be strictly ascending".into(),
        ));
    }
    Ok(thresholds)
}

/// Size class = number of thresholds at or below the value.
fn size_class(value: f64, thresholds: &[f64]) -> usize {
    thresholds.iter().filter(|&&t| value >= t).count()
}

pub fn run(args: Args) -> maskuq_core::Result<u8> {
    let started = std::time::Instant::now();
    let thresholds = args.classes.as_deref().map(parse_classes).transpose()?;
    let files = expand_inputs(&args.paths);
    let mut table: Vec<(String, BubbleRecord)> = Vec::new();
    let mut failures = Vec::new();
    for file in &files {
        match load_mask_file(file, args.resolution) {
            Ok(mask) => {
                for record in measure_bubbles(&mask, args.connectivity) {
                    table.push((file.display().to_string(), record));
                }
            }
            Err(err) => failures.push(format!("{}: {err}", file.display())),
        }
    }

    let body = match args.format {
        OutputFormat::Csv => {
            let mut text = String::from(
                "frame_id,label,area_px,perimeter_px,area_phys,perimeter_phys,equiv_radius_phys",
            );
            if thresholds.is_some() {
                text.push_str(",size_class");
            }
            text.push('\n');
            for (frame, r) in &table {
                text.push_str(&format!(
                    "{frame},{},{},{},{},{},{}",
                    r.label,
                    r.area_px,
                    r.perimeter_px,
                    opt_cell(r.area_phys),
                    opt_cell(r.perimeter_phys),
                    opt_cell(r.equiv_radius_phys)
                ));
                if let Some(t) = &thresholds {
                    text.push_str(&format!(",{}", size_class(field_value(r, args.field), t)));
                }
                text.push('\n');
            }
            text
        }
        OutputFormat::Json => {
            #[derive(serde::Serialize)]
            struct JsonRow<'a> {
                frame_id: &'a str,
                #[serde(flatten)]
                record: &'a BubbleRecord,
                #[serde(skip_serializing_if = "Option::is_none")]
                size_class: Option<usize>,
            }
            let rows: Vec<JsonRow> = table
                .iter()
                .map(|(frame, r)| JsonRow {
                    frame_id: frame,
                    record: r,
                    size_class: thresholds
                        .as_ref()
                        .map(|t| size_class(field_value(r, args.field), t)),
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
        }
    };
    std::fs::write(&args.out, &body)?;
    let mut outputs = vec![args.out.display().to_string()];

    if args.hist.is_some() || args.svg.is_some() {
        let values: Vec<f64> = table
            .iter()
            .map(|(_, r)| field_value(r, args.field))
            .collect();
        if values.is_empty() {
            return Err(Error::Argument(
                "no bubbles found; cannot build a histogram".into(),
            ));
        }
        let hist = histogram_of_values(&values, args.bins, args.scale)?;
        if let Some(hist_path) = &args.hist {
            let mut body = String::from("bin_lo,bin_hi,count\n");
            for i in 0..hist.bins() {
                body.push_str(&format!(
                    "{},{},{}\n",
                    hist.edges[i],
                    hist.edges[i + 1],
                    hist.counts[i]
                ));
            }
            std::fs::write(hist_path, body)?;
            outputs.push(hist_path.display().to_string());
        }
        if let Some(svg_path) = &args.svg {
            let title = format!("bubble {:?} distribution", args.field);
            std::fs::write(
                svg_path,
                crate::svg::histogram_chart(&title, &hist.edges, &hist.counts),
            )?;
            outputs.push(svg_path.display().to_string());
        }
    }

    let mut manifest = RunManifest::new("bubbles", resolved_args(&args));
    manifest.inputs = files.iter().map(|f| f.display().to_string()).collect();
    manifest.outputs = outputs;
    manifest.elapsed_seconds = started.elapsed().as_secs_f64();
    manifest.write_alongside(&args.out)?;

    for failure in &failures {
        eprintln!("maskuq: {failure}");
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_PARTIAL
    })
}

fn resolved_args(args: &Args) -> Vec<String> {
    let mut out = vec!["bubbles".to_string()];
    if let Some(r) = args.resolution {
        out.extend(["--resolution".into(), r.to_string()]);
    }
    out.extend([
        "--connectivity".into(),
        match args.connectivity {
            Connectivity::Four => "4".into(),
            Connectivity::Eight => "8".into(),
        },
        "--field".into(),
        format!("{:?}", args.field).to_lowercase(),
        "--bins".into(),
        args.bins.to_string(),
        "--scale".into(),
        format!("{:?}", args.scale).to_lowercase(),
        "--format".into(),
        match args.format {
            OutputFormat::Csv => "csv".into(),
            OutputFormat::Json => "json".into(),
        },
    ]);
    if let Some(classes) = &args.classes {
        out.extend(["--classes".into(), classes.clone()]);
    }
    out.extend(["--out".into(), args.out.display().to_string()]);
    if let Some(hist) = &args.hist {
        out.extend(["--hist".into(), hist.display().to_string()]);
    }
    if let Some(svg) = &args.svg {
        out.extend(["--svg".into(), svg.display().to_string()]);
    }
    out.extend(args.paths.iter().map(|p| p.display().to_string()));
    out
}

//! `maskuq convergence` — running-mean PRE traces at iteration milestones.

use std::path::PathBuf;

use maskuq_core::sim::{convergence_trace, BoundaryMode, GridSpec, SubstreamSeed};

use crate::inputs::parse_milestones;
use crate::manifest::RunManifest;
use crate::EXIT_OK;

pub struct Args {
    pub domain: Option<f64>,
    pub cell: f64,
    pub radius: f64,
    pub milestones: String,
    pub seed: u64,
    pub boundary: BoundaryMode,
    pub out: PathBuf,
    pub svg: Option<PathBuf>,
}

pub fn run(args: Args) -> maskuq_core::Result<u8> {
    let started = std::time::Instant::now();
    let domain = args.domain.unwrap_or(1000.0);
    let grid = GridSpec::new(domain, args.cell)?;
    let milestones = parse_milestones(&args.milestones)?;
    let trace = convergence_trace(
        &grid,
        args.radius,
        &milestones,
        SubstreamSeed::new(args.seed),
        args.boundary,
    )?;

    let mut body = String::from("iterations,pre_area,pre_perimeter\n");
    for p in &trace {
        body.push_str(&format!(
            "{},{},{}\n",
            p.iterations, p.pre_area, p.pre_perimeter
        ));
    }
    std::fs::write(&args.out, body)?;
    let mut outputs = vec![args.out.display().to_string()];

    if let Some(svg_path) = &args.svg {
        let points: Vec<(u64, f64, f64)> = trace
            .iter()
            .map(|p| (p.iterations, p.pre_area, p.pre_perimeter))
            .collect();
        let title = format!(
            "PRE convergence at N = {} µm, R = {} µm",
            args.cell, args.radius
        );
        std::fs::write(svg_path, crate::svg::trace_chart(&title, &points))?;
        outputs.push(svg_path.display().to_string());
    }

    let mut manifest = RunManifest::new("convergence", resolved_args(&args, domain, &milestones));
    manifest.seed = Some(args.seed);
    manifest.outputs = outputs;
    manifest.elapsed_seconds = started.elapsed().as_secs_f64();
    manifest.write_alongside(&args.out)?;
    Ok(EXIT_OK)
}

fn resolved_args(args: &Args, domain: f64, milestones: &[u64]) -> Vec<String> {
    let mut out = vec![
        "convergence".to_string(),
        "--domain".into(),
        domain.to_string(),
        "--cell".into(),
        args.cell.to_string(),
        "--radius".into(),
        args.radius.to_string(),
        "--milestones".into(),
        milestones
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(","),
        "--seed".into(),
        args.seed.to_string(),
        "--boundary".into(),
        args.boundary.to_string(),
        "--out".into(),
        args.out.display().to_string(),
    ];
    if let Some(svg) = &args.svg {
        out.extend(["--svg".into(), svg.display().to_string()]);
    }
    out
}

//! maskuq — boiling-mask analysis and pixel-discretization uncertainty.

mod commands;
mod inputs;
mod manifest;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit codes: 0 success, 1 partial data failure, 2 usage/config error.
pub const EXIT_OK: u8 = 0;
pub const EXIT_PARTIAL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "maskuq",
    version,
    about = "Boiling metrics, bubble statistics and discretization-error analysis for binary phase-detection masks"
)]
struct Cli {
    /// Worker threads (default: MASKUQ_THREADS or all cores). Outputs do
    /// not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundaryArg {
    None,
    Erode,
    Dilate,
}

impl From<BoundaryArg> for maskuq_core::sim::BoundaryMode {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::None => Self::None,
            BoundaryArg::Erode => Self::Erode,
            BoundaryArg::Dilate => Self::Dilate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConnectivityArg {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

impl From<ConnectivityArg> for maskuq_core::Connectivity {
    fn from(c: ConnectivityArg) -> Self {
        match c {
            ConnectivityArg::Four => Self::Four,
            ConnectivityArg::Eight => Self::Eight,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dry area fraction and contact line density per mask file.
    Metrics {
        /// Mask files (PGM/CSV) or directories of them.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Physical resolution in µm per pixel (used when a mask carries none).
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Output file (stdout when omitted; a manifest is written next to files).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo discretization-error sweep over (cell size, radius).
    Simulate {
        /// Domain length L in µm.
        #[arg(long)]
        domain: Option<f64>,
        /// Cell sizes: start:stop:step, comma list, or one value.
        #[arg(long)]
        cells: Option<String>,
        /// Radii: start:stop:step, comma list, or one value.
        #[arg(long)]
        radii: Option<String>,
        /// Random placements per (N, R) cell.
        #[arg(long)]
        iters: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        boundary: Option<BoundaryArg>,
        /// key = value file with domain/cells/radii/iters/seed/boundary
        /// (explicit flags win).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Error-matrix CSV path.
        #[arg(long, required = true)]
        out: PathBuf,
        /// Also write the matrix as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Frequency-weighted uncertainty table for an experimental population.
    Calibrate {
        /// Segmented mask to measure the bubble population from.
        #[arg(long, conflicts_with = "histogram")]
        mask: Option<PathBuf>,
        /// Pre-binned radius histogram CSV (bin_lo,bin_hi,count).
        #[arg(long)]
        histogram: Option<PathBuf>,
        /// Radius bins when measuring from a mask.
        #[arg(long, default_value_t = 8)]
        bins: usize,
        /// Experimental resolution / grid cell size in µm per pixel.
        #[arg(long, required = true)]
        resolution: f64,
        /// Error-matrix CSV from `simulate` (an inline sweep runs when omitted).
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Inline-sweep iterations.
        #[arg(long)]
        iters: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Inline-sweep radii.
        #[arg(long)]
        radii: Option<String>,
        #[arg(long)]
        domain: Option<f64>,
        #[arg(long, value_enum)]
        boundary: Option<BoundaryArg>,
        /// Compare erosion vs dilation boundary treatments side by side.
        #[arg(long, conflicts_with = "matrix")]
        compare_boundary: bool,
        #[arg(long, required = true)]
        out: PathBuf,
    },
    /// Score predicted masks against ground truth.
    Evaluate {
        /// Predicted mask files or directories.
        #[arg(long, required = true, num_args = 1..)]
        pred: Vec<PathBuf>,
        /// Ground-truth mask files or directories (pairs with --pred by position).
        #[arg(long, required = true, num_args = 1..)]
        truth: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-bubble measurements and size histograms.
    Bubbles {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long, value_enum, default_value = "8")]
        connectivity: ConnectivityArg,
        /// Histogram field.
        #[arg(long, value_enum, default_value = "radius")]
        field: FieldArg,
        #[arg(long, default_value_t = 10)]
        bins: usize,
        #[arg(long, value_enum, default_value = "linear")]
        scale: ScaleArg,
        /// Ascending size-class thresholds (same units as --field) adding a
        /// class column to the table; no defaults.
        #[arg(long)]
        classes: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Bubble table output.
        #[arg(long, required = true)]
        out: PathBuf,
        /// Histogram CSV over all frames.
        #[arg(long)]
        hist: Option<PathBuf>,
        /// Histogram bar chart (numbers identical to the CSV).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Running-mean PRE trace over iteration milestones.
    Convergence {
        #[arg(long)]
        domain: Option<f64>,
        /// Grid cell size N in µm.
        #[arg(long, required = true)]
        cell: f64,
        /// Bubble radius R in µm.
        #[arg(long, required = true)]
        radius: f64,
        /// Comma-separated ascending iteration milestones.
        #[arg(long, default_value = "5000,10000,15000,20000")]
        milestones: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "none")]
        boundary: BoundaryArg,
        #[arg(long, required = true)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Radius,
    Area,
    Perimeter,
}

impl From<FieldArg> for maskuq_core::bubbles::MeasureField {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Radius => Self::Radius,
            FieldArg::Area => Self::Area,
            FieldArg::Perimeter => Self::Perimeter,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScaleArg {
    Linear,
    Log,
}

impl From<ScaleArg> for maskuq_core::bubbles::HistogramScale {
    fn from(s: ScaleArg) -> Self {
        match s {
            ScaleArg::Linear => Self::Linear,
            ScaleArg::Log => Self::Log,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let threads = cli.threads.or_else(|| {
        std::env::var("MASKUQ_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("maskuq: cannot configure {n} threads: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }

    let outcome = match cli.command {
        Command::Metrics {
            paths,
            resolution,
            format,
            out,
        } => commands::metrics::run(&paths, resolution, format, out.as_deref()),
        Command::Simulate {
            domain,
            cells,
            radii,
            iters,
            seed,
            boundary,
            config,
            out,
            json,
        } => commands::simulate::run(commands::simulate::Args {
            domain,
            cells,
            radii,
            iters,
            seed,
            boundary: boundary.map(Into::into),
            config,
            out,
            json,
        }),
        Command::Calibrate {
            mask,
            histogram,
            bins,
            resolution,
            matrix,
            iters,
            seed,
            radii,
            domain,
            boundary,
            compare_boundary,
            out,
        } => commands::calibrate::run(commands::calibrate::Args {
            mask,
            histogram,
            bins,
            resolution,
            matrix,
            iters,
            seed,
            radii,
            domain,
            boundary: boundary.map(Into::into),
            compare_boundary,
            out,
        }),
        Command::Evaluate {
            pred,
            truth,
            format,
            out,
        } => commands::evaluate::run(&pred, &truth, format, out.as_deref()),
        Command::Bubbles {
            paths,
            resolution,
            connectivity,
            field,
            bins,
            scale,
            classes,
            format,
            out,
            hist,
            svg,
        } => commands::bubbles::run(commands::bubbles::Args {
            paths,
            resolution,
            connectivity: connectivity.into(),
            field: field.into(),
            bins,
            scale: scale.into(),
            classes,
            format,
            out,
            hist,
            svg,
        }),
        Command::Convergence {
            domain,
            cell,
            radius,
            milestones,
            seed,
            boundary,
            out,
            svg,
        } => commands::convergence::run(commands::convergence::Args {
            domain,
            cell,
            radius,
            milestones,
            seed,
            boundary: boundary.into(),
            out,
            svg,
        }),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("maskuq: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

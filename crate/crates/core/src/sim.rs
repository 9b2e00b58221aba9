//! Monte Carlo study of circle discretization error.
//!
//! Circles of radius R are placed uniformly at random on a square pixel
//! grid of cell size N and rasterized (a pixel is DRY iff its center lies
//! strictly inside the circle). The discretized area and interface length
//! are averaged over many placements and compared against the exact values
//! πR² and 2πR through two error measures:
//!
//! - PRE = (theoretical − mean discretized) / theoretical × 100, so a
//!   positive PRE means the discrete measurement underestimates;
//! - ME = theoretical − mean discretized, in physical units.
//!
//! Sweeping (N, R) produces an [`ErrorMatrix`] whose perimeter column
//! changes sign from overestimation at small radii to underestimation at
//! large radii, while the area column stays near zero — area is the far
//! more discretization-resilient measurement.
//!
//! # Interface measurement
//!
//! The discrete interface length is the count of liquid pixels in contact
//! with the bubble (pixels at distance exactly one from the dry set, the
//! `count(distance == 1)` rule applied from the liquid side) times the
//! cell size. This outer contour is what drives the over→under-estimation
//! transition; the member-pixel boundary used for per-bubble tables (see
//! [`crate::bubbles`]) never overestimates a disc and is kept separate.
//!
//! # Boundary modes
//!
//! A boundary mode models one pixel of segmentation-boundary uncertainty:
//! the rasterized bubble is eroded or dilated by a 3×3 structuring element
//! before the interface is measured. The area is always measured on the
//! unmodified raster, so area statistics are identical across modes and
//! only the interface measurement responds to the boundary treatment.
//!
//! # Reproducibility
//!
//! Every cell of a sweep draws from its own counter-derived ChaCha stream,
//! so results are bit-identical for a given seed regardless of evaluation
//! order or worker count.

use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::BinaryMask;
use crate::morphology::{dilate, erode, StructuringElement};

/// A square simulation raster: nominal domain length L (µm) divided into
/// cells of size N (µm). The raster has `round(L/N)` cells per side; all
/// geometry uses the effective extent `cells × N`, which differs from L
/// when L/N is not an integer, so circles are never clipped by the raster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    length: f64,
    cell: f64,
}

impl GridSpec {
    pub fn new(length: f64, cell: f64) -> Result<Self> {
        if length <= 0.0 || !length.is_finite() {
            return Err(Error::argument(format!(
                "domain length must be positive, got {length}"
            )));
        }
        if cell <= 0.0 || !cell.is_finite() {
            return Err(Error::argument(format!(
                "cell size must be positive, got {cell}"
            )));
        }
        let spec = GridSpec { length, cell };
        if spec.cells() < 1 {
            return Err(Error::argument(format!(
                "domain length {length} is too small for cell size {cell}"
            )));
        }
        Ok(spec)
    }

    /// Nominal domain length L in µm.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Cell size N in µm.
    pub fn cell(&self) -> f64 {
        self.cell
    }

    /// Cells per side: round(L/N).
    pub fn cells(&self) -> usize {
        (self.length / self.cell).round() as usize
    }

    /// Physical side length actually covered by the raster.
    pub fn extent(&self) -> f64 {
        self.cells() as f64 * self.cell
    }

    /// Center coordinate of pixel index i along one axis.
    #[inline]
    fn center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.cell
    }
}

/// One-pixel boundary treatment applied before the interface measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryMode {
    #[default]
    None,
    Erode,
    Dilate,
}

impl std::fmt::Display for BoundaryMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundaryMode::None => "none",
            BoundaryMode::Erode => "erode",
            BoundaryMode::Dilate => "dilate",
        })
    }
}

impl std::str::FromStr for BoundaryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(BoundaryMode::None),
            "erode" => Ok(BoundaryMode::Erode),
            "dilate" => Ok(BoundaryMode::Dilate),
            other => Err(Error::argument(format!(
                "unknown boundary mode {other:?} (expected none, erode or dilate)"
            ))),
        }
    }
}

/// Full sweep configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Nominal domain length L in µm.
    pub domain_length: f64,
    /// Grid cell sizes N in µm.
    pub cell_sizes: Vec<f64>,
    /// Bubble radii R in µm.
    pub radii: Vec<f64>,
    /// Random placements per (N, R) cell.
    pub iterations: u64,
    /// Base seed; each (N, R) cell derives its own stream.
    pub seed: u64,
    pub boundary_mode: BoundaryMode,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            domain_length: 1000.0,
            cell_sizes: steps(5.0, 50.0, 5.0),
            radii: steps(5.0, 200.0, 5.0),
            iterations: 20_000,
            seed: 0,
            boundary_mode: BoundaryMode::None,
        }
    }
}

/// `start, start+step, …` up to and including `stop` when it is reached
/// exactly (within half a step of accumulated rounding).
pub fn steps(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let n = ((stop - start) / step).round() as i64;
    for k in 0..=n.max(0) {
        let v = start + step * k as f64;
        if v <= stop + step * 1e-9 {
            out.push(v);
        }
    }
    out
}

impl SimConfig {
    /// Validates the configuration and returns a canonical copy with both
    /// axes sorted ascending and deduplicated. Cell substreams key off
    /// positions in the sorted axes, so permuting the input lists cannot
    /// change the result.
    pub fn normalized(&self) -> Result<SimConfig> {
        if self.domain_length <= 0.0 || !self.domain_length.is_finite() {
            return Err(Error::argument(format!(
                "domain length must be positive, got {}",
                self.domain_length
            )));
        }
        if self.iterations < 1 {
            return Err(Error::argument("iterations must be at least 1"));
        }
        if self.cell_sizes.is_empty() {
            return Err(Error::argument("at least one cell size is required"));
        }
        if self.radii.is_empty() {
            return Err(Error::argument("at least one radius is required"));
        }
        let mut cell_sizes = self.cell_sizes.clone();
        let mut radii = self.radii.clone();
        cell_sizes.sort_by(f64::total_cmp);
        cell_sizes.dedup();
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        let mut min_extent = f64::INFINITY;
        for &n in &cell_sizes {
            let grid = GridSpec::new(self.domain_length, n)?;
            if grid.cells() < 4 {
                return Err(Error::argument(format!(
                    "cell size {n} leaves only {} cells across the domain (need at least 4)",
                    grid.cells()
                )));
            }
            min_extent = min_extent.min(grid.extent());
        }
        for &r in &radii {
            if r <= 0.0 || !r.is_finite() {
                return Err(Error::argument(format!("radii must be positive, got {r}")));
            }
            if 2.0 * r >= min_extent {
                return Err(Error::argument(format!(
                    "radius {r} does not fit: diameter must be below the smallest grid extent {min_extent}"
                )));
            }
        }
        Ok(SimConfig {
            cell_sizes,
            radii,
            ..self.clone()
        })
    }
}

/// Identifies the random stream for one simulation cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstreamSeed {
    pub base: u64,
    pub stream: u64,
}

impl SubstreamSeed {
    /// Stream 0 of a base seed, for standalone single-cell runs.
    pub fn new(base: u64) -> Self {
        SubstreamSeed { base, stream: 0 }
    }

    /// The stream a sweep assigns to sorted-axis position (n_idx, r_idx).
    pub fn for_cell(base: u64, n_idx: usize, r_idx: usize) -> Self {
        SubstreamSeed {
            base,
            stream: ((n_idx as u64) << 32) | (r_idx as u64 & 0xffff_ffff),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.base);
        rng.set_stream(self.stream);
        rng
    }
}

/// Error statistics for one (N, R) cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    /// Cell size N in µm.
    pub cell_size: f64,
    /// Bubble radius R in µm.
    pub radius: f64,
    /// Mean discretized area in µm².
    pub mean_area: f64,
    /// Mean discretized interface length in µm.
    pub mean_perimeter: f64,
    /// (πR² − mean_area) / πR² × 100.
    pub pre_area: f64,
    /// (2πR − mean_perimeter) / 2πR × 100.
    pub pre_perimeter: f64,
    /// πR² − mean_area, µm².
    pub me_area: f64,
    /// 2πR − mean_perimeter, µm.
    pub me_perimeter: f64,
}

/// Rasterizes a circle: pixel (i, j) is DRY iff the Euclidean distance
/// from its center ((i+½)N, (j+½)N) to `center` is strictly below
/// `radius`. The circle must lie fully inside the raster extent.
pub fn rasterize_circle(grid: &GridSpec, center: (f64, f64), radius: f64) -> Result<BinaryMask> {
    check_fit(grid, center, radius)?;
    let cells = grid.cells();
    let r2 = radius * radius;
    let mask = BinaryMask::from_fn(cells, cells, |i, j| {
        let dx = grid.center(i) - center.0;
        let dy = grid.center(j) - center.1;
        dx * dx + dy * dy < r2
    })?;
    mask.with_resolution(grid.cell)
}

fn check_fit(grid: &GridSpec, center: (f64, f64), radius: f64) -> Result<()> {
    if radius < 0.0 || !radius.is_finite() {
        return Err(Error::argument(format!(
            "radius must be non-negative, got {radius}"
        )));
    }
    let w = grid.extent();
    let (x, y) = center;
    if radius > x || radius > y || radius > w - x || radius > w - y {
        return Err(Error::argument(format!(
            "circle (center ({x}, {y}), radius {radius}) is not fully inside the {w} µm raster"
        )));
    }
    Ok(())
}

/// Count of WET pixels orthogonally adjacent to at least one DRY pixel:
/// the liquid-side contour of the dry set.
pub fn outer_boundary_count(mask: &BinaryMask) -> usize {
    let mut count = 0;
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            if mask.get(x, y) {
                continue;
            }
            let (xi, yi) = (x as isize, y as isize);
            if mask.get_clamped(xi + 1, yi)
                || mask.get_clamped(xi - 1, yi)
                || mask.get_clamped(xi, yi + 1)
                || mask.get_clamped(xi, yi - 1)
            {
                count += 1;
            }
        }
    }
    count
}

/// Discrete measurements of a rasterized bubble at cell size N:
/// area = dry pixel count × N², interface length = outer contour pixel
/// count × N.
pub fn measure_discrete(mask: &BinaryMask, cell: f64) -> (f64, f64) {
    let area = mask.dry_count() as f64 * cell * cell;
    let perimeter = outer_boundary_count(mask) as f64 * cell;
    (area, perimeter)
}

/// Rasterizes one placement restricted to the circle's bounding window
/// (plus a margin that keeps morphology and contour counting exact) and
/// returns (area, interface length). Equal to rasterizing the full grid,
/// applying the boundary mode and measuring, at a fraction of the cost.
fn measure_draw(
    grid: &GridSpec,
    center: (f64, f64),
    radius: f64,
    mode: BoundaryMode,
) -> (f64, f64) {
    let cells = grid.cells() as isize;
    let n = grid.cell;
    // indices that could be DRY: (cx − R)/N − ½ < i < (cx + R)/N − ½,
    // widened by 2 so dilation and its outer contour stay inside
    let margin = 2.0;
    let lo = |c: f64| (((c - radius) / n - 0.5 - margin).floor() as isize).max(0);
    let hi = |c: f64| ((((c + radius) / n - 0.5 + margin).ceil() as isize).min(cells - 1)).max(0);
    let (i0, i1) = (lo(center.0), hi(center.0));
    let (j0, j1) = (lo(center.1), hi(center.1));
    let (w, h) = ((i1 - i0 + 1) as usize, (j1 - j0 + 1) as usize);
    let r2 = radius * radius;
    let window = BinaryMask::from_fn(w, h, |x, y| {
        let dx = grid.center(i0 as usize + x) - center.0;
        let dy = grid.center(j0 as usize + y) - center.1;
        dx * dx + dy * dy < r2
    })
    .expect("window is at least 1x1");
    let area = window.dry_count() as f64 * n * n;
    let se = StructuringElement::square3x3();
    let boundary_mask = match mode {
        BoundaryMode::None => window,
        BoundaryMode::Erode => erode(&window, &se),
        BoundaryMode::Dilate => dilate(&window, &se),
    };
    let perimeter = outer_boundary_count(&boundary_mask) as f64 * n;
    (area, perimeter)
}

/// Runs `iterations` random placements of a radius-R circle on `grid` and
/// returns the error statistics. Deterministic for a given seed, radius,
/// grid and mode. Centers are drawn uniformly from [R, extent−R]² so the
/// circle always fits.
pub fn simulate_cell(
    grid: &GridSpec,
    radius: f64,
    iterations: u64,
    seed: SubstreamSeed,
    mode: BoundaryMode,
) -> Result<CellResult> {
    if iterations < 1 {
        return Err(Error::argument("iterations must be at least 1"));
    }
    if radius <= 0.0 || !radius.is_finite() {
        return Err(Error::argument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let extent = grid.extent();
    if 2.0 * radius >= extent {
        return Err(Error::argument(format!(
            "radius {radius} does not fit: diameter must be below the raster extent {extent}"
        )));
    }
    let mut rng = seed.rng();
    let coord = Uniform::new(radius, extent - radius)
        .map_err(|e| Error::argument(format!("cannot sample circle centers: {e}")))?;
    let mut area_sum = 0.0;
    let mut perim_sum = 0.0;
    for _ in 0..iterations {
        let cx = coord.sample(&mut rng);
        let cy = coord.sample(&mut rng);
        let (area, perimeter) = measure_draw(grid, (cx, cy), radius, mode);
        area_sum += area;
        perim_sum += perimeter;
    }
    Ok(cell_result(
        grid.cell, radius, area_sum, perim_sum, iterations,
    ))
}

fn cell_result(cell: f64, radius: f64, area_sum: f64, perim_sum: f64, count: u64) -> CellResult {
    let mean_area = area_sum / count as f64;
    let mean_perimeter = perim_sum / count as f64;
    let theo_area = std::f64::consts::PI * radius * radius;
    let theo_perimeter = 2.0 * std::f64::consts::PI * radius;
    CellResult {
        cell_size: cell,
        radius,
        mean_area,
        mean_perimeter,
        pre_area: (theo_area - mean_area) / theo_area * 100.0,
        pre_perimeter: (theo_perimeter - mean_perimeter) / theo_perimeter * 100.0,
        me_area: theo_area - mean_area,
        me_perimeter: theo_perimeter - mean_perimeter,
    }
}

/// Running-mean errors sampled at iteration milestones from a single
/// stream. The value at milestone m is bit-identical to
/// [`simulate_cell`] run with `iterations = m` and the same seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iterations: u64,
    pub pre_area: f64,
    pub pre_perimeter: f64,
}

pub fn convergence_trace(
    grid: &GridSpec,
    radius: f64,
    milestones: &[u64],
    seed: SubstreamSeed,
    mode: BoundaryMode,
) -> Result<Vec<TracePoint>> {
    if milestones.is_empty() {
        return Err(Error::argument("at least one milestone is required"));
    }
    if milestones.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::argument("milestones must be strictly ascending"));
    }
    if milestones[0] < 1 {
        return Err(Error::argument("milestones must be at least 1"));
    }
    let extent = grid.extent();
    if radius <= 0.0 || 2.0 * radius >= extent {
        return Err(Error::argument(format!(
            "radius {radius} does not fit: diameter must be below the raster extent {extent}"
        )));
    }
    let mut rng = seed.rng();
    let coord = Uniform::new(radius, extent - radius)
        .map_err(|e| Error::argument(format!("cannot sample circle centers: {e}")))?;
    let mut area_sum = 0.0;
    let mut perim_sum = 0.0;
    let mut out = Vec::with_capacity(milestones.len());
    let mut next = 0usize;
    for k in 1..=*milestones.last().expect("nonempty") {
        let cx = coord.sample(&mut rng);
        let cy = coord.sample(&mut rng);
        let (area, perimeter) = measure_draw(grid, (cx, cy), radius, mode);
        area_sum += area;
        perim_sum += perimeter;
        if k == milestones[next] {
            let r = cell_result(grid.cell, radius, area_sum, perim_sum, k);
            out.push(TracePoint {
                iterations: k,
                pre_area: r.pre_area,
                pre_perimeter: r.pre_perimeter,
            });
            next += 1;
        }
    }
    Ok(out)
}

/// Dense PRE/ME error matrix over the (cell size, radius) sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorMatrix {
    /// Ascending cell sizes (µm).
    pub cell_sizes: Vec<f64>,
    /// Ascending radii (µm).
    pub radii: Vec<f64>,
    pub boundary_mode: BoundaryMode,
    /// Row-major over (cell-size index, radius index).
    pub cells: Vec<CellResult>,
}

impl ErrorMatrix {
    pub fn cell(&self, n_idx: usize, r_idx: usize) -> &CellResult {
        &self.cells[n_idx * self.radii.len() + r_idx]
    }

    /// Index of the column whose cell size equals `n` exactly.
    pub fn cell_size_index(&self, n: f64) -> Option<usize> {
        self.cell_sizes.iter().position(|&v| v == n)
    }

    /// Index of the radius nearest to `r`; ties resolve toward the
    /// smaller radius.
    pub fn nearest_radius_index(&self, r: f64) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, &cand) in self.radii.iter().enumerate() {
            let d = (cand - r).abs();
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }

    /// Long-form CSV, one row per (N, R) cell; numeric fields use
    /// round-trip decimal formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "cell_size,radius,boundary_mode,mean_area,mean_perimeter,pre_area,pre_perimeter,me_area,me_perimeter\n",
        );
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                c.cell_size,
                c.radius,
                self.boundary_mode,
                c.mean_area,
                c.mean_perimeter,
                c.pre_area,
                c.pre_perimeter,
                c.me_area,
                c.me_perimeter
            ));
        }
        out
    }

    /// Parses the long-form CSV produced by [`ErrorMatrix::to_csv`].
    pub fn from_csv(text: &str) -> Result<ErrorMatrix> {
        let mut lines = text.lines().enumerate();
        let header = lines.next().map(|(_, l)| l).unwrap_or_default();
        if !header.starts_with("cell_size,radius,boundary_mode") {
            return Err(Error::format_at_line("unrecognized error-matrix header", 1));
        }
        let mut mode: Option<BoundaryMode> = None;
        let mut cells: Vec<CellResult> = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 9 {
                return Err(Error::format_at_line(
                    format!("expected 9 fields, got {}", fields.len()),
                    line_no,
                ));
            }
            let num = |i: usize| -> Result<f64> {
                fields[i].parse::<f64>().map_err(|_| {
                    Error::format_at_line(format!("bad number {:?}", fields[i]), line_no)
                })
            };
            let row_mode: BoundaryMode = fields[2].parse()?;
            match mode {
                None => mode = Some(row_mode),
                Some(m) if m != row_mode => {
                    return Err(Error::format_at_line(
                        "mixed boundary modes in one matrix",
                        line_no,
                    ));
                }
                _ => {}
            }
            cells.push(CellResult {
                cell_size: num(0)?,
                radius: num(1)?,
                mean_area: num(3)?,
                mean_perimeter: num(4)?,
                pre_area: num(5)?,
                pre_perimeter: num(6)?,
                me_area: num(7)?,
                me_perimeter: num(8)?,
            });
        }
        if cells.is_empty() {
            return Err(Error::format("error-matrix CSV has no data rows"));
        }
        let mut cell_sizes: Vec<f64> = cells.iter().map(|c| c.cell_size).collect();
        cell_sizes.sort_by(f64::total_cmp);
        cell_sizes.dedup();
        let mut radii: Vec<f64> = cells.iter().map(|c| c.radius).collect();
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        if cells.len() != cell_sizes.len() * radii.len() {
            return Err(Error::format(format!(
                "matrix is not dense: {} rows for {} cell sizes × {} radii",
                cells.len(),
                cell_sizes.len(),
                radii.len()
            )));
        }
        cells.sort_by(|a, b| {
            a.cell_size
                .total_cmp(&b.cell_size)
                .then(a.radius.total_cmp(&b.radius))
        });
        Ok(ErrorMatrix {
            cell_sizes,
            radii,
            boundary_mode: mode.expect("at least one row"),
            cells,
        })
    }
}

/// Runs the full (N, R) sweep in parallel. Each cell uses the substream
/// keyed by its position in the sorted axes, so the output is independent
/// of worker count and of the order the axes were supplied in.
pub fn run_sweep(config: &SimConfig) -> Result<ErrorMatrix> {
    let config = config.normalized()?;
    let n_count = config.cell_sizes.len();
    let r_count = config.radii.len();
    let cells: Result<Vec<CellResult>> = (0..n_count * r_count)
        .into_par_iter()
        .map(|idx| {
            let (n_idx, r_idx) = (idx / r_count, idx % r_count);
            let grid = GridSpec::new(config.domain_length, config.cell_sizes[n_idx])?;
            simulate_cell(
                &grid,
                config.radii[r_idx],
                config.iterations,
                SubstreamSeed::for_cell(config.seed, n_idx, r_idx),
                config.boundary_mode,
            )
        })
        .collect();
    Ok(ErrorMatrix {
        cell_sizes: config.cell_sizes,
        radii: config.radii,
        boundary_mode: config.boundary_mode,
        cells: cells?,
    })
}

//! Per-bubble measurement and size distributions.
//!
//! A bubble is a connected DRY component. Its area is the member pixel
//! count; its perimeter is the count of member pixels with at least one
//! orthogonal neighbor outside the component (the frame border counts as
//! outside), so a pixel contributes once no matter how many of its edges
//! are exposed. Physical fields are filled when the mask carries a
//! resolution; the equivalent radius comes from the area, which is the more
//! discretization-resilient of the two measurements.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::label_components;
use crate::mask::{BinaryMask, Connectivity};

/// Measurements for one connected DRY component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BubbleRecord {
    /// Component label from the labeling pass (1-based).
    pub label: u32,
    /// Member pixel count.
    pub area_px: u64,
    /// Boundary pixel count (members with an orthogonal exterior neighbor).
    pub perimeter_px: u64,
    /// Area in µm², present iff the mask had a resolution.
    pub area_phys: Option<f64>,
    /// Perimeter in µm, present iff the mask had a resolution.
    pub perimeter_phys: Option<f64>,
    /// sqrt(area_phys / π) in µm, present iff the mask had a resolution.
    pub equiv_radius_phys: Option<f64>,
}

/// Measures every connected DRY component. An all-WET mask yields an empty
/// list.
pub fn measure_bubbles(mask: &BinaryMask, connectivity: Connectivity) -> Vec<BubbleRecord> {
    let labeling = label_components(mask, connectivity);
    let count = labeling.count() as usize;
    let mut area = vec![0u64; count];
    let mut perimeter = vec![0u64; count];
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            let label = labeling.get(x, y);
            if label == 0 {
                continue;
            }
            let idx = (label - 1) as usize;
            area[idx] += 1;
            let exterior = [(1isize, 0isize), (-1, 0), (0, 1), (0, -1)]
                .iter()
                .any(|&(dx, dy)| {
                    let (nx, ny) = (x as isize + dx, y as isize + dy);
                    if nx < 0
                        || ny < 0
                        || nx as usize >= mask.width()
                        || ny as usize >= mask.height()
                    {
                        true // frame border counts as outside
                    } else {
                        labeling.get(nx as usize, ny as usize) != label
                    }
                });
            if exterior {
                perimeter[idx] += 1;
            }
        }
    }
    let res = mask.resolution();
    (0..count)
        .map(|i| {
            let (area_phys, perimeter_phys, equiv_radius_phys) = match res {
                Some(r) => {
                    let a = area[i] as f64 * r * r;
                    (
                        Some(a),
                        Some(perimeter[i] as f64 * r),
                        Some((a / std::f64::consts::PI).sqrt()),
                    )
                }
                None => (None, None, None),
            };
            BubbleRecord {
                label: (i + 1) as u32,
                area_px: area[i],
                perimeter_px: perimeter[i],
                area_phys,
                perimeter_phys,
                equiv_radius_phys,
            }
        })
        .collect()
}

/// Which bubble measurement a histogram is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureField {
    Radius,
    Area,
    Perimeter,
}

/// Histogram bin spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HistogramScale {
    Linear,
    Log,
}

/// Equal-width bins (in linear or log10 space) spanning the data range.
/// The maximum value belongs to the last bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// Strictly ascending bin edges, `bins + 1` entries.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub scale: HistogramScale,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Midpoint of bin `i` in value space (arithmetic in linear scale,
    /// geometric in log scale).
    pub fn midpoint(&self, i: usize) -> f64 {
        match self.scale {
            HistogramScale::Linear => 0.5 * (self.edges[i] + self.edges[i + 1]),
            HistogramScale::Log => {
                10f64.powf(0.5 * (self.edges[i].log10() + self.edges[i + 1].log10()))
            }
        }
    }
}

/// Extracts the value a histogram field refers to, preferring physical
/// units and falling back to pixel units. The pixel-unit radius is
/// sqrt(area_px / π).
pub fn field_value(record: &BubbleRecord, field: MeasureField) -> f64 {
    match field {
        MeasureField::Radius => record
            .equiv_radius_phys
            .unwrap_or_else(|| (record.area_px as f64 / std::f64::consts::PI).sqrt()),
        MeasureField::Area => record.area_phys.unwrap_or(record.area_px as f64),
        MeasureField::Perimeter => record.perimeter_phys.unwrap_or(record.perimeter_px as f64),
    }
}

/// Bins raw values into `bins` equal-width bins spanning [min, max].
pub fn histogram_of_values(
    values: &[f64],
    bins: usize,
    scale: HistogramScale,
) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::argument("cannot build a histogram from no values"));
    }
    if bins == 0 {
        return Err(Error::argument("histogram needs at least one bin"));
    }
    if matches!(scale, HistogramScale::Log) {
        if let Some(v) = values.iter().find(|&&v| v <= 0.0 || !v.is_finite()) {
            return Err(Error::argument(format!(
                "log-scale histogram requires positive values, got {v}"
            )));
        }
    }
    let to_space = |v: f64| match scale {
        HistogramScale::Linear => v,
        HistogramScale::Log => v.log10(),
    };
    let from_space = |v: f64| match scale {
        HistogramScale::Linear => v,
        HistogramScale::Log => 10f64.powf(v),
    };
    let mut lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mut slo, mut shi) = (to_space(lo), to_space(hi));
    if slo == shi {
        // degenerate range: pad half a unit of binning space on each side
        slo -= 0.5;
        shi += 0.5;
        lo = from_space(slo);
        hi = from_space(shi);
    }
    let _ = (lo, hi);
    let span = shi - slo;
    let mut counts = vec![0u64; bins];
    for &v in values {
        let t = (to_space(v) - slo) / span;
        let idx = ((t * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let edges = (0..=bins)
        .map(|i| from_space(slo + span * i as f64 / bins as f64))
        .collect();
    Ok(Histogram {
        edges,
        counts,
        scale,
    })
}

/// Builds a histogram over one measurement field of a bubble table.
pub fn build_histogram(
    records: &[BubbleRecord],
    field: MeasureField,
    bins: usize,
    scale: HistogramScale,
) -> Result<Histogram> {
    if records.is_empty() {
        return Err(Error::argument(
            "cannot build a histogram from an empty bubble table",
        ));
    }
    let values: Vec<f64> = records.iter().map(|r| field_value(r, field)).collect();
    histogram_of_values(&values, bins, scale)
}

/// A per-group size distribution sharing one bin spec across groups
/// (rows are groups, columns are size bins).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupedHistogram {
    pub group_values: Vec<f64>,
    pub edges: Vec<f64>,
    pub scale: HistogramScale,
    pub counts: Vec<Vec<u64>>,
}

/// Builds the bivariate (group × size) distribution. Bin edges span the
/// pooled value range of all groups, so rows are directly comparable; row
/// `g` sums to the bubble count of group `g`.
pub fn grouped_distribution(
    groups: &[(f64, Vec<BubbleRecord>)],
    field: MeasureField,
    bins: usize,
    scale: HistogramScale,
) -> Result<GroupedHistogram> {
    if groups.is_empty() {
        return Err(Error::argument(
            "grouped distribution needs at least one group",
        ));
    }
    let pooled: Vec<f64> = groups
        .iter()
        .flat_map(|(_, recs)| recs.iter().map(|r| field_value(r, field)))
        .collect();
    let spec = histogram_of_values(&pooled, bins, scale)?;
    let (slo, shi) = match scale {
        HistogramScale::Linear => (spec.edges[0], spec.edges[bins]),
        HistogramScale::Log => (spec.edges[0].log10(), spec.edges[bins].log10()),
    };
    let span = shi - slo;
    let counts = groups
        .iter()
        .map(|(_, recs)| {
            let mut row = vec![0u64; bins];
            for r in recs {
                let v = match scale {
                    HistogramScale::Linear => field_value(r, field),
                    HistogramScale::Log => field_value(r, field).log10(),
                };
                let idx = (((v - slo) / span * bins as f64) as usize).min(bins - 1);
                row[idx] += 1;
            }
            row
        })
        .collect();
    Ok(GroupedHistogram {
        group_values: groups.iter().map(|(g, _)| *g).collect(),
        edges: spec.edges,
        scale,
        counts,
    })
}

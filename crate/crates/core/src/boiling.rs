//! Dry area fraction and contact line density.
//!
//! Both metrics are exact integer ratios over the pixel grid. The contact
//! line is extracted the same way the underlying imaging pipeline defines
//! it: invert the mask, distance-transform the inverted mask (distance to
//! the nearest WET pixel), and count pixels at distance exactly 1 — the DRY
//! pixels orthogonally adjacent to a WET pixel.

use serde::{Deserialize, Serialize};

use crate::distance::distance_transform;
use crate::error::{Error, Result};
use crate::mask::BinaryMask;

/// Boiling metrics for one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoilingMetrics {
    /// Dry pixel fraction in [0, 1].
    pub theta_dry: f64,
    /// Contact-line pixels per total pixels, in [0, 1].
    pub rho_cl_pixel: f64,
    /// Contact line density per µm; present iff the mask carried a
    /// resolution. Equals `rho_cl_pixel / resolution`.
    pub rho_cl_physical: Option<f64>,
}

/// Fraction of DRY pixels: dry / total. The prose form 1 − wet/total is the
/// same number since every pixel is exactly DRY or WET.
pub fn dry_area_fraction(mask: &BinaryMask) -> f64 {
    mask.dry_count() as f64 / mask.len() as f64
}

/// Contact-line pixel fraction: count(distance-to-WET == 1) / total.
///
/// All-DRY and all-WET masks have no interface and return 0. Distances are
/// exact, so the == 1 comparison only matches orthogonal adjacency.
pub fn contact_line_density(mask: &BinaryMask) -> f64 {
    let distances = distance_transform(&mask.invert());
    distances.count_equal(1.0) as f64 / mask.len() as f64
}

/// Computes both metrics; the physical contact line density is filled in
/// when the mask carries a resolution.
pub fn compute(mask: &BinaryMask) -> BoilingMetrics {
    let metrics = BoilingMetrics {
        theta_dry: dry_area_fraction(mask),
        rho_cl_pixel: contact_line_density(mask),
        rho_cl_physical: None,
    };
    match mask.resolution() {
        Some(r) => physicalize(metrics, r).expect("mask resolution is validated positive"),
        None => metrics,
    }
}

/// Converts the pixel-relative contact line density to physical units
/// (per µm) for the given resolution in µm per pixel. `theta_dry` is
/// dimensionless and unchanged.
pub fn physicalize(metrics: BoilingMetrics, resolution: f64) -> Result<BoilingMetrics> {
    if resolution <= 0.0 || !resolution.is_finite() {
        return Err(Error::argument(format!(
            "resolution must be strictly positive, got {resolution}"
        )));
    }
    Ok(BoilingMetrics {
        rho_cl_physical: Some(metrics.rho_cl_pixel / resolution),
        ..metrics
    })
}

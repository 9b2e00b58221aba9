//! Canonical binary-mask representation.
//!
//! A [`BinaryMask`] is a dense row-major grid in which every pixel is either
//! DRY (vapor, stored as `true`) or WET (liquid, `false`). Masks optionally
//! carry a physical resolution in µm per pixel edge, which downstream
//! measurements use to report physical units.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pixel connectivity for component labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Default for Connectivity {
    /// Blob extraction of round objects conventionally uses 8-connectivity.
    fn default() -> Self {
        Connectivity::Eight
    }
}

/// A dry/wet classification grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
    resolution: Option<f64>,
}

impl BinaryMask {
    /// Builds a mask from row-major pixel values (`true` = DRY).
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::argument(format!(
                "mask dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::argument(format!(
                "expected {} pixels for a {width}x{height} mask, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(BinaryMask {
            width,
            height,
            pixels,
            resolution: None,
        })
    }

    /// Builds a mask by evaluating `f(x, y)` over the grid.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        BinaryMask::new(width, height, pixels)
    }

    /// A mask with every pixel set to `dry`.
    pub fn filled(width: usize, height: usize, dry: bool) -> Result<Self> {
        BinaryMask::new(width, height, vec![dry; width * height])
    }

    /// Attaches a physical resolution in µm per pixel edge.
    pub fn with_resolution(mut self, resolution: f64) -> Result<Self> {
        if resolution <= 0.0 || !resolution.is_finite() {
            return Err(Error::argument(format!(
                "resolution must be strictly positive, got {resolution}"
            )));
        }
        self.resolution = Some(resolution);
        Ok(self)
    }

    pub fn without_resolution(mut self) -> Self {
        self.resolution = None;
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Total pixel count (always ≥ 1).
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // masks are at least 1x1 by construction
    }

    /// Physical length of a pixel edge in µm, when known.
    pub fn resolution(&self) -> Option<f64> {
        self.resolution
    }

    /// True when pixel `(x, y)` is DRY. Panics if out of bounds.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.width && y < self.height);
        self.pixels[y * self.width + x]
    }

    /// True when `(x, y)` is inside the grid and DRY; out-of-bounds
    /// coordinates read as WET.
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            false
        } else {
            self.pixels[y as usize * self.width + x as usize]
        }
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn dry_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    /// DRY↔WET swap. Involutive: `m.invert().invert() == m`.
    pub fn invert(&self) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&p| !p).collect(),
            resolution: self.resolution,
        }
    }

    /// Row-major iterator over `(x, y, dry)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        let w = self.width;
        self.pixels
            .iter()
            .enumerate()
            .map(move |(i, &p)| (i % w, i / w, p))
    }
}

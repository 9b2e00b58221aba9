//! Binary morphology with a one-pixel reach.
//!
//! Erosion and dilation shrink or grow the DRY region by one pixel using a
//! full 3×3 structuring element. Out-of-bounds neighbors read as WET, so
//! regions touching the frame edge erode there like any other boundary.

use crate::mask::BinaryMask;

/// The 3×3 all-ones structuring element: one-pixel reach in all 8 directions,
/// symmetric about its center.
#[derive(Debug, Clone, Copy, Default)]
pub struct StructuringElement;

impl StructuringElement {
    pub fn square3x3() -> Self {
        StructuringElement
    }

    /// Neighborhood offsets including the center.
    pub fn offsets(&self) -> impl Iterator<Item = (isize, isize)> {
        (-1..=1).flat_map(|dy| (-1..=1).map(move |dx| (dx, dy)))
    }
}

/// A pixel survives erosion iff its whole 3×3 neighborhood is DRY
/// (frame border counts as WET). Output DRY set ⊆ input DRY set.
pub fn erode(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    transform(mask, se, true)
}

/// A pixel is DRY after dilation iff any pixel of its 3×3 neighborhood is
/// DRY. Output DRY set ⊇ input DRY set.
pub fn dilate(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    transform(mask, se, false)
}

fn transform(mask: &BinaryMask, se: &StructuringElement, all: bool) -> BinaryMask {
    let out = BinaryMask::from_fn(mask.width(), mask.height(), |x, y| {
        let mut neighbors = se
            .offsets()
            .map(|(dx, dy)| mask.get_clamped(x as isize + dx, y as isize + dy));
        if all {
            neighbors.all(|p| p)
        } else {
            neighbors.any(|p| p)
        }
    })
    .expect("dimensions preserved");
    match mask.resolution() {
        Some(r) => out
            .with_resolution(r)
            .expect("resolution already validated"),
        None => out,
    }
}

//! Connected-component labeling of the DRY region.

use crate::mask::{BinaryMask, Connectivity};

/// Label grid produced by [`label_components`]: WET pixels hold 0, each
/// maximal connected DRY region a distinct label in `1..=count`. Labels are
/// assigned in row-major order of first encounter, so the result is
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    count: u32,
}

impl Labeling {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of connected DRY components.
    pub fn count(&self) -> u32 {
        self.count
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        debug_assert!(x < self.width && y < self.height);
        self.labels[y * self.width + x]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }
}

const ORTHO: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const DIAG: [(isize, isize); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Labels maximal connected DRY regions under the given connectivity.
pub fn label_components(mask: &BinaryMask, connectivity: Connectivity) -> Labeling {
    let (w, h) = (mask.width(), mask.height());
    let mut labels = vec![0u32; w * h];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..w * h {
        if !mask.pixels()[start] || labels[start] != 0 {
            continue;
        }
        count += 1;
        labels[start] = count;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (x, y) = ((idx % w) as isize, (idx / w) as isize);
            let neighbors = match connectivity {
                Connectivity::Four => &ORTHO[..],
                Connectivity::Eight => &[ORTHO, DIAG].concat()[..],
            };
            for &(dx, dy) in neighbors {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx as usize >= w || ny as usize >= h {
                    continue;
                }
                let ni = ny as usize * w + nx as usize;
                if mask.pixels()[ni] && labels[ni] == 0 {
                    labels[ni] = count;
                    stack.push(ni);
                }
            }
        }
    }
    Labeling {
        width: w,
        height: h,
        labels,
        count,
    }
}

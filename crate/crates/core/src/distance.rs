//! Exact Euclidean distance transform.
//!
//! Two-pass lower-envelope algorithm on squared distances (Felzenszwalb &
//! Huttenlocher). Squared distances are exact integers carried in f64, so
//! comparisons like "distance exactly 1" are free of rounding: a distance of
//! 1.0 occurs iff the squared distance is exactly 1, i.e. the nearest DRY
//! pixel is an orthogonal neighbor.

use crate::mask::BinaryMask;

/// Per-pixel Euclidean distances to the nearest DRY pixel of the source
/// mask. DRY pixels hold 0; if the source had no DRY pixel at all, every
/// entry is `f64::INFINITY`.
#[derive(Debug, Clone)]
pub struct DistanceMap {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl DistanceMap {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        debug_assert!(x < self.width && y < self.height);
        self.values[y * self.width + x]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of pixels whose distance equals `d` exactly.
    pub fn count_equal(&self, d: f64) -> usize {
        self.values.iter().filter(|&&v| v == d).count()
    }
}

/// Computes the exact Euclidean distance (in pixel units) from every pixel
/// to the nearest DRY pixel of `mask`.
pub fn distance_transform(mask: &BinaryMask) -> DistanceMap {
    let (w, h) = (mask.width(), mask.height());
    if mask.dry_count() == 0 {
        return DistanceMap {
            width: w,
            height: h,
            values: vec![f64::INFINITY; w * h],
        };
    }

    // Finite stand-in for "no feature in this column": strictly larger than
    // any realizable squared distance (w-1)^2 + (h-1)^2.
    let big = (w * w + h * h) as f64;

    // Pass 1: per-column squared vertical distances.
    let mut col = vec![big; w * h];
    for x in 0..w {
        let mut last: Option<usize> = None;
        for y in 0..h {
            if mask.get(x, y) {
                last = Some(y);
            }
            if let Some(fy) = last {
                col[y * w + x] = ((y - fy) * (y - fy)) as f64;
            }
        }
        last = None;
        for y in (0..h).rev() {
            if mask.get(x, y) {
                last = Some(y);
            }
            if let Some(fy) = last {
                let d = ((fy - y) * (fy - y)) as f64;
                let cell = &mut col[y * w + x];
                if d < *cell {
                    *cell = d;
                }
            }
        }
    }

    // Pass 2: per-row lower envelope of parabolas y = f[i] + (x - i)^2.
    let mut values = vec![0.0; w * h];
    let mut f = vec![0.0f64; w];
    let mut v = vec![0usize; w];
    let mut z = vec![0.0f64; w + 1];
    for y in 0..h {
        let row = &col[y * w..(y + 1) * w];
        f.copy_from_slice(row);
        let mut k = 0usize;
        v[0] = 0;
        z[0] = f64::NEG_INFINITY;
        z[1] = f64::INFINITY;
        for q in 1..w {
            let fq = f[q] + (q * q) as f64;
            loop {
                let p = v[k];
                let s = (fq - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
                if s <= z[k] {
                    debug_assert!(k > 0);
                    k -= 1;
                } else {
                    k += 1;
                    v[k] = q;
                    z[k] = s;
                    z[k + 1] = f64::INFINITY;
                    break;
                }
            }
        }
        let mut k = 0usize;
        for q in 0..w {
            while z[k + 1] < q as f64 {
                k += 1;
            }
            let p = v[k];
            let dq = q as f64 - p as f64;
            values[y * w + q] = (dq * dq + f[p]).sqrt();
        }
    }

    DistanceMap {
        width: w,
        height: h,
        values,
    }
}

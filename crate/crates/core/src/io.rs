//! Mask file I/O: PGM (P2 ASCII / P5 binary, maxval ≤ 255) and integer CSV.
//!
//! Any stored value > 0 maps to DRY, 0 to WET. Writers emit a canonical
//! form (maxval 255, DRY = 255 in PGM; 0/1 cells in CSV) so that
//! `write(load(x))` is byte-identical for files produced by these writers.
//! A physical resolution travels in a `# resolution <µm/px>` comment line.

use crate::error::{Error, Result};
use crate::mask::BinaryMask;

/// Supported mask file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskFormat {
    Pgm,
    Csv,
}

impl MaskFormat {
    /// Chooses a format from a file extension, defaulting to PGM magic
    /// sniffing when the extension is unknown.
    pub fn from_path(path: &std::path::Path) -> Option<MaskFormat> {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("pgm") => Some(MaskFormat::Pgm),
            Some(e) if e.eq_ignore_ascii_case("csv") => Some(MaskFormat::Csv),
            _ => None,
        }
    }
}

/// Parses a mask from raw bytes in the given format.
pub fn load_mask(bytes: &[u8], format: MaskFormat) -> Result<BinaryMask> {
    match format {
        MaskFormat::Pgm => load_pgm(bytes),
        MaskFormat::Csv => load_csv(bytes),
    }
}

/// Parses a mask, picking the format from the magic number (`P2`/`P5`
/// means PGM, anything else is treated as CSV).
pub fn load_mask_auto(bytes: &[u8]) -> Result<BinaryMask> {
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        load_pgm(bytes)
    } else {
        load_csv(bytes)
    }
}

const RESOLUTION_TAG: &str = "resolution";

// ---------------------------------------------------------------------------
// PGM

struct PgmScanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    resolution: Option<f64>,
}

impl<'a> PgmScanner<'a> {
    /// Advances past whitespace and `#` comments, harvesting any
    /// `# resolution <v>` annotation on the way.
    fn skip_separators(&mut self) -> Result<()> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                let comment = String::from_utf8_lossy(&self.bytes[start + 1..self.pos]);
                let mut words = comment.split_whitespace();
                if words.next() == Some(RESOLUTION_TAG) {
                    if let Some(v) = words.next().and_then(|w| w.parse::<f64>().ok()) {
                        self.resolution = Some(v);
                    }
                }
            } else {
                return Ok(());
            }
        }
    }

    fn next_token(&mut self, what: &str) -> Result<u32> {
        self.skip_separators()?;
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::format_at_byte(format!("expected {what}"), start));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are ascii");
        text.parse::<u32>()
            .map_err(|_| Error::format_at_byte(format!("{what} out of range: {text}"), start))
    }
}

fn load_pgm(bytes: &[u8]) -> Result<BinaryMask> {
    let binary = match bytes.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => {
            return Err(Error::format_at_byte(
                "not a PGM stream (expected P2 or P5)",
                0,
            ))
        }
    };
    let mut sc = PgmScanner {
        bytes,
        pos: 2,
        resolution: None,
    };
    let width = sc.next_token("width")? as usize;
    let height = sc.next_token("height")? as usize;
    let maxval = sc.next_token("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::format(format!(
            "PGM dimensions must be positive, got {width}x{height}"
        )));
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::format(format!(
            "PGM maxval must be in 1..=255, got {maxval}"
        )));
    }
    let count = width * height;
    let mut pixels = Vec::with_capacity(count);
    if binary {
        // single whitespace byte after maxval, then raw samples
        if sc.pos >= bytes.len() || !bytes[sc.pos].is_ascii_whitespace() {
            return Err(Error::format_at_byte(
                "expected separator after maxval",
                sc.pos,
            ));
        }
        sc.pos += 1;
        let data = &bytes[sc.pos..];
        if data.len() < count {
            return Err(Error::format_at_byte(
                format!("expected {count} raster bytes, found {}", data.len()),
                sc.pos,
            ));
        }
        pixels.extend(data[..count].iter().map(|&b| b > 0));
    } else {
        for _ in 0..count {
            let v = sc.next_token("pixel value")?;
            if v > maxval {
                return Err(Error::format_at_byte(
                    format!("pixel value {v} exceeds maxval {maxval}"),
                    sc.pos,
                ));
            }
            pixels.push(v > 0);
        }
    }
    let mask = BinaryMask::new(width, height, pixels)?;
    match sc.resolution {
        Some(r) => mask.with_resolution(r),
        None => Ok(mask),
    }
}

/// Serializes a mask as ASCII PGM (P2), one raster row per line.
pub fn write_pgm_ascii(mask: &BinaryMask) -> Vec<u8> {
    let mut out = String::from("P2\n");
    if let Some(r) = mask.resolution() {
        out.push_str(&format!("# {RESOLUTION_TAG} {r}\n"));
    }
    out.push_str(&format!("{} {}\n255\n", mask.width(), mask.height()));
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            if x > 0 {
                out.push(' ');
            }
            out.push_str(if mask.get(x, y) { "255" } else { "0" });
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Serializes a mask as binary PGM (P5).
pub fn write_pgm_binary(mask: &BinaryMask) -> Vec<u8> {
    let mut out = String::from("P5\n");
    if let Some(r) = mask.resolution() {
        out.push_str(&format!("# {RESOLUTION_TAG} {r}\n"));
    }
    out.push_str(&format!("{} {}\n255\n", mask.width(), mask.height()));
    let mut bytes = out.into_bytes();
    bytes.extend(mask.pixels().iter().map(|&p| if p { 255u8 } else { 0u8 }));
    bytes
}

// ---------------------------------------------------------------------------
// CSV

fn load_csv(bytes: &[u8]) -> Result<BinaryMask> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::format_at_byte("CSV is not valid UTF-8", e.valid_up_to()))?;
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut width = None;
    let mut resolution = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some(RESOLUTION_TAG) {
                if let Some(v) = words.next().and_then(|w| w.parse::<f64>().ok()) {
                    resolution = Some(v);
                }
            }
            continue;
        }
        let mut row = Vec::new();
        for cell in trimmed.split(',') {
            let v: i64 = cell.trim().parse().map_err(|_| {
                Error::format_at_line(format!("expected integer cell, got {cell:?}"), line_no)
            })?;
            row.push(v > 0);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::format_at_line(
                    format!("ragged row: expected {w} cells, got {}", row.len()),
                    line_no,
                ));
            }
            _ => {}
        }
        rows.push(row);
    }
    let width = width.ok_or_else(|| Error::format("CSV contains no data rows"))?;
    let height = rows.len();
    let mask = BinaryMask::new(width, height, rows.into_iter().flatten().collect())?;
    match resolution {
        Some(r) => mask.with_resolution(r),
        None => Ok(mask),
    }
}

/// Serializes a mask as integer CSV, one raster row per line.
pub fn write_csv(mask: &BinaryMask) -> Vec<u8> {
    let mut out = String::new();
    if let Some(r) = mask.resolution() {
        out.push_str(&format!("# {RESOLUTION_TAG} {r}\n"));
    }
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            if x > 0 {
                out.push(',');
            }
            out.push(if mask.get(x, y) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_values_threshold_to_dry() {
        // 1x3 grid: 0, 255, 0 -> WET, DRY, WET
        let m = load_mask(b"P2\n1 3\n255\n0\n255\n0\n", MaskFormat::Pgm).unwrap();
        assert_eq!((m.width(), m.height()), (1, 3));
        assert_eq!(m.pixels(), &[false, true, false]);
    }

    #[test]
    fn csv_checkerboard() {
        let m = load_mask(b"0,1\n1,0\n", MaskFormat::Csv).unwrap();
        assert_eq!((m.width(), m.height()), (2, 2));
        assert_eq!(m.pixels(), &[false, true, true, false]);
    }

    #[test]
    fn pgm_zero_width_is_format_error() {
        let err = load_mask(b"P2\n0 3\n255\n", MaskFormat::Pgm).unwrap_err();
        assert!(matches!(err, Error::Format { .. }), "got {err:?}");
    }

    #[test]
    fn ragged_csv_reports_line() {
        let err = load_mask(b"0,1\n1\n", MaskFormat::Csv).unwrap_err();
        match err {
            Error::Format { line, .. } => assert_eq!(line, Some(2)),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn p5_raster_roundtrip_is_bit_identical() {
        let mask = BinaryMask::new(3, 2, vec![true, false, true, false, false, true])
            .unwrap()
            .with_resolution(12.6)
            .unwrap();
        let bytes = write_pgm_binary(&mask);
        let loaded = load_mask(&bytes, MaskFormat::Pgm).unwrap();
        assert_eq!(loaded, mask);
        assert_eq!(write_pgm_binary(&loaded), bytes);
    }

    #[test]
    fn p2_roundtrip_is_bit_identical() {
        let mask = BinaryMask::new(2, 2, vec![true, true, false, true]).unwrap();
        let bytes = write_pgm_ascii(&mask);
        let loaded = load_mask(&bytes, MaskFormat::Pgm).unwrap();
        assert_eq!(loaded, mask);
        assert_eq!(write_pgm_ascii(&loaded), bytes);
    }

    #[test]
    fn csv_roundtrip_preserves_resolution() {
        let mask = BinaryMask::new(2, 1, vec![false, true])
            .unwrap()
            .with_resolution(5.0)
            .unwrap();
        let bytes = write_csv(&mask);
        let loaded = load_mask(&bytes, MaskFormat::Csv).unwrap();
        assert_eq!(loaded.resolution(), Some(5.0));
        assert_eq!(write_csv(&loaded), bytes);
    }

    #[test]
    fn truncated_p5_raster_is_format_error() {
        let err = load_mask(b"P5\n2 2\n255\nab", MaskFormat::Pgm).unwrap_err();
        assert!(
            matches!(err, Error::Format { byte: Some(_), .. }),
            "got {err:?}"
        );
    }

    #[test]
    fn pgm_comment_resolution_parsed() {
        let m = load_mask(b"P2\n# resolution 12.6\n1 1\n255\n255\n", MaskFormat::Pgm).unwrap();
        assert_eq!(m.resolution(), Some(12.6));
    }
}

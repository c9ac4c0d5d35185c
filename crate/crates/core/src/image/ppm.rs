//! Binary PPM (P6, 8-bit) reading and writing.
//!
//! The only pixel format accepted is maxval 255. Loading scales bytes to
//! `[0, 1]` by division; saving clamps, scales by 255 and rounds half away
//! from zero, so a save/load round trip is within half a quantization step
//! and becomes bit-exact after the first trip.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::RgbImage;

/// Reads a binary P6 file with maxval 255.
pub fn load_ppm(path: impl AsRef<Path>) -> Result<RgbImage> {
    let bytes = fs::read(path.as_ref())?;
    parse_ppm(&bytes)
}

/// Parses an in-memory binary P6 image.
pub fn parse_ppm(bytes: &[u8]) -> Result<RgbImage> {
    let mut cursor = 0usize;
    expect_magic(bytes, &mut cursor)?;
    let width = read_header_number(bytes, &mut cursor)?;
    let height = read_header_number(bytes, &mut cursor)?;
    let maxval = read_header_number(bytes, &mut cursor)?;
    if maxval != 255 {
        return Err(Error::format(format!("unsupported maxval {maxval}, expected 255")));
    }
    // Exactly one whitespace byte separates the header from the payload.
    match bytes.get(cursor) {
        Some(b) if b.is_ascii_whitespace() => cursor += 1,
        _ => return Err(Error::format("missing whitespace after header")),
    }
    if width == 0 || height == 0 {
        return Err(Error::format("image dimensions must be positive"));
    }
    let need = height
        .checked_mul(width)
        .and_then(|n| n.checked_mul(3))
        .ok_or_else(|| Error::format("image dimensions overflow"))?;
    let payload = &bytes[cursor..];
    if payload.len() < need {
        return Err(Error::format(format!(
            "truncated payload: need {need} bytes, found {}",
            payload.len()
        )));
    }
    let mut img = RgbImage::new(height, width)?;
    for row in 0..height {
        for col in 0..width {
            let at = (row * width + col) * 3;
            img.set(row, col, [
                payload[at] as f64 / 255.0,
                payload[at + 1] as f64 / 255.0,
                payload[at + 2] as f64 / 255.0,
            ]);
        }
    }
    Ok(img)
}

/// Writes a binary P6 file with maxval 255. The file appears under its
/// final name only once fully written (temp-file-and-rename).
pub fn save_ppm(img: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    let bytes = ppm_bytes(img);
    write_atomically(path.as_ref(), &bytes)
}

/// Serializes an image as binary P6.
pub fn ppm_bytes(img: &RgbImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.reserve(img.height() * img.width() * 3);
    for row in 0..img.height() {
        for col in 0..img.width() {
            for v in img.get(row, col) {
                out.push(quantize(v));
            }
        }
    }
    out
}

/// `[0, 1]` value to an 8-bit level: clamp, scale by 255, round half away
/// from zero.
#[inline]
pub fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Writes `bytes` to a sibling temp file and renames it over `path`, so a
/// failed write never leaves a partial file under the final name.
pub(crate) fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn expect_magic(bytes: &[u8], cursor: &mut usize) -> Result<()> {
    if bytes.len() < 2 || &bytes[..2] != b"P6" {
        return Err(Error::format("not a binary PPM (P6) file"));
    }
    *cursor = 2;
    Ok(())
}

/// Reads the next decimal netpbm header field, skipping whitespace and `#`
/// comment lines. Shared with the PBM payload parser.
pub(crate) fn read_header_number(bytes: &[u8], cursor: &mut usize) -> Result<usize> {
    loop {
        match bytes.get(*cursor) {
            Some(b) if b.is_ascii_whitespace() => *cursor += 1,
            Some(b'#') => {
                while let Some(b) = bytes.get(*cursor) {
                    *cursor += 1;
                    if *b == b'\n' {
                        break;
                    }
                }
            }
            Some(b) if b.is_ascii_digit() => break,
            _ => return Err(Error::format("malformed header")),
        }
    }
    let mut value = 0usize;
    while let Some(b) = bytes.get(*cursor) {
        if !b.is_ascii_digit() {
            break;
        }
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add((b - b'0') as usize))
            .ok_or_else(|| Error::format("header number overflows"))?;
        *cursor += 1;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_image(seed: u64, height: usize, width: usize) -> RgbImage {
        let mut r = SplitMix64::new(seed);
        RgbImage::from_fn(height, width, |_, _| [r.next_f64(), r.next_f64(), r.next_f64()])
            .unwrap()
    }

    #[test]
    fn save_then_load_is_within_half_a_quantization_step() {
        let img = random_image(11, 9, 13);
        let back = parse_ppm(&ppm_bytes(&img)).unwrap();
        let mut worst = 0.0f64;
        for row in 0..9 {
            for col in 0..13 {
                for (a, b) in img.get(row, col).iter().zip(back.get(row, col)) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
        assert!(worst <= 1.0 / 510.0, "max error {worst}");
    }

    #[test]
    fn a_second_trip_is_bit_exact() {
        let img = random_image(12, 6, 6);
        let once = parse_ppm(&ppm_bytes(&img)).unwrap();
        let twice = parse_ppm(&ppm_bytes(&once)).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn one_white_pixel_round_trips_to_exact_ones() {
        let img = parse_ppm(b"P6\n1 1\n255\n\xff\xff\xff").unwrap();
        assert_eq!(img.get(0, 0), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn header_comments_are_skipped() {
        let img = parse_ppm(b"P6\n# made by hand\n2 1\n# another note\n255\n\x00\x00\x00\xff\xff\xff")
            .unwrap();
        assert_eq!(img.width(), 2);
        assert_eq!(img.get(0, 1), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn malformed_inputs_are_format_errors() {
        assert!(matches!(parse_ppm(b"P5\n1 1\n255\n\x00"), Err(Error::Format(_))));
        assert!(matches!(parse_ppm(b"P6\n1 1\n65535\n\x00\x00"), Err(Error::Format(_))));
        assert!(matches!(parse_ppm(b"P6\n2 2\n255\n\x00\x00\x00"), Err(Error::Format(_))));
        assert!(matches!(parse_ppm(b"P6\n1 abc\n255\n"), Err(Error::Format(_))));
    }

    #[test]
    fn files_round_trip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.ppm");
        let img = random_image(13, 4, 5);
        save_ppm(&img, &path).unwrap();
        let back = load_ppm(&path).unwrap();
        assert_eq!(parse_ppm(&ppm_bytes(&img)).unwrap(), back);
        assert!(!path.with_extension("ppm.tmp").exists());
    }

    #[test]
    fn quantization_rounds_half_away_from_zero() {
        // 0.5/255 is exactly halfway between levels 0 and 1.
        assert_eq!(quantize(0.5 / 255.0), 1);
        assert_eq!(quantize(0.4999 / 255.0), 0);
        assert_eq!(quantize(1.0), 255);
        assert_eq!(quantize(2.0), 255);
        assert_eq!(quantize(-1.0), 0);
    }
}

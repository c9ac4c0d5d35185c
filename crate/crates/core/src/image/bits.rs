//! Binary payload matrices and their file formats.
//!
//! A payload is an `e×f` matrix of bits. On disk it is a PBM file — binary
//! P4 (rows packed most-significant-bit first, each row padded to a byte
//! boundary) or plain-text P1 — or a bare ASCII grid of `0`/`1` rows.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// A rectangular bit matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BitMatrix {
    /// An all-zero matrix.
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::shape("bit matrix dimensions must be positive"));
        }
        Ok(Self { rows, cols, bits: vec![false; rows * cols] })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut m = Self::new(rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.cols + c] = bit;
    }

    /// Bits flattened row-major.
    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    /// Rebuilds a matrix from row-major flattened bits.
    pub fn from_bits(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::shape(format!(
                "bit count {} does not fill {rows}×{cols}",
                bits.len()
            )));
        }
        if rows == 0 || cols == 0 {
            return Err(Error::shape("bit matrix dimensions must be positive"));
        }
        Ok(Self { rows, cols, bits })
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Number of positions where the two matrices differ.
    pub fn hamming(&self, other: &Self) -> Result<usize> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape(format!(
                "bit matrix dimensions differ: {}×{} vs {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count())
    }
}

/// Loads a payload from PBM (P4 or P1) or a bare `0`/`1` grid.
pub fn load_bits(path: impl AsRef<Path>) -> Result<BitMatrix> {
    let bytes = std::fs::read(path.as_ref())?;
    parse_bits(&bytes)
}

/// Parses PBM (P4/P1) content, falling back to a bare ASCII grid.
pub fn parse_bits(bytes: &[u8]) -> Result<BitMatrix> {
    match bytes.get(..2) {
        Some(b"P4") => parse_p4(bytes),
        Some(b"P1") => parse_p1(bytes),
        _ => parse_ascii(bytes),
    }
}

/// Saves a payload as binary PBM (P4), via temp-file-and-rename.
pub fn save_pbm(bits: &BitMatrix, path: impl AsRef<Path>) -> Result<()> {
    crate::image::ppm::write_atomically(path.as_ref(), &pbm_bytes(bits))
}

/// Serializes as binary PBM (P4).
pub fn pbm_bytes(bits: &BitMatrix) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", bits.cols(), bits.rows()).into_bytes();
    let stride = bits.cols().div_ceil(8);
    for r in 0..bits.rows() {
        let mut row = vec![0u8; stride];
        for c in 0..bits.cols() {
            if bits.get(r, c) {
                row[c / 8] |= 0x80 >> (c % 8);
            }
        }
        out.extend_from_slice(&row);
    }
    out
}

/// Renders as a bare grid: one line of `0`/`1` characters per row.
pub fn to_ascii(bits: &BitMatrix) -> String {
    let mut out = String::with_capacity(bits.rows() * (bits.cols() + 1));
    for r in 0..bits.rows() {
        for c in 0..bits.cols() {
            let _ = write!(out, "{}", bits.get(r, c) as u8);
        }
        out.push('\n');
    }
    out
}

fn parse_p4(bytes: &[u8]) -> Result<BitMatrix> {
    // Reuse the netpbm header scanner for the two dimension fields.
    let mut cursor = 2usize;
    let cols = crate::image::ppm::read_header_number(bytes, &mut cursor)?;
    let rows = crate::image::ppm::read_header_number(bytes, &mut cursor)?;
    match bytes.get(cursor) {
        Some(b) if b.is_ascii_whitespace() => cursor += 1,
        _ => return Err(Error::format("missing whitespace after PBM header")),
    }
    if rows == 0 || cols == 0 {
        return Err(Error::format("payload dimensions must be positive"));
    }
    let stride = cols.div_ceil(8);
    let need = rows * stride;
    let payload = &bytes[cursor..];
    if payload.len() < need {
        return Err(Error::format(format!(
            "truncated PBM payload: need {need} bytes, found {}",
            payload.len()
        )));
    }
    BitMatrix::from_fn(rows, cols, |r, c| {
        payload[r * stride + c / 8] & (0x80 >> (c % 8)) != 0
    })
}

fn parse_p1(bytes: &[u8]) -> Result<BitMatrix> {
    let mut cursor = 2usize;
    let cols = crate::image::ppm::read_header_number(bytes, &mut cursor)?;
    let rows = crate::image::ppm::read_header_number(bytes, &mut cursor)?;
    if rows == 0 || cols == 0 {
        return Err(Error::format("payload dimensions must be positive"));
    }
    let mut bits = Vec::with_capacity(rows * cols);
    while let Some(&b) = bytes.get(cursor) {
        cursor += 1;
        match b {
            b'0' => bits.push(false),
            b'1' => bits.push(true),
            b'#' => {
                while let Some(&b) = bytes.get(cursor) {
                    cursor += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            }
            b if b.is_ascii_whitespace() => {}
            b => return Err(Error::format(format!("unexpected byte {b:#04x} in P1 payload"))),
        }
    }
    if bits.len() != rows * cols {
        return Err(Error::format(format!(
            "P1 payload holds {} bits, expected {}",
            bits.len(),
            rows * cols
        )));
    }
    BitMatrix::from_bits(rows, cols, bits)
}

fn parse_ascii(bytes: &[u8]) -> Result<BitMatrix> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::format("payload is not text"))?;
    let mut grid: Vec<Vec<bool>> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for ch in line.chars() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                c if c.is_whitespace() => {}
                c => return Err(Error::format(format!("unexpected character {c:?} in bit grid"))),
            }
        }
        if !row.is_empty() {
            grid.push(row);
        }
    }
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::format("empty bit grid"));
    }
    if grid.iter().any(|row| row.len() != cols) {
        return Err(Error::format("ragged bit grid rows"));
    }
    BitMatrix::from_bits(rows, cols, grid.into_iter().flatten().collect())
}

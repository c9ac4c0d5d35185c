//! The three quality measures: PSNR, BER and normalized cross-correlation.

use crate::error::{Error, Result};
use crate::image::bits::BitMatrix;
use crate::image::RgbImage;
use crate::RealMat;

/// Peak signal-to-noise ratio in dB between two images with channel peak 1:
/// `10·log10(3MN / ‖a−b‖²)`. Identical images return `+∞`.
pub fn psnr(a: &RgbImage, b: &RgbImage) -> Result<f64> {
    let err = a.dist_sq(b)?;
    let signal = 3.0 * a.height() as f64 * a.width() as f64;
    if err == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (signal / err).log10())
}

/// Bit error rate: Hamming distance over payload size.
pub fn ber(w: &BitMatrix, w_star: &BitMatrix) -> Result<f64> {
    let wrong = w.hamming(w_star)?;
    Ok(wrong as f64 / w.len() as f64)
}

/// Un-centered normalized cross-correlation `Σxy / √(Σx²·Σy²)`, in
/// `[−1, 1]`. Either argument having zero norm is an error.
pub fn ncc(x: &RealMat, y: &RealMat) -> Result<f64> {
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::shape(format!(
            "correlation dimensions differ: {}×{} vs {}×{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    let mut xy = 0.0;
    let mut xx = 0.0;
    let mut yy = 0.0;
    for r in 0..x.rows() {
        for c in 0..x.cols() {
            let (a, b) = (x.get(r, c), y.get(r, c));
            xy += a * b;
            xx += a * a;
            yy += b * b;
        }
    }
    if xx == 0.0 || yy == 0.0 {
        return Err(Error::ZeroNorm("normalized cross-correlation input"));
    }
    Ok(xy / (xx * yy).sqrt())
}

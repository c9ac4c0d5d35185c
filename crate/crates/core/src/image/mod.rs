//! RGB images, their pure-quaternion encoding, and block partitioning.
//!
//! An image is three `[0, 1]`-valued channel planes. The watermarking
//! pipeline views it as a pure quaternion matrix — red on the `i` plane,
//! green on `j`, blue on `k` — cut into non-overlapping 4×4 blocks.
//!
//! Submodules: [`ppm`] (binary P6 I/O), [`bits`] (binary payload matrices
//! and PBM I/O), [`blocks`] (block grids), [`metrics`] (PSNR / BER / NC),
//! and [`synth`] (deterministic procedural test images).

pub mod bits;
pub mod blocks;
pub mod metrics;
pub mod ppm;
pub mod synth;

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::QuatMat;

/// An RGB image with channel values in `[0, 1]`, stored as three planes in
/// row-major order. `height` is the number of rows, `width` the number of
/// columns.
#[derive(Clone, Debug, PartialEq)]
pub struct RgbImage {
    height: usize,
    width: usize,
    planes: [Vec<f64>; 3],
}

impl RgbImage {
    /// An all-black image.
    pub fn new(height: usize, width: usize) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::shape("image dimensions must be positive"));
        }
        let plane = vec![0.0; height * width];
        Ok(Self { height, width, planes: [plane.clone(), plane.clone(), plane] })
    }

    /// Builds an image from a per-pixel function returning `[r, g, b]`.
    /// Values are clamped into `[0, 1]`.
    pub fn from_fn(
        height: usize,
        width: usize,
        mut f: impl FnMut(usize, usize) -> [f64; 3],
    ) -> Result<Self> {
        let mut img = Self::new(height, width)?;
        for row in 0..height {
            for col in 0..width {
                img.set(row, col, f(row, col));
            }
        }
        Ok(img)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    fn idx(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.height && col < self.width);
        row * self.width + col
    }

    /// The `[r, g, b]` triple at `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> [f64; 3] {
        let i = self.idx(row, col);
        [self.planes[0][i], self.planes[1][i], self.planes[2][i]]
    }

    /// Writes a pixel, clamping each channel into `[0, 1]`.
    #[inline]
    pub fn set(&mut self, row: usize, col: usize, rgb: [f64; 3]) {
        let i = self.idx(row, col);
        for (plane, v) in self.planes.iter_mut().zip(rgb) {
            plane[i] = v.clamp(0.0, 1.0);
        }
    }

    /// One channel plane (0 = red, 1 = green, 2 = blue), row-major.
    pub fn plane(&self, channel: usize) -> &[f64] {
        &self.planes[channel]
    }

    /// Replaces one channel plane. The data must already be clamped.
    pub(crate) fn set_plane(&mut self, channel: usize, data: Vec<f64>) {
        debug_assert_eq!(data.len(), self.height * self.width);
        self.planes[channel] = data;
    }

    /// Squared Frobenius distance summed over all three channels.
    pub fn dist_sq(&self, other: &Self) -> Result<f64> {
        if self.height != other.height || self.width != other.width {
            return Err(Error::shape(format!(
                "image dimensions differ: {}×{} vs {}×{}",
                self.height, self.width, other.height, other.width
            )));
        }
        let mut sum = 0.0;
        for (a, b) in self.planes.iter().zip(&other.planes) {
            sum += a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
        }
        Ok(sum)
    }
}

/// Encodes an image as a pure quaternion matrix: `R` on the `i` plane, `G`
/// on `j`, `B` on `k`, real plane zero.
pub fn encode_quaternion(img: &RgbImage) -> QuatMat {
    QuatMat::from_fn(img.height(), img.width(), |r, c| {
        let [red, green, blue] = img.get(r, c);
        Quaternion::new(0.0, red, green, blue)
    })
}

/// Decodes a quaternion matrix back to an image. The real plane is
/// discarded and channels are clamped into `[0, 1]`.
pub fn decode_quaternion(q: &QuatMat) -> Result<RgbImage> {
    if q.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    RgbImage::from_fn(q.rows(), q.cols(), |r, c| {
        let v = q.get(r, c);
        [v.x, v.y, v.z]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_puts_channels_on_the_imaginary_planes() {
        let img = RgbImage::from_fn(2, 3, |r, c| [1.0, r as f64 / 4.0, c as f64 / 4.0]).unwrap();
        let q = encode_quaternion(&img);
        assert_eq!(q.rows(), 2);
        assert_eq!(q.cols(), 3);
        for r in 0..2 {
            for c in 0..3 {
                let v = q.get(r, c);
                assert_eq!(v.w, 0.0);
                assert_eq!(v.x, 1.0);
                assert_eq!(v.y, r as f64 / 4.0);
                assert_eq!(v.z, c as f64 / 4.0);
            }
        }
    }

    #[test]
    fn decode_is_the_exact_inverse_on_pure_matrices() {
        let img = RgbImage::from_fn(5, 4, |r, c| {
            [(r * 7 % 11) as f64 / 10.0, (c * 3 % 7) as f64 / 6.0, 0.25]
        })
        .unwrap();
        let back = decode_quaternion(&encode_quaternion(&img)).unwrap();
        assert_eq!(img, back);
    }

    #[test]
    fn decode_ignores_the_real_plane() {
        let mut q = QuatMat::zeros(2, 2);
        q.set(0, 0, Quaternion::new(0.7, 0.1, 0.2, 0.3));
        q.set(1, 1, Quaternion::new(-0.4, 0.5, 0.6, 0.9));
        let with_real = decode_quaternion(&q).unwrap();
        let mut zeroed = q.clone();
        for r in 0..2 {
            for c in 0..2 {
                let mut v = zeroed.get(r, c);
                v.w = 0.0;
                zeroed.set(r, c, v);
            }
        }
        assert_eq!(with_real, decode_quaternion(&zeroed).unwrap());
    }

    #[test]
    fn set_clamps_out_of_range_values() {
        let mut img = RgbImage::new(1, 1).unwrap();
        img.set(0, 0, [1.5, -0.25, 0.5]);
        assert_eq!(img.get(0, 0), [1.0, 0.0, 0.5]);
    }

    #[test]
    fn empty_dimensions_are_rejected() {
        assert!(RgbImage::new(0, 4).is_err());
        assert!(RgbImage::new(4, 0).is_err());
    }
}

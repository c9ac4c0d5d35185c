//! First-column coefficient statistics over an image's 4×4 blocks.
//!
//! Factoring every block collects, for each imaginary plane and each row
//! index `x`, the grid-shaped matrix of coefficients `(u_{x1})` — the
//! plane's component of the `x`-th entry of the first left singular
//! vector. The normalized cross-correlation between two such matrices
//! measures how tightly the corresponding coefficient pair is coupled
//! across the image; the (u21, u31) pair is the most correlated one on
//! photographic content, which is why it carries the watermark.
//!
//! Rank-deficient blocks (second singular value negligible against the
//! first) have ill-defined trailing singular vectors and excluded
//! coefficients; they are flagged and skipped by the correlation sums.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::blocks::partition;
use crate::image::{encode_quaternion, RgbImage};
use crate::qsvd::qsvd;
use crate::RealMat;

/// Plane labels in component order.
pub const PLANE_NAMES: [&str; 3] = ["i", "j", "k"];

/// The six index pairs `(x, y)`, 1-based, in reporting order.
pub const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Relative gap under which a block counts as rank-deficient.
const RANK_TOL: f64 = 1e-9;

/// Coefficient matrices and pair correlations for one image.
#[derive(Clone, Debug)]
pub struct PairStats {
    grid_rows: usize,
    grid_cols: usize,
    /// `coeffs[plane][x-1]`: grid-shaped matrix of `(u_{x1})` components.
    coeffs: [[RealMat; 4]; 3],
    /// Grid coordinates of rank-deficient blocks (excluded from sums).
    degenerate: Vec<(usize, usize)>,
    usable: Vec<bool>,
}

impl PairStats {
    pub fn grid_dims(&self) -> (usize, usize) {
        (self.grid_rows, self.grid_cols)
    }

    /// The grid-shaped coefficient matrix `U^plane_x` (plane 0..=2 for
    /// i/j/k, `x` 1-based). Degenerate blocks hold zero.
    pub fn coefficients(&self, plane: usize, x: usize) -> &RealMat {
        &self.coeffs[plane][x - 1]
    }

    pub fn degenerate_blocks(&self) -> &[(usize, usize)] {
        &self.degenerate
    }

    pub fn usable_count(&self) -> usize {
        self.usable.iter().filter(|&&u| u).count()
    }

    /// NC between `u_{x1}` and `u_{y1}` on one plane, over usable blocks.
    /// `None` when no usable block exists or a side has zero norm.
    pub fn nc(&self, plane: usize, x: usize, y: usize) -> Option<f64> {
        assert!((1..=4).contains(&x) && (1..=4).contains(&y) && x != y, "bad pair ({x},{y})");
        let a = &self.coeffs[plane][x - 1];
        let b = &self.coeffs[plane][y - 1];
        let (mut xy, mut xx, mut yy) = (0.0, 0.0, 0.0);
        for gr in 0..self.grid_rows {
            for gc in 0..self.grid_cols {
                if !self.usable[gr * self.grid_cols + gc] {
                    continue;
                }
                let (p, q) = (a.get(gr, gc), b.get(gr, gc));
                xy += p * q;
                xx += p * p;
                yy += q * q;
            }
        }
        if xx == 0.0 || yy == 0.0 {
            return None;
        }
        Some(xy / (xx * yy).sqrt())
    }

    /// The full 3×6 correlation table in reporting order; `None` entries
    /// where undefined.
    pub fn nc_table(&self) -> [[Option<f64>; 6]; 3] {
        let mut table = [[None; 6]; 3];
        for (plane, row) in table.iter_mut().enumerate() {
            for (slot, &(x, y)) in PAIRS.iter().enumerate() {
                row[slot] = self.nc(plane, x, y);
            }
        }
        table
    }

    /// Serializes the table as CSV: `plane,pair,nc` rows in reporting
    /// order, `nan` for undefined entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("plane,first,second,nc\n");
        let table = self.nc_table();
        for (plane, row) in table.iter().enumerate() {
            for (slot, &(x, y)) in PAIRS.iter().enumerate() {
                let value = row[slot].map_or("nan".to_string(), |v| format!("{v:.6}"));
                out.push_str(&format!("{},u{}1,u{}1,{}\n", PLANE_NAMES[plane], x, y, value));
            }
        }
        out
    }
}

/// Factors every 4×4 block of `img` and collects first-column coefficient
/// statistics. Blocks are processed in parallel; the result is
/// deterministic because each block's factorization is independent.
pub fn analyze_pairs(img: &RgbImage) -> Result<PairStats> {
    let grid = partition(&encode_quaternion(img), 4)?;
    if grid.is_empty() {
        return Err(Error::shape("image has no complete 4×4 block"));
    }
    let (grid_rows, grid_cols) = (grid.grid_rows(), grid.grid_cols());
    let total = grid_rows * grid_cols;

    let per_block: Vec<Result<([[f64; 4]; 3], bool)>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let block = grid.block(idx / grid_cols, idx % grid_cols);
            let f = qsvd(block)?;
            let usable = f.singular[1] > RANK_TOL * f.singular[0];
            let mut entry = [[0.0; 4]; 3];
            for x in 0..4 {
                let u = f.u.get(x, 0);
                entry[0][x] = u.x;
                entry[1][x] = u.y;
                entry[2][x] = u.z;
            }
            Ok((entry, usable))
        })
        .collect();

    let mut coeffs: [[RealMat; 4]; 3] = std::array::from_fn(|_| {
        std::array::from_fn(|_| RealMat::zeros(grid_rows, grid_cols))
    });
    let mut usable = vec![false; total];
    let mut degenerate = Vec::new();
    for (idx, item) in per_block.into_iter().enumerate() {
        let (entry, ok) = item?;
        let (gr, gc) = (idx / grid_cols, idx % grid_cols);
        usable[idx] = ok;
        if !ok {
            degenerate.push((gr, gc));
            continue;
        }
        for plane in 0..3 {
            for x in 0..4 {
                coeffs[plane][x].set(gr, gc, entry[plane][x]);
            }
        }
    }

    Ok(PairStats { grid_rows, grid_cols, coeffs, degenerate, usable })
}

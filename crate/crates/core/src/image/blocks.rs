//! Partitioning a quaternion matrix into non-overlapping square blocks.
//!
//! The grid is row-major. Inputs whose dimensions are not multiples of the
//! block edge are cropped at the bottom/right; the source dimensions are
//! retained so callers can paste the reassembled region back over the
//! original.

use crate::error::{Error, Result};
use crate::QuatMat;

/// A grid of `edge×edge` quaternion blocks cut from a larger matrix.
#[derive(Clone, Debug)]
pub struct BlockGrid {
    edge: usize,
    grid_rows: usize,
    grid_cols: usize,
    source_rows: usize,
    source_cols: usize,
    blocks: Vec<QuatMat>,
}

impl BlockGrid {
    pub fn edge(&self) -> usize {
        self.edge
    }

    /// Grid dimensions in blocks.
    pub fn grid_rows(&self) -> usize {
        self.grid_rows
    }

    pub fn grid_cols(&self) -> usize {
        self.grid_cols
    }

    /// Dimensions of the matrix the grid was cut from, before cropping.
    pub fn source_dims(&self) -> (usize, usize) {
        (self.source_rows, self.source_cols)
    }

    /// Dimensions covered by the grid (`grid · edge`).
    pub fn covered_dims(&self) -> (usize, usize) {
        (self.grid_rows * self.edge, self.grid_cols * self.edge)
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, grid_row: usize, grid_col: usize) -> &QuatMat {
        &self.blocks[grid_row * self.grid_cols + grid_col]
    }

    pub fn block_mut(&mut self, grid_row: usize, grid_col: usize) -> &mut QuatMat {
        &mut self.blocks[grid_row * self.grid_cols + grid_col]
    }

    /// Stitches the blocks back into one matrix of [`Self::covered_dims`].
    pub fn reassemble(&self) -> QuatMat {
        let (rows, cols) = self.covered_dims();
        QuatMat::from_fn(rows, cols, |r, c| {
            self.block(r / self.edge, c / self.edge).get(r % self.edge, c % self.edge)
        })
    }
}

/// Cuts `q` into non-overlapping `edge×edge` blocks, cropping any
/// bottom/right remainder.
pub fn partition(q: &QuatMat, edge: usize) -> Result<BlockGrid> {
    if edge == 0 {
        return Err(Error::shape("block edge must be positive"));
    }
    if q.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let grid_rows = q.rows() / edge;
    let grid_cols = q.cols() / edge;
    let mut blocks = Vec::with_capacity(grid_rows * grid_cols);
    for gr in 0..grid_rows {
        for gc in 0..grid_cols {
            blocks.push(QuatMat::from_fn(edge, edge, |r, c| {
                q.get(gr * edge + r, gc * edge + c)
            }));
        }
    }
    Ok(BlockGrid {
        edge,
        grid_rows,
        grid_cols,
        source_rows: q.rows(),
        source_cols: q.cols(),
        blocks,
    })
}

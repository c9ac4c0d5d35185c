//! Compact real counterpart forms.
//!
//! The full 4m×4n counterpart is redundant: one block column (or block row)
//! determines the rest. The compact column form of an m×n quaternion matrix
//! is the 4m×n real matrix `[Q0; −Q2; −Q1; −Q3]`; the compact row form is
//! the m×4n real matrix `[Q0, Q2, Q1, Q3]`. Round trips are bit-identical
//! because the only arithmetic involved is sign flipping.

use crate::error::{Error, Result};
use crate::qmatrix::QuatMatrix;
use crate::scalar::Scalar;

/// Which block slice of the full counterpart is stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompactLayout {
    /// First block column: 4m×n, blocks `[Q0; −Q2; −Q1; −Q3]`.
    Column,
    /// First block row: m×4n, blocks `[Q0, Q2, Q1, Q3]`.
    Row,
}

/// A compact real counterpart with its provenance dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactReal<T> {
    layout: CompactLayout,
    /// Rows of the originating quaternion matrix.
    q_rows: usize,
    /// Columns of the originating quaternion matrix.
    q_cols: usize,
    /// Row-major real data of the compact matrix.
    data: Vec<T>,
}

/// Block order and signs per layout: `(plane, negated)` for blocks 0..4.
/// Plane indices follow `QuatMatrix`: 0 = real, 1 = i, 2 = j, 3 = k.
const COLUMN_BLOCKS: [(usize, bool); 4] = [(0, false), (2, true), (1, true), (3, true)];
const ROW_BLOCKS: [(usize, bool); 4] = [(0, false), (2, false), (1, false), (3, false)];

impl<T: Scalar> CompactReal<T> {
    /// Encodes a quaternion matrix.
    pub fn from_quat(q: &QuatMatrix<T>, layout: CompactLayout) -> Self {
        let (m, n) = (q.rows(), q.cols());
        let mut data = Vec::with_capacity(4 * m * n);
        match layout {
            CompactLayout::Column => {
                for &(plane, neg) in &COLUMN_BLOCKS {
                    let p = q.plane(plane);
                    data.extend(p.iter().map(|&v| if neg { -v } else { v }));
                }
            }
            CompactLayout::Row => {
                for r in 0..m {
                    for &(plane, neg) in &ROW_BLOCKS {
                        let p = &q.plane(plane)[r * n..(r + 1) * n];
                        data.extend(p.iter().map(|&v| if neg { -v } else { v }));
                    }
                }
            }
        }
        Self {
            layout,
            q_rows: m,
            q_cols: n,
            data,
        }
    }

    /// Wraps raw compact data, validating that the real dimensions are
    /// divisible into four blocks along the stacked axis.
    pub fn from_parts(
        layout: CompactLayout,
        real_rows: usize,
        real_cols: usize,
        data: Vec<T>,
    ) -> Result<Self> {
        if data.len() != real_rows * real_cols {
            return Err(Error::shape(format!(
                "compact data holds {} entries, expected {real_rows}×{real_cols}",
                data.len()
            )));
        }
        let (q_rows, q_cols) = match layout {
            CompactLayout::Column => {
                if real_rows % 4 != 0 {
                    return Err(Error::shape(format!(
                        "compact column form needs 4·m rows, got {real_rows}"
                    )));
                }
                (real_rows / 4, real_cols)
            }
            CompactLayout::Row => {
                if real_cols % 4 != 0 {
                    return Err(Error::shape(format!(
                        "compact row form needs 4·n columns, got {real_cols}"
                    )));
                }
                (real_rows, real_cols / 4)
            }
        };
        Ok(Self {
            layout,
            q_rows,
            q_cols,
            data,
        })
    }

    pub fn layout(&self) -> CompactLayout {
        self.layout
    }

    /// Rows of the real compact matrix.
    pub fn real_rows(&self) -> usize {
        match self.layout {
            CompactLayout::Column => 4 * self.q_rows,
            CompactLayout::Row => self.q_rows,
        }
    }

    /// Columns of the real compact matrix.
    pub fn real_cols(&self) -> usize {
        match self.layout {
            CompactLayout::Column => self.q_cols,
            CompactLayout::Row => 4 * self.q_cols,
        }
    }

    /// Row-major real entries.
    pub fn data(&self) -> &[T] {
        &self.data
    }

    /// Decodes back to the quaternion matrix; bit-identical with
    /// [`from_quat`](Self::from_quat).
    pub fn to_quat(&self) -> QuatMatrix<T> {
        let (m, n) = (self.q_rows, self.q_cols);
        let mut planes: [Vec<T>; 4] = [
            vec![T::zero(); m * n],
            vec![T::zero(); m * n],
            vec![T::zero(); m * n],
            vec![T::zero(); m * n],
        ];
        match self.layout {
            CompactLayout::Column => {
                for (block, &(plane, neg)) in COLUMN_BLOCKS.iter().enumerate() {
                    let src = &self.data[block * m * n..(block + 1) * m * n];
                    for (dst, &v) in planes[plane].iter_mut().zip(src) {
                        *dst = if neg { -v } else { v };
                    }
                }
            }
            CompactLayout::Row => {
                for r in 0..m {
                    for (block, &(plane, neg)) in ROW_BLOCKS.iter().enumerate() {
                        let base = r * 4 * n + block * n;
                        for c in 0..n {
                            let v = self.data[base + c];
                            planes[plane][r * n + c] = if neg { -v } else { v };
                        }
                    }
                }
            }
        }
        QuatMatrix::from_planes(m, n, planes).expect("compact decode preserves shape")
    }
}

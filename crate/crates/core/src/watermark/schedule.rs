//! Keyed pseudorandom block visitation order.
//!
//! The embedder and extractor walk the block grid in the same secret order,
//! derived from a 64-bit key: a Fisher–Yates shuffle of all block
//! coordinates driven by the portable splitmix64 stream. Spreading the
//! payload over the whole image this way is what limits the damage of a
//! localized attack (cropping in particular) to the bits that actually
//! lived there.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// The first `count` coordinates `(grid_row, grid_col)` of the keyed
/// permutation of an entire `grid_rows×grid_cols` grid.
///
/// The permutation is a Fisher–Yates shuffle of the row-major coordinate
/// list, swapping positions `i = n−1 … 1` with `j = next_below(i+1)`; the
/// modulo reduction in `next_below` is part of the documented stream
/// contract.
pub fn key_schedule(
    key: u64,
    grid_rows: usize,
    grid_cols: usize,
    count: usize,
) -> Result<Vec<(usize, usize)>> {
    let total = grid_rows * grid_cols;
    if count > total {
        return Err(Error::Capacity { required: count, available: total });
    }
    let mut coords: Vec<(usize, usize)> = (0..total)
        .map(|i| (i / grid_cols.max(1), i % grid_cols.max(1)))
        .collect();
    let mut rng = SplitMix64::new(key);
    for i in (1..total).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        coords.swap(i, j);
    }
    coords.truncate(count);
    Ok(coords)
}

//! Scaling benchmark for the quaternion SVD.
//!
//! Runs the full factorization on a family of random matrices of shape
//! `ak×bk` for `k = 1..=k_max` and reports, per size: wall time, the
//! operation-ledger totals of the bidiagonal reduction, and the
//! factorization residual. The reduction's flop count should track
//! `64·(mn² − n³/3)` — the meter is taken from a reduction-only pass
//! (no accumulation), which is what that growth law describes.

use std::time::Instant;

use crate::bidiag::{bidiagonalize, BidiagOptions};
use crate::error::{Error, Result};
use crate::qmatrix::QuatMatrix;
use crate::qsvd::qsvd;
use crate::quat::Quaternion;
use crate::rng::{mix64, SplitMix64};

/// One line of the benchmark report.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    /// Best-of-`trials` wall time of the full factorization.
    pub wall_ns: u128,
    /// Real flops charged by the bidiagonal reduction (no accumulation).
    pub flops: u64,
    /// Assignments charged by the bidiagonal reduction (no accumulation).
    pub assignments: u64,
    /// `‖Q − U·Σ·Vᴴ‖_F` of the timed factorization.
    pub residual: f64,
}

/// The closed-form flop growth law for an `m×n` reduction.
pub fn reduction_flops_estimate(m: usize, n: usize) -> f64 {
    let (m, n) = (m as f64, n as f64);
    64.0 * (m * n * n - n * n * n / 3.0)
}

fn random_matrix(m: usize, n: usize, seed: u64) -> QuatMatrix<f64> {
    let mut r = SplitMix64::new(seed);
    QuatMatrix::from_fn(m, n, |_, _| {
        Quaternion::new(
            r.next_f64() * 2.0 - 1.0,
            r.next_f64() * 2.0 - 1.0,
            r.next_f64() * 2.0 - 1.0,
            r.next_f64() * 2.0 - 1.0,
        )
    })
}

/// Benchmarks the factorization on `ak×bk` matrices for `k = 1..=k_max`.
///
/// Matrices are seeded deterministically from `(a, b, k)`, so the numeric
/// columns of the report are reproducible; only `wall_ns` varies run to run.
pub fn bench_qsvd(a: usize, b: usize, k_max: usize, trials: usize) -> Result<Vec<BenchRow>> {
    if a == 0 || b == 0 || k_max == 0 {
        return Err(Error::format("bench sizes a, b and kmax must all be positive"));
    }
    let trials = trials.max(1);
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let (m, n) = (a * k, b * k);
        let seed = mix64((a as u64) << 42 ^ (b as u64) << 21 ^ k as u64);
        let q = random_matrix(m, n, seed);

        // Meter the reduction alone; the growth law speaks about it.
        let meter = if m >= n {
            bidiagonalize(&q, BidiagOptions { substitute_givens: true, accumulate: false })?
        } else {
            bidiagonalize(&q.conj_transpose(), BidiagOptions { substitute_givens: true, accumulate: false })?
        };

        let mut best = u128::MAX;
        let mut residual = 0.0f64;
        for trial in 0..trials {
            let start = Instant::now();
            let f = qsvd(&q)?;
            let elapsed = start.elapsed().as_nanos();
            best = best.min(elapsed);
            if trial == 0 {
                residual = f.residual(&q)?;
            }
        }

        rows.push(BenchRow {
            k,
            m,
            n,
            wall_ns: best,
            flops: meter.ledger.total_flops(),
            assignments: meter.ledger.total_assignments(),
            residual,
        });
    }
    Ok(rows)
}

/// Serializes rows as CSV with the fixed header.
pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("k,m,n,wall_ns,flops,assignments,residual\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{:.6e}\n",
            r.k, r.m, r.n, r.wall_ns, r.flops, r.assignments, r.residual
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn produces_one_row_per_size_with_small_residuals() {
        let rows = bench_qsvd(9, 6, 3, 1).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!((rows[0].m, rows[0].n), (9, 6));
        assert_eq!((rows[2].m, rows[2].n), (27, 18));
        for r in &rows {
            assert!(r.residual <= 1e-12, "residual {} at k={}", r.residual, r.k);
        }
    }

    #[test]
    fn flops_grow_strictly_with_k() {
        let rows = bench_qsvd(3, 2, 5, 1).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].flops > w[0].flops);
            assert!(w[1].assignments > w[0].assignments);
        }
    }

    #[test]
    fn reduction_flops_track_the_growth_law() {
        // The law describes the reduction; by k = 4 the lower-order terms
        // are inside 15% and keep shrinking.
        let rows = bench_qsvd(9, 6, 5, 1).unwrap();
        for r in rows.iter().filter(|r| r.k >= 4) {
            let want = reduction_flops_estimate(r.m, r.n);
            let ratio = r.flops as f64 / want;
            assert!((ratio - 1.0).abs() <= 0.15, "k={} ratio={ratio}", r.k);
        }
    }

    #[test]
    fn csv_has_the_fixed_header_and_row_shape() {
        let rows = bench_qsvd(2, 2, 2, 1).unwrap();
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("k,m,n,wall_ns,flops,assignments,residual"));
        let first = lines.next().unwrap();
        assert_eq!(first.split(',').count(), 7);
        assert!(first.starts_with("1,2,2,"));
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(bench_qsvd(0, 6, 1, 1).is_err());
        assert!(bench_qsvd(9, 0, 1, 1).is_err());
        assert!(bench_qsvd(9, 6, 0, 1).is_err());
    }
}

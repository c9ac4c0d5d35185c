//! Structure-preserving reduction of a quaternion matrix to a real
//! bidiagonal one.
//!
//! For a tall-or-square `m×n` input `Q` this produces unitary quaternion
//! `U` (m×m), `V` (n×n) and a *real* upper-bidiagonal band `B` with
//! `Q = U·B·Vᴴ`. All the quaternion arithmetic happens here; afterwards any
//! ordinary real bidiagonal SVD finishes the job.
//!
//! The sweep works column-by-column. At stage `s` a left transform clears
//! column `s` below the diagonal and leaves a real nonnegative diagonal
//! entry, then a right transform clears row `s` beyond the superdiagonal and
//! leaves a real nonnegative superdiagonal entry. Two of the 2×2 corner
//! cases can be handled by a generalized Givens transformation instead of a
//! full reflector, which is slightly cheaper; [`BidiagOptions::substitute_givens`]
//! toggles that so the saving can be measured.
//!
//! Columns or rows that are already in reduced form are skipped outright
//! (recorded in the ledger, nothing charged); a reduced segment whose pivot
//! still carries an imaginary part gets a zero-cost phase fix. Anything the
//! sweep decides is negligible — plus whatever off-band residue is left at
//! the end — is summed into [`Bidiagonal::dropped_norm`] so callers can
//! confirm nothing real was thrown away.

use crate::error::{Error, Result};
use crate::givens::make_givens;
use crate::householder::{make_householder, HouseholderKind};
use crate::ledger::{OpLedger, TransformKind};
use crate::qmatrix::QuatMatrix;
use crate::quat::Quaternion;
use crate::scalar::Scalar;

/// Knobs for [`bidiagonalize`].
#[derive(Clone, Copy, Debug)]
pub struct BidiagOptions {
    /// Use generalized Givens transformations at the two 2×2 corner sites
    /// (the final right transform, and the final left transform of a square
    /// input) instead of full reflectors.
    pub substitute_givens: bool,
    /// Accumulate the unitary factors. Cost benchmarks turn this off to
    /// meter the reduction itself.
    pub accumulate: bool,
}

impl Default for BidiagOptions {
    fn default() -> Self {
        Self { substitute_givens: true, accumulate: true }
    }
}

/// Result of [`bidiagonalize`]: `Q = U·B·Vᴴ` with real bidiagonal `B`.
#[derive(Clone, Debug)]
pub struct Bidiagonal<T> {
    pub rows: usize,
    pub cols: usize,
    /// Main diagonal of `B` (length `cols`).
    pub diag: Vec<T>,
    /// Superdiagonal of `B` (length `cols − 1`).
    pub superdiag: Vec<T>,
    /// Left unitary factor, present unless accumulation was disabled.
    pub u: Option<QuatMatrix<T>>,
    /// Right unitary factor, present unless accumulation was disabled.
    pub v: Option<QuatMatrix<T>>,
    /// Norm of everything discarded when reading off the real band:
    /// skipped negligible segments plus rounding residue. Should sit at
    /// the roundoff level of `‖Q‖`.
    pub dropped_norm: T,
    /// Operation counts for the whole reduction.
    pub ledger: OpLedger,
}

impl<T: Scalar> Bidiagonal<T> {
    /// The band as a (real-valued) quaternion matrix of the input shape.
    pub fn band_as_quat(&self) -> QuatMatrix<T> {
        let mut b = QuatMatrix::zeros(self.rows, self.cols);
        for (s, &d) in self.diag.iter().enumerate() {
            b.set(s, s, Quaternion::from_real(d));
        }
        for (s, &e) in self.superdiag.iter().enumerate() {
            b.set(s, s + 1, Quaternion::from_real(e));
        }
        b
    }
}

fn seg_norm<T: Scalar>(v: &[Quaternion<T>]) -> T {
    v.iter().map(|q| q.norm_sqr()).sum::<T>().sqrt()
}

/// Reduces a tall-or-square quaternion matrix to real bidiagonal form.
///
/// Inputs with more columns than rows are rejected; reduce the conjugate
/// transpose instead and swap the factors.
pub fn bidiagonalize<T: Scalar>(q: &QuatMatrix<T>, opts: BidiagOptions) -> Result<Bidiagonal<T>> {
    if q.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let (m, n) = (q.rows(), q.cols());
    if m < n {
        return Err(Error::shape(format!(
            "bidiagonalization needs rows >= cols, got {m}x{n}; reduce the conjugate transpose"
        )));
    }

    let mut c = q.clone();
    let mut u = if opts.accumulate { Some(QuatMatrix::identity(m)) } else { None };
    let mut v = if opts.accumulate { Some(QuatMatrix::identity(n)) } else { None };
    let mut ledger = OpLedger::new();
    let tol = T::of(16) * T::epsilon();

    for s in 0..n {
        // ── left transform: clear column s below the diagonal ──
        let left_len = m - s;
        if left_len == 1 {
            // Square corner: a bare phase makes the last diagonal entry real.
            let g = c.get(s, s).phase().conj();
            c.set(s, s, g * c.get(s, s));
            if let Some(u) = &mut u {
                u.scale_col_right(s, g.conj());
            }
            ledger.charge_phase();
        } else {
            let y: Vec<Quaternion<T>> = (s..m).map(|r| c.get(r, s)).collect();
            let colnorm = seg_norm(&y);
            let tailnorm = seg_norm(&y[1..]);
            if tailnorm <= tol * colnorm {
                // Already cleared; fix the pivot phase if it needs it.
                if y[0].imag_norm() > tol * colnorm {
                    let g = y[0].phase().conj();
                    for col in s..n {
                        c.set(s, col, g * c.get(s, col));
                    }
                    if let Some(u) = &mut u {
                        u.scale_col_right(s, g.conj());
                    }
                    ledger.charge_phase();
                }
                ledger.record_skip();
            } else if opts.substitute_givens && m == n && s == n - 2 {
                // 2×2 corner of a square sweep: Givens instead of a reflector.
                let g = make_givens(y[0], y[1], &mut ledger)?;
                ledger.charge_givens_pair();
                c.set(s, s, Quaternion::from_real(colnorm));
                c.set(s + 1, s, Quaternion::zero());
                for col in s + 1..n {
                    let (a, b) = g.apply_left_pair(c.get(s, col), c.get(s + 1, col), &mut ledger);
                    c.set(s, col, a);
                    c.set(s + 1, col, b);
                }
                if let Some(u) = &mut u {
                    for r in 0..m {
                        let (a, b) = g.apply_right_pair(u.get(r, s), u.get(r, s + 1), &mut ledger);
                        u.set(r, s, a);
                        u.set(r, s + 1, b);
                    }
                }
            } else {
                let h = make_householder(HouseholderKind::H3, &y, 0, &mut ledger);
                // The pivot column lands exactly on ‖y‖·e₁; bill it, set it.
                ledger.charge_householder_apply(TransformKind::H3, left_len);
                c.set(s, s, h.target());
                for r in s + 1..m {
                    c.set(r, s, Quaternion::zero());
                }
                let mut seg = vec![Quaternion::zero(); left_len];
                for col in s + 1..n {
                    for (k, r) in (s..m).enumerate() {
                        seg[k] = c.get(r, col);
                    }
                    h.apply_left(&mut seg, &mut ledger);
                    for (k, r) in (s..m).enumerate() {
                        c.set(r, col, seg[k]);
                    }
                }
                if let Some(u) = &mut u {
                    for r in 0..m {
                        for (k, col) in (s..m).enumerate() {
                            seg[k] = u.get(r, col);
                        }
                        h.apply_right(&mut seg, &mut ledger);
                        for (k, col) in (s..m).enumerate() {
                            u.set(r, col, seg[k]);
                        }
                    }
                }
            }
        }

        // ── right transform: clear row s beyond the superdiagonal ──
        if s + 2 > n {
            continue;
        }
        let right_len = n - s - 1;
        if right_len == 1 {
            // Only the superdiagonal entry remains: fix its phase.
            let g = c.get(s, s + 1).phase().conj();
            for r in s..m {
                c.set(r, s + 1, c.get(r, s + 1) * g);
            }
            if let Some(v) = &mut v {
                v.scale_col_right(s + 1, g);
            }
            ledger.charge_phase();
        } else {
            let x: Vec<Quaternion<T>> = (s + 1..n).map(|col| c.get(s, col)).collect();
            let rownorm = seg_norm(&x);
            let tailnorm = seg_norm(&x[1..]);
            if tailnorm <= tol * rownorm {
                if x[0].imag_norm() > tol * rownorm {
                    let g = x[0].phase().conj();
                    for r in s..m {
                        c.set(r, s + 1, c.get(r, s + 1) * g);
                    }
                    if let Some(v) = &mut v {
                        v.scale_col_right(s + 1, g);
                    }
                    ledger.charge_phase();
                }
                ledger.record_skip();
            } else if opts.substitute_givens && s + 3 == n {
                // Final 1×2 row segment: Givens built from the conjugated pair.
                let g = make_givens(x[0].conj(), x[1].conj(), &mut ledger)?;
                ledger.charge_givens_pair();
                c.set(s, s + 1, Quaternion::from_real(rownorm));
                c.set(s, s + 2, Quaternion::zero());
                for r in s + 1..m {
                    let (a, b) = g.apply_right_pair(c.get(r, s + 1), c.get(r, s + 2), &mut ledger);
                    c.set(r, s + 1, a);
                    c.set(r, s + 2, b);
                }
                if let Some(v) = &mut v {
                    for r in 0..n {
                        let (a, b) = g.apply_right_pair(v.get(r, s + 1), v.get(r, s + 2), &mut ledger);
                        v.set(r, s + 1, a);
                        v.set(r, s + 2, b);
                    }
                }
            } else {
                let conj: Vec<Quaternion<T>> = x.iter().map(|q| q.conj()).collect();
                let h = make_householder(HouseholderKind::H3, &conj, 0, &mut ledger);
                ledger.charge_householder_apply(TransformKind::H3, right_len);
                c.set(s, s + 1, h.target());
                for col in s + 2..n {
                    c.set(s, col, Quaternion::zero());
                }
                let mut seg = vec![Quaternion::zero(); right_len];
                for r in s + 1..m {
                    for (k, col) in (s + 1..n).enumerate() {
                        seg[k] = c.get(r, col);
                    }
                    h.apply_right(&mut seg, &mut ledger);
                    for (k, col) in (s + 1..n).enumerate() {
                        c.set(r, col, seg[k]);
                    }
                }
                if let Some(v) = &mut v {
                    for r in 0..n {
                        for (k, col) in (s + 1..n).enumerate() {
                            seg[k] = v.get(r, col);
                        }
                        h.apply_right(&mut seg, &mut ledger);
                        for (k, col) in (s + 1..n).enumerate() {
                            v.set(r, col, seg[k]);
                        }
                    }
                }
            }
        }
    }

    // ── read off the real band; everything else is the dropped residue ──
    let mut diag = vec![T::zero(); n];
    let mut superdiag = vec![T::zero(); n.saturating_sub(1)];
    let mut dropped_sq = T::zero();
    for r in 0..m {
        for col in 0..n {
            let q = c.get(r, col);
            if col == r {
                diag[r] = q.w;
                let im = q.imag_norm();
                dropped_sq += im * im;
            } else if col == r + 1 {
                superdiag[r] = q.w;
                let im = q.imag_norm();
                dropped_sq += im * im;
            } else {
                dropped_sq += q.norm_sqr();
            }
        }
    }

    Ok(Bidiagonal {
        rows: m,
        cols: n,
        diag,
        superdiag,
        u,
        v,
        dropped_norm: dropped_sq.sqrt(),
        ledger,
    })
}

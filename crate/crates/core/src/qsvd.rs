//! Singular value decomposition of quaternion matrices.
//!
//! `Q = U · Σ · Vᴴ` with unitary quaternion `U` (m×m), `V` (n×n) and real
//! nonnegative `Σ` sorted descending. The computation never leaves the
//! quaternion domain for the reduction itself: a structure-preserving
//! sweep produces a *real* bidiagonal band plus quaternion unitaries
//! ([`crate::bidiag`]), and ordinary real plane rotations finish the band
//! off ([`crate::realsvd`]). The operation ledger covers the quaternion
//! reduction — the real iteration is outside the transform cost model.
//!
//! Singular vectors are only unique up to a unit factor per column. To make
//! downstream consumers reproducible, columns are canonicalized by a ±1
//! sign: the largest-magnitude component of the first non-negligible entry
//! of each `U` column is made nonnegative, flipping the paired `V` column to
//! compensate. A sign never mixes component planes, so plane-wise statistics
//! of the factors stay meaningful.

use crate::bidiag::{bidiagonalize, BidiagOptions};
use crate::error::Result;
use crate::ledger::OpLedger;
use crate::qmatrix::QuatMatrix;
use crate::quat::Quaternion;
use crate::realsvd::bidiagonal_svd;
use crate::rmatrix::RealMatrix;
use crate::scalar::Scalar;

/// Knobs for [`qsvd_with`].
#[derive(Clone, Copy, Debug)]
pub struct QsvdOptions {
    /// Forwarded to the bidiagonal reduction; see
    /// [`BidiagOptions::substitute_givens`].
    pub substitute_givens: bool,
}

impl Default for QsvdOptions {
    fn default() -> Self {
        Self { substitute_givens: true }
    }
}

/// The factors of a quaternion SVD.
#[derive(Clone, Debug)]
pub struct QsvdFactors<T> {
    /// Left unitary factor, m×m.
    pub u: QuatMatrix<T>,
    /// Singular values, length `min(m, n)`, nonnegative, descending.
    pub singular: Vec<T>,
    /// Right unitary factor, n×n.
    pub v: QuatMatrix<T>,
    /// Operation counts of the quaternion reduction.
    pub ledger: OpLedger,
    /// Norm of what the reduction dropped as negligible; roundoff-sized.
    pub dropped_norm: T,
    rows: usize,
    cols: usize,
}

/// Computes the SVD of a quaternion matrix with default options.
pub fn qsvd<T: Scalar>(q: &QuatMatrix<T>) -> Result<QsvdFactors<T>> {
    qsvd_with(q, QsvdOptions::default())
}

/// Computes the SVD of a quaternion matrix of any shape.
pub fn qsvd_with<T: Scalar>(q: &QuatMatrix<T>, opts: QsvdOptions) -> Result<QsvdFactors<T>> {
    let mut f = if q.rows() < q.cols() {
        // Factor the conjugate transpose and swap the unitaries.
        let t = qsvd_tall(&q.conj_transpose(), opts)?;
        QsvdFactors {
            u: t.v,
            singular: t.singular,
            v: t.u,
            ledger: t.ledger,
            dropped_norm: t.dropped_norm,
            rows: q.rows(),
            cols: q.cols(),
        }
    } else {
        qsvd_tall(q, opts)?
    };
    canonicalize_signs(&mut f.u, &mut f.v);
    Ok(f)
}

fn qsvd_tall<T: Scalar>(q: &QuatMatrix<T>, opts: QsvdOptions) -> Result<QsvdFactors<T>> {
    let (m, n) = (q.rows(), q.cols());
    let bd = bidiagonalize(
        q,
        BidiagOptions { substitute_givens: opts.substitute_givens, accumulate: true },
    )?;
    let rs = bidiagonal_svd(&bd.diag, &bd.superdiag)?;

    // B is m×n with only its top n×n block occupied, so the real left factor
    // acts on the first n columns of the accumulated U and leaves the rest.
    let mut u_embed = RealMatrix::identity(m);
    for r in 0..n {
        for c in 0..n {
            u_embed.set(r, c, rs.u.get(r, c));
        }
    }
    let u = bd.u.as_ref().unwrap().mul_real(&u_embed)?;
    let v = bd.v.as_ref().unwrap().mul_real(&rs.v)?;

    Ok(QsvdFactors {
        u,
        singular: rs.singular,
        v,
        ledger: bd.ledger,
        dropped_norm: bd.dropped_norm,
        rows: m,
        cols: n,
    })
}

/// Flips column signs so each `U` column leads with a nonnegative component.
///
/// For column `j`, the first entry with non-negligible norm is examined and
/// the whole column is negated if that entry's largest-magnitude component
/// is negative. Paired `V` columns (`j < min(m,n)`) flip along so the
/// product `U·Σ·Vᴴ` is untouched; the remaining null-space columns of the
/// wider factor are flipped alone.
fn canonicalize_signs<T: Scalar>(u: &mut QuatMatrix<T>, v: &mut QuatMatrix<T>) {
    let paired = u.cols().min(v.cols());
    for j in 0..u.cols() {
        if column_wants_flip(u, j) {
            u.negate_col(j);
            if j < paired {
                v.negate_col(j);
            }
        }
    }
    for j in paired..v.cols() {
        if column_wants_flip(v, j) {
            v.negate_col(j);
        }
    }
}

fn column_wants_flip<T: Scalar>(m: &QuatMatrix<T>, j: usize) -> bool {
    let tol = T::of(16) * T::epsilon();
    for r in 0..m.rows() {
        let q = m.get(r, j);
        if q.norm() > tol {
            let mut lead = q.component(0);
            for p in 1..4 {
                if q.component(p).abs() > lead.abs() {
                    lead = q.component(p);
                }
            }
            return lead < T::zero();
        }
    }
    false
}

impl<T: Scalar> QsvdFactors<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `Σ` as a (real-valued) quaternion matrix of the original shape.
    pub fn sigma_as_quat(&self) -> QuatMatrix<T> {
        let mut s = QuatMatrix::zeros(self.rows, self.cols);
        for (i, &x) in self.singular.iter().enumerate() {
            s.set(i, i, Quaternion::from_real(x));
        }
        s
    }

    /// `‖U·Σ·Vᴴ − Q‖_F` against the original matrix.
    pub fn residual(&self, q: &QuatMatrix<T>) -> Result<T> {
        let recon = self.u.mul(&self.sigma_as_quat())?.mul(&self.v.conj_transpose())?;
        Ok(recon.sub(q)?.frob_norm())
    }

    /// `max(‖UᴴU − I‖_F, ‖VᴴV − I‖_F)`.
    pub fn unitarity_error(&self) -> T {
        let eu = gram_defect(&self.u);
        let ev = gram_defect(&self.v);
        eu.max(ev)
    }
}

fn gram_defect<T: Scalar>(m: &QuatMatrix<T>) -> T {
    let gram = m.conj_transpose().mul(m).expect("square factor");
    gram.sub(&QuatMatrix::identity(m.cols())).expect("same shape").frob_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    type Q = Quaternion<f64>;
    type M = QuatMatrix<f64>;

    fn sample(rows: usize, cols: usize, seed: u64) -> M {
        let mut r = SplitMix64::new(seed);
        M::from_fn(rows, cols, |_, _| {
            Q::new(
                r.next_f64() * 2.0 - 1.0,
                r.next_f64() * 2.0 - 1.0,
                r.next_f64() * 2.0 - 1.0,
                r.next_f64() * 2.0 - 1.0,
            )
        })
    }

    fn check(q: &M) -> QsvdFactors<f64> {
        let f = qsvd(q).unwrap();
        let scale = q.frob_norm().max(1.0);
        assert!(f.residual(q).unwrap() <= 1e-12 * scale);
        assert!(f.unitarity_error() <= 1e-12);
        assert_eq!(f.singular.len(), q.rows().min(q.cols()));
        for w in f.singular.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert!(f.singular.iter().all(|s| *s >= 0.0));
        f
    }

    #[test]
    fn factors_square_tall_and_wide_matrices() {
        let mut seed = 0x95D0;
        for (m, n) in [(1, 1), (2, 2), (4, 4), (6, 4), (9, 2), (3, 5), (2, 9), (7, 7)] {
            seed += 1;
            check(&sample(m, n, seed));
        }
    }

    #[test]
    fn diagonal_phase_matrix_has_exact_singular_values() {
        let mut q = M::zeros(2, 2);
        q.set(0, 0, Q::new(0.0, 3.0, 0.0, 0.0));
        q.set(1, 1, Q::new(0.0, 0.0, 4.0, 0.0));
        let f = check(&q);
        assert_eq!(f.singular, vec![4.0, 3.0]);
    }

    #[test]
    fn identity_decomposes_to_identity() {
        let f = check(&M::identity(5));
        assert_eq!(f.singular, vec![1.0; 5]);
        assert_eq!(f.u.sub(&M::identity(5)).unwrap().frob_norm(), 0.0);
        assert_eq!(f.v.sub(&M::identity(5)).unwrap().frob_norm(), 0.0);
    }

    #[test]
    fn rank_deficient_input_shows_zero_tail() {
        // Outer product of two vectors has rank 1.
        let a = sample(5, 1, 0xAB);
        let b = sample(1, 4, 0xCD);
        let q = a.mul(&b).unwrap();
        let f = check(&q);
        assert!(f.singular[0] > 0.1);
        for s in &f.singular[1..] {
            assert!(*s <= 1e-13 * f.singular[0]);
        }
    }

    #[test]
    fn columns_lead_with_a_nonnegative_component() {
        // Every U column is canonical; paired V columns carry the
        // compensating sign, so only V's unpaired tail is constrained.
        let f = check(&sample(6, 3, 0x9191));
        for j in 0..6 {
            assert!(!super::column_wants_flip(&f.u, j), "U column {j} not canonical");
        }
        let g = check(&sample(3, 6, 0x9292));
        for j in 0..3 {
            assert!(!super::column_wants_flip(&g.u, j), "U column {j} not canonical");
        }
        for j in 3..6 {
            assert!(!super::column_wants_flip(&g.v, j), "V tail column {j} not canonical");
        }
    }

    #[test]
    fn repeated_runs_are_bit_identical() {
        let q = sample(8, 5, 0xD00D);
        let a = qsvd(&q).unwrap();
        let b = qsvd(&q).unwrap();
        for p in 0..4 {
            assert_eq!(a.u.plane(p), b.u.plane(p));
            assert_eq!(a.v.plane(p), b.v.plane(p));
        }
        assert_eq!(a.singular, b.singular);
    }

    #[test]
    fn power_of_two_scaling_scales_only_sigma() {
        let q = sample(5, 4, 0x5CA1E2);
        let base = qsvd(&q).unwrap();
        let f = qsvd(&q.scale(2.0f64.powi(10))).unwrap();
        for (a, b) in f.singular.iter().zip(&base.singular) {
            assert_eq!(a.to_bits(), (b * 2.0f64.powi(10)).to_bits());
        }
        for p in 0..4 {
            assert_eq!(f.u.plane(p), base.u.plane(p));
            assert_eq!(f.v.plane(p), base.v.plane(p));
        }
    }

    #[test]
    fn wide_factorization_transposes_cleanly() {
        let q = sample(3, 7, 0x71DE);
        let f = check(&q);
        assert_eq!(f.u.rows(), 3);
        assert_eq!(f.v.rows(), 7);
        assert_eq!(f.singular.len(), 3);
    }

    #[test]
    fn substitution_choice_does_not_change_the_values() {
        let q = sample(4, 4, 0x6A6A);
        let with = qsvd_with(&q, QsvdOptions { substitute_givens: true }).unwrap();
        let without = qsvd_with(&q, QsvdOptions { substitute_givens: false }).unwrap();
        for (a, b) in with.singular.iter().zip(&without.singular) {
            assert!((a - b).abs() <= 1e-13);
        }
        assert!(with.residual(&q).unwrap() <= 1e-13 * q.frob_norm());
        assert!(without.residual(&q).unwrap() <= 1e-13 * q.frob_norm());
    }
}

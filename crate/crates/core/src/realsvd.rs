//! SVD of a real upper-bidiagonal matrix by implicit-shift QR iteration.
//!
//! This is the ordinary real half of the quaternion SVD: the quaternion
//! arithmetic reduces the input to a real band, and this module grinds the
//! band down to singular values with plane rotations, accumulating the
//! rotations into real orthogonal `u` and `v`.
//!
//! Every deflation threshold is *relative* (scaled by the band magnitude),
//! never absolute. Besides being the numerically right thing, it makes the
//! whole routine exactly equivariant under power-of-two scaling of the
//! input, which downstream pipelines rely on for reproducibility.

use crate::error::{Error, Result};
use crate::rmatrix::RealMatrix;
use crate::scalar::Scalar;

/// SVD of a real bidiagonal band: `B = u · diag(singular) · vᵀ`.
#[derive(Clone, Debug)]
pub struct RealBidiagSvd<T> {
    /// Singular values, nonnegative and sorted descending.
    pub singular: Vec<T>,
    /// Left orthogonal factor, n×n.
    pub u: RealMatrix<T>,
    /// Right orthogonal factor, n×n (not transposed).
    pub v: RealMatrix<T>,
}

/// Plane rotation `(c, s)` with `c·a + s·b = √(a²+b²)` and `−s·a + c·b = 0`.
///
/// Computed from the ratio of the smaller to the larger entry, so the result
/// is exactly invariant under scaling of `(a, b)` by a power of two.
fn rot<T: Scalar>(a: T, b: T) -> (T, T) {
    if b == T::zero() {
        (T::one(), T::zero())
    } else if a == T::zero() {
        (T::zero(), if b > T::zero() { T::one() } else { -T::one() })
    } else if a.abs() > b.abs() {
        let t = b / a;
        let d = (T::one() + t * t).sqrt();
        let c = if a > T::zero() { T::one() / d } else { -T::one() / d };
        (c, t * c)
    } else {
        let t = a / b;
        let d = (T::one() + t * t).sqrt();
        let s = if b > T::zero() { T::one() / d } else { -T::one() / d };
        (t * s, s)
    }
}

/// Mixes columns `(j, k)` of `m`: `col_j ← c·col_j + s·col_k`,
/// `col_k ← −s·col_j + c·col_k`.
fn rotate_cols<T: Scalar>(m: &mut RealMatrix<T>, j: usize, k: usize, c: T, s: T) {
    for r in 0..m.rows() {
        let a = m.get(r, j);
        let b = m.get(r, k);
        m.set(r, j, c * a + s * b);
        m.set(r, k, c * b - s * a);
    }
}

/// Computes the SVD of the bidiagonal band `(diag, superdiag)`.
///
/// `superdiag` must be one shorter than `diag`. Entries may carry any sign;
/// the returned singular values are nonnegative and descending, with the
/// sign and ordering absorbed into `u` and `v`.
pub fn bidiagonal_svd<T: Scalar>(diag: &[T], superdiag: &[T]) -> Result<RealBidiagSvd<T>> {
    let n = diag.len();
    if n == 0 {
        return Ok(RealBidiagSvd {
            singular: Vec::new(),
            u: RealMatrix::identity(0),
            v: RealMatrix::identity(0),
        });
    }
    if superdiag.len() + 1 != n {
        return Err(Error::shape(format!(
            "bidiagonal band wants {} superdiagonal entries, got {}",
            n - 1,
            superdiag.len()
        )));
    }

    let mut d = diag.to_vec();
    let mut e = superdiag.to_vec();
    let mut u = RealMatrix::identity(n);
    let mut v = RealMatrix::identity(n);

    // One magnitude for all "is this negligible" questions.
    let band_scale = d
        .iter()
        .chain(e.iter())
        .fold(T::zero(), |acc, x| acc.max(x.abs()));
    if band_scale == T::zero() {
        return Ok(RealBidiagSvd { singular: d, u, v });
    }

    let eps = T::epsilon();
    let max_iter = 60 * n;
    let mut iter = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        // Deflate a negligible trailing superdiagonal entry.
        if e[hi - 1].abs() <= eps * (d[hi - 1].abs() + d[hi].abs()) {
            e[hi - 1] = T::zero();
            hi -= 1;
            continue;
        }

        // Find the start of the trailing unreduced block.
        let mut lo = hi - 1;
        while lo > 0 {
            if e[lo - 1].abs() <= eps * (d[lo - 1].abs() + d[lo].abs()) {
                e[lo - 1] = T::zero();
                break;
            }
            lo -= 1;
        }

        iter += 1;
        if iter > max_iter {
            return Err(Error::Convergence(max_iter));
        }

        // A vanishing diagonal inside the block breaks the shift formula;
        // chase the adjoining superdiagonal entry off the band first.
        if d[hi].abs() <= eps * band_scale {
            // Zero at the bottom: right rotations push e[hi−1] up and out.
            d[hi] = T::zero();
            let mut z = e[hi - 1];
            e[hi - 1] = T::zero();
            for j in (lo..hi).rev() {
                let (c, s) = rot(d[j], z);
                d[j] = c * d[j] + s * z;
                rotate_cols(&mut v, j, hi, c, s);
                if j > lo {
                    z = -s * e[j - 1];
                    e[j - 1] = c * e[j - 1];
                }
            }
            continue;
        }
        if let Some(idx) = (lo..hi).find(|&i| d[i].abs() <= eps * band_scale) {
            // Zero in the interior: left rotations push e[idx] down and out.
            d[idx] = T::zero();
            let mut z = e[idx];
            e[idx] = T::zero();
            for j in idx + 1..=hi {
                let (c, s) = rot(d[j], z);
                d[j] = c * d[j] + s * z;
                rotate_cols(&mut u, j, idx, c, s);
                if j < hi {
                    z = -s * e[j];
                    e[j] = c * e[j];
                }
            }
            continue;
        }

        // Wilkinson shift from the trailing 2×2 of BᵀB.
        let e_prev = if hi >= lo + 2 { e[hi - 2] } else { T::zero() };
        let t11 = d[hi - 1] * d[hi - 1] + e_prev * e_prev;
        let t12 = d[hi - 1] * e[hi - 1];
        let t22 = d[hi] * d[hi] + e[hi - 1] * e[hi - 1];
        let delta = (t11 - t22) / T::of(2);
        let sign = if delta >= T::zero() { T::one() } else { -T::one() };
        let mu = t22 - t12 * t12 / (delta + sign * (delta * delta + t12 * t12).sqrt());

        // Implicit QR sweep: chase the bulge from the top of the block.
        let mut x = d[lo] * d[lo] - mu;
        let mut z = d[lo] * e[lo];
        for k in lo..hi {
            let (c, s) = rot(x, z);
            if k > lo {
                e[k - 1] = c * x + s * z;
            }
            let dk = d[k];
            let ek = e[k];
            let dk1 = d[k + 1];
            d[k] = c * dk + s * ek;
            e[k] = c * ek - s * dk;
            let bulge = s * dk1;
            d[k + 1] = c * dk1;
            rotate_cols(&mut v, k, k + 1, c, s);

            let (c2, s2) = rot(d[k], bulge);
            d[k] = c2 * d[k] + s2 * bulge;
            let old_ek = e[k];
            let old_dk1 = d[k + 1];
            e[k] = c2 * old_ek + s2 * old_dk1;
            d[k + 1] = c2 * old_dk1 - s2 * old_ek;
            if k + 1 < hi {
                let old_ek1 = e[k + 1];
                x = e[k];
                z = s2 * old_ek1;
                e[k + 1] = c2 * old_ek1;
            }
            rotate_cols(&mut u, k, k + 1, c2, s2);
        }
    }

    // Flip negative values into their u columns, then sort descending.
    for i in 0..n {
        if d[i] < T::zero() {
            d[i] = -d[i];
            for r in 0..n {
                u.set(r, i, -u.get(r, i));
            }
        }
    }
    for i in 0..n {
        let mut top = i;
        for j in i + 1..n {
            if d[j] > d[top] {
                top = j;
            }
        }
        if top != i {
            d.swap(i, top);
            u.swap_cols(i, top);
            v.swap_cols(i, top);
        }
    }

    Ok(RealBidiagSvd { singular: d, u, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn band_matrix(diag: &[f64], superdiag: &[f64]) -> RealMatrix<f64> {
        let n = diag.len();
        let mut b = RealMatrix::zeros(n, n);
        for (i, &x) in diag.iter().enumerate() {
            b.set(i, i, x);
        }
        for (i, &x) in superdiag.iter().enumerate() {
            b.set(i, i + 1, x);
        }
        b
    }

    fn check(diag: &[f64], superdiag: &[f64]) -> RealBidiagSvd<f64> {
        let svd = bidiagonal_svd(diag, superdiag).unwrap();
        let n = diag.len();
        let b = band_matrix(diag, superdiag);
        let scale = b.frob_norm().max(1.0);

        // Orthogonality.
        for (m, name) in [(&svd.u, "u"), (&svd.v, "v")] {
            let gram = m.transpose().mul(m).unwrap();
            for r in 0..n {
                for c in 0..n {
                    let want = if r == c { 1.0 } else { 0.0 };
                    assert!(
                        (gram.get(r, c) - want).abs() <= 1e-13,
                        "{name} not orthogonal at ({r},{c})"
                    );
                }
            }
        }

        // Ordering and sign.
        for w in svd.singular.windows(2) {
            assert!(w[0] >= w[1], "not descending: {:?}", svd.singular);
        }
        assert!(svd.singular.iter().all(|s| *s >= 0.0));

        // Reconstruction.
        let mut sig = RealMatrix::zeros(n, n);
        for (i, &s) in svd.singular.iter().enumerate() {
            sig.set(i, i, s);
        }
        let recon = svd.u.mul(&sig).unwrap().mul(&svd.v.transpose()).unwrap();
        for r in 0..n {
            for c in 0..n {
                assert!(
                    (recon.get(r, c) - b.get(r, c)).abs() <= 1e-13 * scale,
                    "reconstruction off at ({r},{c})"
                );
            }
        }
        svd
    }

    #[test]
    fn two_by_two_matches_the_characteristic_polynomial() {
        let (a, b, c) = (3.0, 4.0, 2.0);
        let svd = check(&[a, c], &[b]);
        // σ² are the roots of λ² − (a²+b²+c²)λ + a²c².
        let sum = a * a + b * b + c * c;
        let prod = a * a * c * c;
        let disc = (sum * sum - 4.0 * prod).sqrt();
        let hi = ((sum + disc) / 2.0).sqrt();
        let lo = ((sum - disc) / 2.0).sqrt();
        assert!((svd.singular[0] - hi).abs() <= 1e-13 * hi);
        assert!((svd.singular[1] - lo).abs() <= 1e-13 * hi);
    }

    #[test]
    fn diagonal_input_sorts_and_absorbs_signs() {
        let svd = check(&[1.0, -5.0, 3.0], &[0.0, 0.0]);
        assert_eq!(svd.singular, vec![5.0, 3.0, 1.0]);
    }

    #[test]
    fn random_bands_reconstruct() {
        let mut r = SplitMix64::new(0x5D5D);
        for n in [1usize, 2, 3, 5, 8, 13, 24] {
            for _ in 0..8 {
                let diag: Vec<f64> = (0..n).map(|_| r.next_f64() * 4.0 - 2.0).collect();
                let superdiag: Vec<f64> = (0..n - 1).map(|_| r.next_f64() * 4.0 - 2.0).collect();
                check(&diag, &superdiag);
            }
        }
    }

    #[test]
    fn zero_diagonal_entries_are_handled() {
        check(&[2.0, 0.0, 3.0], &[1.0, 1.0]);
        check(&[2.0, 1.0, 0.0], &[1.0, 1.0]);
        check(&[0.0, 1.0, 2.0], &[1.0, 1.0]);
        check(&[0.0, 0.0], &[1.0]);
        let svd = check(&[0.0, 0.0, 0.0], &[0.0, 0.0]);
        assert_eq!(svd.singular, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn rank_deficiency_shows_up_as_zero_singular_values() {
        // d[1] = 0 makes the band rank 2 at most.
        let svd = check(&[2.0, 0.0, 3.0], &[1.0, 1.0]);
        assert!(svd.singular[2] <= 1e-14);
    }

    #[test]
    fn power_of_two_scaling_is_bitwise_exact() {
        let mut r = SplitMix64::new(0xB1757AB);
        let diag: Vec<f64> = (0..9).map(|_| r.next_f64() * 2.0 - 1.0).collect();
        let superdiag: Vec<f64> = (0..8).map(|_| r.next_f64() * 2.0 - 1.0).collect();
        let base = bidiagonal_svd(&diag, &superdiag).unwrap();
        for k in [-20i32, 8, 51] {
            let f = (2.0f64).powi(k);
            let d2: Vec<f64> = diag.iter().map(|x| x * f).collect();
            let e2: Vec<f64> = superdiag.iter().map(|x| x * f).collect();
            let svd = bidiagonal_svd(&d2, &e2).unwrap();
            for (a, b) in svd.singular.iter().zip(&base.singular) {
                assert_eq!(a.to_bits(), (b * f).to_bits());
            }
            // The rotation factors themselves are scale-free.
            for m in 0..9 {
                for c in 0..9 {
                    assert_eq!(svd.u.get(m, c).to_bits(), base.u.get(m, c).to_bits());
                    assert_eq!(svd.v.get(m, c).to_bits(), base.v.get(m, c).to_bits());
                }
            }
        }
    }

    #[test]
    fn mismatched_band_lengths_are_rejected() {
        assert!(matches!(bidiagonal_svd(&[1.0, 2.0], &[]), Err(Error::Shape(_))));
    }
}

//! Generalized Givens transformation on quaternion pairs.
//!
//! A 2×2 quaternion unitary `G = [q11 q12; q21 q22]` built from a pair
//! `x = [x1; x2]` so that `Gᴴ x = [‖x‖; 0]`. Both matrix entries of the
//! second column are chosen by the magnitude split below, which keeps the
//! construction division-safe for either ordering of |x1| and |x2|.

use crate::error::{Error, Result};
use crate::ledger::{OpLedger, TransformKind};
use crate::quat::Quaternion;
use crate::scalar::Scalar;

/// A generalized Givens transformation.
#[derive(Clone, Copy, Debug)]
pub struct GeneralizedGivens<T> {
    pub q11: Quaternion<T>,
    pub q12: Quaternion<T>,
    pub q21: Quaternion<T>,
    pub q22: Quaternion<T>,
}

/// Builds the transform annihilating `x2` against `x1`.
///
/// Requires `x2 ≠ 0`; a caller seeing a zero second entry should skip the
/// rotation instead. With `n = ‖x‖`: `q11 = x1/n`, `q21 = x2/n`, and the
/// second column is completed from whichever of the two has the larger
/// modulus, using `q⁻ᴴ = q/|q|²`:
///
/// * `|x1| ≤ |x2|`: `q12 = |q21|`, `q22 = −|q12|·q21⁻ᴴ·q11ᴴ`
/// * `|x1| > |x2|`: `q22 = |q11|`, `q12 = −|q11|·q11⁻ᴴ·q21ᴴ`
pub fn make_givens<T: Scalar>(
    x1: Quaternion<T>,
    x2: Quaternion<T>,
    ledger: &mut OpLedger,
) -> Result<GeneralizedGivens<T>> {
    if x2.is_zero() {
        return Err(Error::GivensZeroPivot);
    }
    let norm = (x1.norm_sqr() + x2.norm_sqr()).sqrt();
    let q11 = x1.scale(T::one() / norm);
    let q21 = x2.scale(T::one() / norm);

    let (q12, q22) = if q11.norm_sqr() <= q21.norm_sqr() {
        let a21 = q21.norm();
        let q12 = Quaternion::from_real(a21);
        // q21⁻ᴴ = q21 / |q21|²
        let inv_h = q21.scale(T::one() / q21.norm_sqr());
        let q22 = (inv_h * q11.conj()).scale(-a21);
        (q12, q22)
    } else {
        let a11 = q11.norm();
        let q22 = Quaternion::from_real(a11);
        let inv_h = q11.scale(T::one() / q11.norm_sqr());
        let q12 = (inv_h * q21.conj()).scale(-a11);
        (q12, q22)
    };

    ledger.charge_generate(TransformKind::Givens);
    Ok(GeneralizedGivens { q11, q12, q21, q22 })
}

impl<T: Scalar> GeneralizedGivens<T> {
    /// Left action on a column pair: `y = Gᴴ · [x1; x2]`.
    pub fn apply_left_pair(
        &self,
        x1: Quaternion<T>,
        x2: Quaternion<T>,
        ledger: &mut OpLedger,
    ) -> (Quaternion<T>, Quaternion<T>) {
        ledger.charge_givens_pair();
        (
            self.q11.conj() * x1 + self.q21.conj() * x2,
            self.q12.conj() * x1 + self.q22.conj() * x2,
        )
    }

    /// Right action on a row pair: `y = [x1, x2] · G`.
    pub fn apply_right_pair(
        &self,
        x1: Quaternion<T>,
        x2: Quaternion<T>,
        ledger: &mut OpLedger,
    ) -> (Quaternion<T>, Quaternion<T>) {
        ledger.charge_givens_pair();
        (
            x1 * self.q11 + x2 * self.q21,
            x1 * self.q12 + x2 * self.q22,
        )
    }

    /// The transform as a 2×2 quaternion matrix, for verification.
    pub fn to_matrix(&self) -> crate::qmatrix::QuatMatrix<T> {
        let entries = [[self.q11, self.q12], [self.q21, self.q22]];
        crate::qmatrix::QuatMatrix::from_fn(2, 2, |r, c| entries[r][c])
    }
}

//! Quaternion scalar arithmetic.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A quaternion `w + x·i + y·j + z·k` with noncommutative multiplication.
///
/// `w` is the real part; `x`, `y`, `z` are the coefficients of the imaginary
/// units. A quaternion is *pure* when `w = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quaternion<T> {
    // ── Constructors ────────────────────────────────────────────────────────

    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    /// Embeds a real scalar.
    pub fn from_real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero())
    }

    pub fn one() -> Self {
        Self::from_real(T::one())
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    /// The imaginary unit `j`.
    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    /// The imaginary unit `k`.
    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    // ── Component access ────────────────────────────────────────────────────

    /// Component by plane index: 0 = real, 1 = i, 2 = j, 3 = k.
    pub fn component(&self, plane: usize) -> T {
        match plane {
            0 => self.w,
            1 => self.x,
            2 => self.y,
            3 => self.z,
            _ => panic!("quaternion has four components, got index {plane}"),
        }
    }

    /// Replaces the component addressed by `plane` (same indexing as
    /// [`component`](Self::component)).
    pub fn set_component(&mut self, plane: usize, v: T) {
        match plane {
            0 => self.w = v,
            1 => self.x = v,
            2 => self.y = v,
            3 => self.z = v,
            _ => panic!("quaternion has four components, got index {plane}"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w == T::zero() && self.x == T::zero() && self.y == T::zero() && self.z == T::zero()
    }

    /// True when all three imaginary components are exactly zero.
    pub fn is_real(&self) -> bool {
        self.x == T::zero() && self.y == T::zero() && self.z == T::zero()
    }

    // ── Algebra ─────────────────────────────────────────────────────────────

    /// Conjugate `w − x·i − y·j − z·k`.
    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared modulus `w² + x² + y² + z²`.
    pub fn norm_sqr(&self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Modulus `|q|`.
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Norm of the imaginary part alone.
    pub fn imag_norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Scales every component by a real factor.
    pub fn scale(&self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse `q̄ / |q|²`; the zero quaternion has none.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == T::zero() {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj().scale(T::one() / n2))
    }

    /// Unit-modulus phase `q / |q|`, defined as `1` for the zero quaternion.
    pub fn phase(&self) -> Self {
        let n = self.norm();
        if n == T::zero() {
            Self::one()
        } else {
            self.scale(T::one() / n)
        }
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl<T: Scalar> AddAssign for Quaternion<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl<T: Scalar> SubAssign for Quaternion<T> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product; noncommutative.
impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (rhs.w, rhs.x, rhs.y, rhs.z);
        Self::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<f64>;

    const EPS: f64 = 1e-14;

    fn approx_eq(a: Q, b: Q, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    /// Reference multiplication built from the 4×4 table of unit products,
    /// independent of the closed-form expansion in `Mul`.
    fn table_mul(a: Q, b: Q) -> Q {
        // unit_table[p][q] = (sign, component) of e_p · e_q
        // with e_0 = 1, e_1 = i, e_2 = j, e_3 = k.
        const TABLE: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        let mut out = Q::zero();
        for p in 0..4 {
            for q in 0..4 {
                let (sign, comp) = TABLE[p][q];
                let v = out.component(comp) + sign * a.component(p) * b.component(q);
                out.set_component(comp, v);
            }
        }
        out
    }

    #[test]
    fn unit_products() {
        assert_eq!(Q::i() * Q::j(), Q::k());
        assert_eq!(Q::j() * Q::k(), Q::i());
        assert_eq!(Q::k() * Q::i(), Q::j());
        assert_eq!(Q::j() * Q::i(), -Q::k());
        assert_eq!(Q::i() * Q::i(), -Q::one());
        assert_eq!(Q::j() * Q::j(), -Q::one());
        assert_eq!(Q::k() * Q::k(), -Q::one());
    }

    #[test]
    fn product_against_table_oracle() {
        // (1 + i)(1 + j) = 1 + i + j + k, checked against the table oracle.
        let a = Q::one() + Q::i();
        let b = Q::one() + Q::j();
        let expect = Q::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(a * b, expect);
        assert_eq!(table_mul(a, b), expect);

        // Same agreement over a deterministic sweep of arbitrary quaternions.
        let mut vals = Vec::new();
        for t in 0..16 {
            let t = t as f64;
            vals.push(Q::new(t * 0.3 - 2.0, 1.7 - t, 0.25 * t, -0.6 * t + 1.0));
        }
        for &a in &vals {
            for &b in &vals {
                assert!(approx_eq(a * b, table_mul(a, b), 1e-12));
            }
        }
    }

    #[test]
    fn conjugate_and_norm() {
        let q = Q::new(1.0, -2.0, 3.0, -4.0);
        assert_eq!(q.conj(), Q::new(1.0, 2.0, -3.0, 4.0));
        assert!((q.norm() - 30.0_f64.sqrt()).abs() < EPS);
        // |q|² = q·q̄ real part, imaginary parts vanish.
        let p = q * q.conj();
        assert!((p.w - 30.0).abs() < EPS);
        assert!(p.imag_norm() < EPS);
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = Q::new(0.3, -1.2, 2.5, 0.7);
        let b = Q::new(-2.0, 0.1, 0.0, 1.9);
        assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Q::new(1.0, 1.0, 0.0, 0.0);
        let inv = q.inverse().unwrap();
        assert!(approx_eq(inv, Q::new(0.5, -0.5, 0.0, 0.0), EPS));
        assert!(approx_eq(q * inv, Q::one(), EPS));
        assert!(approx_eq(inv * q, Q::one(), EPS));

        let r = Q::new(0.3, -0.7, 1.1, 2.0);
        assert!(approx_eq(r * r.inverse().unwrap(), Q::one(), EPS));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert!(matches!(Q::zero().inverse(), Err(crate::Error::ZeroQuaternion)));
    }

    #[test]
    fn phase_is_unit_and_defaults_to_one() {
        let q = Q::new(3.0, 0.0, 4.0, 0.0);
        let p = q.phase();
        assert!((p.norm() - 1.0).abs() < EPS);
        assert!(approx_eq(p, Q::new(0.6, 0.0, 0.8, 0.0), EPS));
        assert_eq!(Q::zero().phase(), Q::one());
    }

    #[test]
    fn generic_over_f32() {
        let a = Quaternion::<f32>::i();
        let b = Quaternion::<f32>::j();
        assert_eq!(a * b, Quaternion::<f32>::k());
    }
}

//! Dense quaternion matrix stored as four real component planes.

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::rmatrix::RealMatrix;
use crate::scalar::Scalar;

/// An `m×n` quaternion matrix.
///
/// Storage is one row-major real plane per quaternion component, indexed
/// 0 = real, 1 = i, 2 = j, 3 = k. All production algorithms work directly on
/// these planes (the sign-adjusted blocks of the compact counterpart forms);
/// the full 4m×4n real counterpart is exposed only as a verification
/// encoding.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatMatrix<T> {
    rows: usize,
    cols: usize,
    planes: [Vec<T>; 4],
}

impl<T: Scalar> QuatMatrix<T> {
    // ── Constructors ────────────────────────────────────────────────────────

    pub fn zeros(rows: usize, cols: usize) -> Self {
        let plane = vec![T::zero(); rows * cols];
        Self {
            rows,
            cols,
            planes: [plane.clone(), plane.clone(), plane.clone(), plane],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quaternion::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds a matrix from four row-major component planes
    /// (real, i, j, k); every plane must hold `rows·cols` entries.
    pub fn from_planes(rows: usize, cols: usize, planes: [Vec<T>; 4]) -> Result<Self> {
        for (idx, p) in planes.iter().enumerate() {
            if p.len() != rows * cols {
                return Err(Error::shape(format!(
                    "plane {idx} holds {} entries, expected {}×{}",
                    p.len(),
                    rows,
                    cols
                )));
            }
        }
        Ok(Self { rows, cols, planes })
    }

    // ── Access ──────────────────────────────────────────────────────────────

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Quaternion<T> {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.cols + c;
        Quaternion::new(
            self.planes[0][idx],
            self.planes[1][idx],
            self.planes[2][idx],
            self.planes[3][idx],
        )
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, q: Quaternion<T>) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.cols + c;
        self.planes[0][idx] = q.w;
        self.planes[1][idx] = q.x;
        self.planes[2][idx] = q.y;
        self.planes[3][idx] = q.z;
    }

    /// Read-only view of one component plane (0 = real, 1 = i, 2 = j, 3 = k).
    pub fn plane(&self, p: usize) -> &[T] {
        &self.planes[p]
    }

    // ── Algebra ─────────────────────────────────────────────────────────────

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = self.clone();
        for p in &mut out.planes {
            for v in p.iter_mut() {
                *v = *v * s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &Self,
        what: &str,
        f: impl Fn(T, T) -> T,
    ) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::shape(format!(
                "{what}: {}×{} vs {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for p in 0..4 {
            for (o, &r) in out.planes[p].iter_mut().zip(rhs.planes[p].iter()) {
                *o = f(*o, r);
            }
        }
        Ok(out)
    }

    /// Quaternion matrix product.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "matmul: {}×{} times {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.set(r, c, out.get(r, c) + a * rhs.get(k, c));
                }
            }
        }
        Ok(out)
    }

    /// Right-multiplication by a real matrix. Real scalars commute with
    /// quaternions, so each component plane multiplies independently.
    pub fn mul_real(&self, rhs: &RealMatrix<T>) -> Result<Self> {
        if self.cols != rhs.rows() {
            return Err(Error::shape(format!(
                "matmul: {}×{} times real {}×{}",
                self.rows,
                self.cols,
                rhs.rows(),
                rhs.cols()
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols());
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols() {
                    let s = rhs.get(k, c);
                    if s == T::zero() {
                        continue;
                    }
                    out.set(r, c, out.get(r, c) + a.scale(s));
                }
            }
        }
        Ok(out)
    }

    /// Frobenius norm over all four planes.
    pub fn frob_norm(&self) -> T {
        let mut acc = T::zero();
        for p in &self.planes {
            for &v in p {
                acc += v * v;
            }
        }
        acc.sqrt()
    }

    /// Frobenius norm of a single component plane.
    pub fn plane_norm(&self, p: usize) -> T {
        self.planes[p]
            .iter()
            .map(|&v| v * v)
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Scales column `c` on the right by a quaternion (entry ← entry·q).
    pub fn scale_col_right(&mut self, c: usize, q: Quaternion<T>) {
        for r in 0..self.rows {
            self.set(r, c, self.get(r, c) * q);
        }
    }

    /// Negates one column in place.
    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self.set(r, c, -self.get(r, c));
        }
    }

    // ── Verification encoding ───────────────────────────────────────────────

    /// The full 4m×4n real counterpart.
    ///
    /// Block layout, with Q0..Q3 the component planes:
    ///
    /// ```text
    /// [  Q0  Q2  Q1  Q3 ]
    /// [ −Q2  Q0  Q3 −Q1 ]
    /// [ −Q1 −Q3  Q0  Q2 ]
    /// [ −Q3  Q1 −Q2  Q0 ]
    /// ```
    ///
    /// Production code never expands this matrix; it exists so tests can
    /// check the compact-form algorithms against ordinary real arithmetic.
    pub fn to_full_counterpart(&self) -> RealMatrix<T> {
        // (sign, plane) of each block, in block-row-major order.
        const LAYOUT: [[(i8, usize); 4]; 4] = [
            [(1, 0), (1, 2), (1, 1), (1, 3)],
            [(-1, 2), (1, 0), (1, 3), (-1, 1)],
            [(-1, 1), (-1, 3), (1, 0), (1, 2)],
            [(-1, 3), (1, 1), (-1, 2), (1, 0)],
        ];
        let (m, n) = (self.rows, self.cols);
        let mut out = RealMatrix::zeros(4 * m, 4 * n);
        for (br, row) in LAYOUT.iter().enumerate() {
            for (bc, &(sign, plane)) in row.iter().enumerate() {
                let s = if sign > 0 { T::one() } else { -T::one() };
                for r in 0..m {
                    for c in 0..n {
                        out.set(br * m + r, bc * n + c, s * self.planes[plane][r * n + c]);
                    }
                }
            }
        }
        out
    }
}

//! Quaternion Householder reflectors in three flavors.
//!
//! All three annihilate every component of a vector except a chosen axis
//! entry, but differ in what lands on the axis and in how phases are handled:
//!
//! * [`HouseholderKind::H1`] — plain reflector `I − 2uuᴴ`, sends the build
//!   vector `y` to `α·e_axis` with the quaternion `α = phase(y_axis)·‖y‖`.
//! * [`HouseholderKind::H2`] — a diagonal phase matrix `G` that realifies the
//!   vector, followed by a real reflector: `ℋ₂ = (I − 2uuᵀ)·G`, sending `y`
//!   to the real `‖y‖·e_axis`.
//! * [`HouseholderKind::H3`] — plain reflector built with the
//!   cancellation-free sign, followed by a single axis phase that flips the
//!   result positive: `ℋ₃ = G·H₁`, also sending `y` to `‖y‖·e_axis`.
//!
//! `ℋ₃` is what the bidiagonalization uses: one quaternion phase instead of
//! a full diagonal of them, and no catastrophic cancellation in `u`.

use crate::ledger::OpLedger;
use crate::ledger::TransformKind;
use crate::quat::Quaternion;
use crate::scalar::Scalar;

/// Reflector flavor; see the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HouseholderKind {
    H1,
    H2,
    H3,
}

impl HouseholderKind {
    fn transform_kind(self) -> TransformKind {
        match self {
            HouseholderKind::H1 => TransformKind::H1,
            HouseholderKind::H2 => TransformKind::H2,
            HouseholderKind::H3 => TransformKind::H3,
        }
    }
}

/// Relative tolerance used for the identity shortcut and for phase snapping.
fn tol<T: Scalar>() -> T {
    T::of(16) * T::epsilon()
}

/// A prepared Householder transformation on vectors of a fixed length.
#[derive(Clone, Debug)]
pub struct HouseholderReflector<T> {
    kind: HouseholderKind,
    len: usize,
    axis: usize,
    /// Reflector direction; `None` means the reflector part is the identity.
    u: Option<Vec<Quaternion<T>>>,
    /// Diagonal phase factors; empty means no phase part.
    phases: Vec<Quaternion<T>>,
    /// What the build vector becomes on the axis entry.
    target: Quaternion<T>,
}

/// Builds a reflector of the requested flavor from the vector `y`, so that
/// applying it on the left sends `y` to `target()·e_axis`.
///
/// Charges one generate event. A vector already of that shape (or zero)
/// yields an identity transform, which still charges its apply cost each
/// time it is used — the cost model bills the traversal, not the arithmetic
/// outcome.
pub fn make_householder<T: Scalar>(
    kind: HouseholderKind,
    y: &[Quaternion<T>],
    axis: usize,
    ledger: &mut OpLedger,
) -> HouseholderReflector<T> {
    assert!(axis < y.len(), "householder axis out of range");
    ledger.charge_generate(kind.transform_kind());
    let norm = vec_norm(y);

    match kind {
        HouseholderKind::H1 => {
            let alpha = y[axis].phase().scale(norm);
            let (u, _) = reflector_towards(y, axis, alpha);
            HouseholderReflector { kind, len: y.len(), axis, u, phases: Vec::new(), target: alpha }
        }
        HouseholderKind::H2 => {
            // Realify first, then reflect the modulus vector onto the axis.
            let snap = tol::<T>() * norm;
            let phases = y
                .iter()
                .map(|q| if q.norm() <= snap { Quaternion::one() } else { q.conj().scale(T::one() / q.norm()) })
                .collect();
            let moduli: Vec<Quaternion<T>> = y.iter().map(|q| Quaternion::from_real(q.norm())).collect();
            let (u, _) = reflector_towards(&moduli, axis, Quaternion::from_real(norm));
            HouseholderReflector { kind, len: y.len(), axis, u, phases, target: Quaternion::from_real(norm) }
        }
        HouseholderKind::H3 => {
            // The minus sign makes `y − α·e_axis` cancellation-free; the axis
            // phase then turns the reflected value real and nonnegative.
            let alpha = y[axis].phase().scale(-norm);
            let (u, identity) = reflector_towards(y, axis, alpha);
            let mut phases = vec![Quaternion::one(); y.len()];
            if !identity {
                phases[axis] = alpha.conj().scale(T::one() / alpha.norm());
            }
            HouseholderReflector { kind, len: y.len(), axis, u, phases, target: Quaternion::from_real(norm) }
        }
    }
}

/// `u = (y − α·e_axis) / ‖·‖`, or `None` (identity) when the difference is
/// negligible against `‖y‖`.
fn reflector_towards<T: Scalar>(
    y: &[Quaternion<T>],
    axis: usize,
    alpha: Quaternion<T>,
) -> (Option<Vec<Quaternion<T>>>, bool) {
    let norm = vec_norm(y);
    let mut d: Vec<Quaternion<T>> = y.to_vec();
    d[axis] = d[axis] - alpha;
    let dnorm = vec_norm(&d);
    if dnorm <= tol::<T>() * norm || dnorm == T::zero() {
        return (None, true);
    }
    for q in &mut d {
        *q = q.scale(T::one() / dnorm);
    }
    (Some(d), false)
}

fn vec_norm<T: Scalar>(v: &[Quaternion<T>]) -> T {
    v.iter().map(|q| q.norm_sqr()).sum::<T>().sqrt()
}

impl<T: Scalar> HouseholderReflector<T> {
    pub fn kind(&self) -> HouseholderKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    /// `true` when both the reflector part and all phases are trivial.
    pub fn is_identity(&self) -> bool {
        self.u.is_none() && self.phases.iter().all(|g| *g == Quaternion::one())
    }

    /// The value the build vector acquires on the axis entry.
    pub fn target(&self) -> Quaternion<T> {
        self.target
    }

    /// In-place left action `v ← ℋ·v` on a column segment.
    pub fn apply_left(&self, seg: &mut [Quaternion<T>], ledger: &mut OpLedger) {
        assert_eq!(seg.len(), self.len, "segment length mismatch");
        ledger.charge_householder_apply(self.kind.transform_kind(), self.len);
        match self.kind {
            HouseholderKind::H1 => self.reflect_left(seg),
            HouseholderKind::H2 => {
                self.phase_left(seg);
                self.reflect_left(seg);
            }
            HouseholderKind::H3 => {
                self.reflect_left(seg);
                self.phase_left(seg);
            }
        }
    }

    /// In-place right action `x ← x·ℋᴴ` on a row segment.
    ///
    /// This is the adjoint of [`apply_left`](Self::apply_left), which is what
    /// both right-side matrix updates and accumulator updates need.
    pub fn apply_right(&self, seg: &mut [Quaternion<T>], ledger: &mut OpLedger) {
        assert_eq!(seg.len(), self.len, "segment length mismatch");
        ledger.charge_householder_apply(self.kind.transform_kind(), self.len);
        match self.kind {
            HouseholderKind::H1 => self.reflect_right(seg),
            HouseholderKind::H2 => {
                // ℋ₂ᴴ = Gᴴ·(I − 2uuᵀ)
                self.phase_right(seg);
                self.reflect_right(seg);
            }
            HouseholderKind::H3 => {
                // ℋ₃ᴴ = (I − 2uuᴴ)·Gᴴ
                self.reflect_right(seg);
                self.phase_right(seg);
            }
        }
    }

    /// `v ← v − 2u(uᴴv)`.
    fn reflect_left(&self, seg: &mut [Quaternion<T>]) {
        let Some(u) = &self.u else { return };
        let mut s = Quaternion::zero();
        for (uk, xk) in u.iter().zip(seg.iter()) {
            s = s + uk.conj() * *xk;
        }
        let s2 = s.scale(T::of(2));
        for (uk, xk) in u.iter().zip(seg.iter_mut()) {
            *xk = *xk - *uk * s2;
        }
    }

    /// `x ← x − 2(x·u)uᴴ`.
    fn reflect_right(&self, seg: &mut [Quaternion<T>]) {
        let Some(u) = &self.u else { return };
        let mut s = Quaternion::zero();
        for (uk, xk) in u.iter().zip(seg.iter()) {
            s = s + *xk * *uk;
        }
        let s2 = s.scale(T::of(2));
        for (uk, xk) in u.iter().zip(seg.iter_mut()) {
            *xk = *xk - s2 * uk.conj();
        }
    }

    /// Left diagonal action `v_ℓ ← g_ℓ·v_ℓ`.
    fn phase_left(&self, seg: &mut [Quaternion<T>]) {
        if self.phases.is_empty() {
            return;
        }
        for (g, xk) in self.phases.iter().zip(seg.iter_mut()) {
            *xk = *g * *xk;
        }
    }

    /// Right diagonal action by the adjoint: `x_ℓ ← x_ℓ·conj(g_ℓ)`.
    fn phase_right(&self, seg: &mut [Quaternion<T>]) {
        if self.phases.is_empty() {
            return;
        }
        for (g, xk) in self.phases.iter().zip(seg.iter_mut()) {
            *xk = *xk * g.conj();
        }
    }

    /// The transform as a dense matrix, for verification only.
    pub fn to_matrix(&self) -> crate::qmatrix::QuatMatrix<T> {
        let mut scratch = OpLedger::new();
        let n = self.len;
        let mut m = crate::qmatrix::QuatMatrix::zeros(n, n);
        for c in 0..n {
            let mut e = vec![Quaternion::zero(); n];
            e[c] = Quaternion::one();
            self.apply_left(&mut e, &mut scratch);
            for r in 0..n {
                m.set(r, c, e[r]);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmatrix::QuatMatrix;
    use crate::rng::SplitMix64;

    type Q = Quaternion<f64>;

    fn rand_vec(r: &mut SplitMix64, len: usize) -> Vec<Q> {
        (0..len)
            .map(|_| {
                Q::new(
                    r.next_f64() * 2.0 - 1.0,
                    r.next_f64() * 2.0 - 1.0,
                    r.next_f64() * 2.0 - 1.0,
                    r.next_f64() * 2.0 - 1.0,
                )
            })
            .collect()
    }

    fn vnorm(v: &[Q]) -> f64 {
        v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    fn unitarity_error(h: &HouseholderReflector<f64>) -> f64 {
        let m = h.to_matrix();
        let gram = m.conj_transpose().mul(&m).unwrap();
        gram.sub(&QuatMatrix::identity(m.rows())).unwrap().frob_norm()
    }

    #[test]
    fn h1_sends_build_vector_to_phase_times_norm() {
        let mut r = SplitMix64::new(0x4811);
        for _ in 0..50 {
            let y = rand_vec(&mut r, 5);
            let n = vnorm(&y);
            let mut l = OpLedger::new();
            let h = make_householder(HouseholderKind::H1, &y, 0, &mut l);
            let mut z = y.clone();
            h.apply_left(&mut z, &mut l);
            let want = y[0].phase().scale(n);
            assert!((z[0] - want).norm() <= 64.0 * f64::EPSILON * n);
            assert!((h.target() - want).norm() <= 64.0 * f64::EPSILON * n);
            for zk in &z[1..] {
                assert!(zk.norm() <= 64.0 * f64::EPSILON * n);
            }
        }
    }

    #[test]
    fn h1_is_identity_on_an_aligned_vector_but_still_bills_applies() {
        let y = vec![Q::new(0.3, 0.4, 0.0, 1.2), Q::zero(), Q::zero()];
        let mut l = OpLedger::new();
        let h = make_householder(HouseholderKind::H1, &y, 0, &mut l);
        assert!(h.is_identity());
        let mut probe = vec![Q::i(), Q::j(), Q::k()];
        h.apply_left(&mut probe, &mut l);
        assert_eq!(probe, vec![Q::i(), Q::j(), Q::k()]);
        // Identity or not, an application is an application.
        assert_eq!(l.applied(TransformKind::H1).count, 1);
        assert_eq!(l.applied(TransformKind::H1).assignments, 5);
        assert_eq!(l.applied(TransformKind::H1).flops, 64 * 3 + 56);
    }

    #[test]
    fn h2_and_h3_send_build_vector_to_real_norm() {
        let mut r = SplitMix64::new(0x4823);
        for kind in [HouseholderKind::H2, HouseholderKind::H3] {
            for len in [2usize, 3, 7] {
                for axis in [0usize, len - 1] {
                    let y = rand_vec(&mut r, len);
                    let n = vnorm(&y);
                    let mut l = OpLedger::new();
                    let h = make_householder(kind, &y, axis, &mut l);
                    let mut z = y.clone();
                    h.apply_left(&mut z, &mut l);
                    assert!(
                        (z[axis] - Q::from_real(n)).norm() <= 128.0 * f64::EPSILON * n,
                        "{kind:?} axis value {:?} vs {n}",
                        z[axis]
                    );
                    for (k, zk) in z.iter().enumerate() {
                        if k != axis {
                            assert!(zk.norm() <= 128.0 * f64::EPSILON * n);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_kinds_are_unitary() {
        let mut r = SplitMix64::new(0x777);
        for kind in [HouseholderKind::H1, HouseholderKind::H2, HouseholderKind::H3] {
            let y = rand_vec(&mut r, 6);
            let mut l = OpLedger::new();
            let h = make_householder(kind, &y, 0, &mut l);
            assert!(unitarity_error(&h) <= 64.0 * f64::EPSILON);
        }
    }

    #[test]
    fn right_action_is_the_adjoint_of_the_left_action() {
        let mut r = SplitMix64::new(0xADA);
        for kind in [HouseholderKind::H1, HouseholderKind::H2, HouseholderKind::H3] {
            let y = rand_vec(&mut r, 4);
            let mut l = OpLedger::new();
            let h = make_householder(kind, &y, 0, &mut l);
            let x = rand_vec(&mut r, 4);

            let mut got = x.clone();
            h.apply_right(&mut got, &mut l);

            // Reference: row-vector times dense ℋᴴ.
            let hh = h.to_matrix().conj_transpose();
            for (k, g) in got.iter().enumerate() {
                let mut want = Q::zero();
                for (j, xj) in x.iter().enumerate() {
                    want = want + *xj * hh.get(j, k);
                }
                assert!((*g - want).norm() <= 64.0 * f64::EPSILON);
            }
        }
    }

    #[test]
    fn h3_built_from_a_conjugated_row_annihilates_the_row_from_the_right() {
        let mut r = SplitMix64::new(0xB0B);
        let x = rand_vec(&mut r, 5);
        let n = vnorm(&x);
        let conj: Vec<Q> = x.iter().map(|q| q.conj()).collect();
        let mut l = OpLedger::new();
        let h = make_householder(HouseholderKind::H3, &conj, 0, &mut l);
        let mut z = x.clone();
        h.apply_right(&mut z, &mut l);
        assert!((z[0] - Q::from_real(n)).norm() <= 128.0 * f64::EPSILON * n);
        for zk in &z[1..] {
            assert!(zk.norm() <= 128.0 * f64::EPSILON * n);
        }
    }

    #[test]
    fn h2_snaps_negligible_phases_to_one() {
        let y = vec![Q::new(1.0, 2.0, 0.0, 0.0), Q::new(0.0, 1e-18, 0.0, 0.0), Q::from_real(3.0)];
        let mut l = OpLedger::new();
        let h = make_householder(HouseholderKind::H2, &y, 0, &mut l);
        assert_eq!(h.phases[1], Q::one());
        assert!(h.phases[0] != Q::one());
    }

    #[test]
    fn zero_vector_yields_the_identity() {
        let y = vec![Q::zero(); 3];
        let mut l = OpLedger::new();
        for kind in [HouseholderKind::H1, HouseholderKind::H2, HouseholderKind::H3] {
            let h = make_householder(kind, &y, 0, &mut l);
            assert!(h.is_identity());
            assert_eq!(h.target(), Q::zero());
        }
    }

    #[test]
    fn ledger_charges_match_the_cost_table() {
        let mut l = OpLedger::new();
        let y = vec![Q::i(), Q::j()];
        let h = make_householder(HouseholderKind::H3, &y, 0, &mut l);
        assert_eq!(l.generated(TransformKind::H3).assignments, 11);
        assert_eq!(l.generated(TransformKind::H3).flops, 46);
        let mut z = y.clone();
        h.apply_left(&mut z, &mut l);
        assert_eq!(l.applied(TransformKind::H3).assignments, 4);
        assert_eq!(l.applied(TransformKind::H3).flops, 184);

        let y5 = vec![Q::one(); 5];
        let h5 = make_householder(HouseholderKind::H3, &y5, 0, &mut l);
        let mut z5 = y5.clone();
        h5.apply_right(&mut z5, &mut l);
        assert_eq!(l.applied(TransformKind::H3).assignments, 4 + 7);
        assert_eq!(l.applied(TransformKind::H3).flops, 184 + 64 * 5 + 56);
    }
}

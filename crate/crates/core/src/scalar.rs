//! Floating-point scalar abstraction for the numeric kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the quaternion and matrix kernels are generic over.
///
/// `f32` and `f64` implement it; the watermarking pipeline pins itself to
/// `f64` through the aliases at the crate root.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for a small integer constant lifted into the scalar type.
    fn of(v: i32) -> Self {
        Self::from_i32(v).expect("small integer fits every float type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

//! Quaternion matrix singular value decomposition by structure-preserving
//! transforms, plus a blind color-image watermarking pipeline built on it.
//!
//! The numeric kernels (quaternions, quaternion matrices, the transforms and
//! the QSVD itself) are generic over the floating-point scalar through
//! [`Scalar`]. The imaging pipeline (codecs, attacks, watermark embedding and
//! extraction) works in `f64` and uses the concrete aliases exported below.

// STUB pub mod attack;
pub mod bench;
pub mod bidiag;
pub mod compact;
pub mod error;
pub mod givens;
pub mod householder;
pub mod image;
pub mod ledger;
pub mod qmatrix;
pub mod qsvd;
pub mod quat;
pub mod realsvd;
pub mod rmatrix;
pub mod rng;
pub mod scalar;
pub mod watermark;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Quaternion over `f64`, the scalar type used by the pipeline.
pub type Quat = quat::Quaternion<f64>;
/// Quaternion matrix over `f64`.
pub type QuatMat = qmatrix::QuatMatrix<f64>;
/// Dense real matrix over `f64`.
pub type RealMat = rmatrix::RealMatrix<f64>;
/// QSVD factorization over `f64`.
pub type QsvdF64 = qsvd::QsvdFactors<f64>;

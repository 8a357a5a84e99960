//! Scalar abstraction (exact rationals or tolerance-compared doubles) and the
//! small dense linear algebra the rest of the crate runs on.

pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod tensor;

pub use matrix::Matrix;
pub use poly::Polynomial;
pub use scalar::{cluster, rat, scalar_eq, Cluster, Mode, Rational, Scalar, Tolerance};
pub use tensor::Tensor3;

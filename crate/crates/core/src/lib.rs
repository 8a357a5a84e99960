//! Parameters of symmetric association schemes and their self-duality.
//!
//! The pipeline is: a relation-index matrix is checked against the scheme
//! axioms ([`scheme`]), decomposed into primitive idempotents ([`spectral`]),
//! and its orderings of idempotents are classified as formally and/or
//! numerically self-dual ([`duality`]). [`group_scheme`] covers the group
//! schemes of `Z_2^m` and [`poly`] the P- and Q-polynomial case.
//!
//! Every computation is generic over [`numerics::Scalar`]: use
//! [`numerics::Rational`] for exact results and `f64` for schemes with
//! irrational spectra.

pub mod duality;
pub mod error;
pub mod fixtures;
pub mod group_scheme;
pub mod numerics;
pub mod poly;
pub mod report;
pub mod scheme;
pub mod spectral;

pub use error::{Error, Result, Violation};

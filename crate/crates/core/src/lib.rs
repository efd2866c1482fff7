//! Paley-Wiener approximation on the spectrum of a finite self-adjoint operator:
//! spectral calculus, best approximation, Besov norms, the Riesz and
//! quasi-interpolation operators, and dyadic band decompositions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod decomposition;
pub mod error;
pub mod harness;
pub mod jacobi;
pub mod paley_wiener;
pub mod smoothness;
pub mod spectral;

pub use error::{Error, Result};
pub use spectral::{
    eigh, inverse_transform, spectral_transform, HilbertVector, OperatorKind,
    SpectralCoefficients, SpectralDecomposition, SymmetricOperator,
};

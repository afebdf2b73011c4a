//! Landau levels, von Neumann dimensions, L² indices and Chern numbers for
//! magnetic Laplacians on hyperbolic surfaces and good orbifolds, together
//! with the algebraic noncommutative torus and its K-theory trace ranges.
//!
//! The closed-form layers are generic over [`Scalar`], so every formula can be
//! evaluated exactly over [`Rational`] or in floating point.

pub mod cli;
pub mod error;
pub mod ktheory;
pub mod landau;
pub mod nct;
pub mod oracle;
pub mod orbifold;
pub mod scalar;
pub mod skew;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
pub use skew::SkewMatrix;

/// Deformation matrix with exact rational entries.
pub type SkewMatrixQ = SkewMatrix<Rational>;
/// Deformation matrix with double precision entries.
pub type SkewMatrixF64 = SkewMatrix<f64>;
/// Deformation matrix with single precision entries.
pub type SkewMatrixF32 = SkewMatrix<f32>;

/// Algebra element over a floating deformation.
pub type NctElementF64 = nct::NctElement<num_complex::Complex64>;
/// Algebra element over a rational deformation, with exact root-of-unity coefficients.
pub type NctElementQ = nct::NctElement<nct::PhaseSum>;

pub type SurfaceFieldQ = landau::SurfaceField<Rational>;
pub type SurfaceFieldF64 = landau::SurfaceField<f64>;
pub type SpectrumReportQ = landau::LandauSpectrumReport<Rational>;
pub type SpectrumReportF64 = landau::LandauSpectrumReport<f64>;

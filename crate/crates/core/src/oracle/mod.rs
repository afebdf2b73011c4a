//! Independent numerical check of the Landau levels: a finite-volume radial
//! eigensolver for the magnetic Laplacian on the hyperbolic plane.

pub mod radial;
pub mod tridiag;

pub use radial::{
    continuum_edge, landau_levels_numeric, radial_operator, rescale_to_unit_curvature, unit_curvature_level,
    GridParams, LevelVerdict, NumericOptions, NumericSpectrumResult, RadialProblem, SectorMatch, SectorSpectrum,
};
pub use tridiag::{lowest_eigenvalues, SymTridiagonal};

//! The twisted group algebra `ℂ(ℤ^p, σ)` of finitely supported functions on
//! the lattice, i.e. the algebraic noncommutative torus.
//!
//! Elements are generic over their coefficient ring: `Complex<f64>` for a
//! floating deformation matrix and [`PhaseSum`] for a rational one.

mod algebra;
mod clock_shift;
mod coeff;
mod element;

pub use algebra::{
    adjoint, cocycle_turns, cyclic_2cocycle, cyclic_2cocycle_reduced, derivation, gauge_generator, sigma, star_product,
    trace, unit,
};
pub use clock_shift::{clock_shift_rep, commutation_defect, represent};
pub use coeff::{Coefficient, DerivationCoefficient, PhaseScalar, PhaseSum, PRUNE_THRESHOLD};
pub use element::{LatticeVector, NctElement};

//! Finite clock-and-shift representation of the rank-two algebra with a
//! rational deformation `Θ12 = a/b`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::element::NctElement;
use crate::error::{Error, Result};

/// `(U, V)` with `U = diag(1, ω, …, ω^{b-1})`, `ω = exp(2πi a/b)`, and `V`
/// the cyclic shift `e_k ↦ e_{k+1}`. They satisfy `UV = ω VU`.
pub fn clock_shift_rep(a: i64, b: i64) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    if b <= 0 {
        return Err(Error::InvalidArgument(format!("clock-shift needs b >= 1, got {b}")));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidArgument(format!("gcd({a}, {b}) must be 1")));
    }
    let n = b as usize;
    let omega = std::f64::consts::TAU * (a.rem_euclid(b) as f64) / (b as f64);
    let u = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, omega * r as f64)
        } else {
            Complex64::zero()
        }
    });
    let v = DMatrix::from_fn(n, n, |r, c| {
        if r == (c + 1) % n {
            Complex64::one()
        } else {
            Complex64::zero()
        }
    });
    Ok((u, v))
}

/// Image of a rank-two element: `U^{(n1, n2)} ↦ V^{n2} U^{n1}`.
///
/// With this ordering the map is an algebra homomorphism for `Θ12 = a/b`.
pub fn represent(f: &NctElement<Complex64>, a: i64, b: i64) -> Result<DMatrix<Complex64>> {
    if f.rank() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: f.rank(),
        });
    }
    let (u, v) = clock_shift_rep(a, b)?;
    let n = b as usize;
    let u_inv = u.adjoint();
    let v_inv = v.adjoint();
    let power = |m: &DMatrix<Complex64>, inv: &DMatrix<Complex64>, k: i64| {
        let base = if k >= 0 { m } else { inv };
        let mut out = DMatrix::<Complex64>::identity(n, n);
        for _ in 0..k.unsigned_abs() {
            out = &out * base;
        }
        out
    };
    let mut out = DMatrix::<Complex64>::zeros(n, n);
    for (k, c) in f.terms() {
        let [n1, n2] = [k.components()[0], k.components()[1]];
        out += (power(&v, &v_inv, n2) * power(&u, &u_inv, n1)) * *c;
    }
    Ok(out)
}

/// Largest entrywise deviation from `UV = ω VU`.
pub fn commutation_defect(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>, omega: Complex64) -> f64 {
    let lhs = u * v;
    let rhs = (v * u) * omega;
    (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#![allow(dead_code)]

use hyperbolic_landau::nct::{LatticeVector, NctElement};
use hyperbolic_landau::{Rational, SkewMatrix};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

pub fn skew_f64(p: usize) -> impl Strategy<Value = SkewMatrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, p * p.saturating_sub(1) / 2)
        .prop_map(move |upper| SkewMatrix::from_upper(p, &upper).unwrap())
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=8).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn skew_rational(p: usize) -> impl Strategy<Value = SkewMatrix<Rational>> {
    prop::collection::vec(small_rational(), p * p.saturating_sub(1) / 2)
        .prop_map(move |upper| SkewMatrix::from_upper(p, &upper).unwrap())
}

pub fn lattice(p: usize, radius: i64) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-radius..=radius, p).prop_map(LatticeVector::new)
}

/// Random element with at most `max_support` terms and coefficients in the unit square.
pub fn element(p: usize, max_support: usize) -> impl Strategy<Value = NctElement<Complex64>> {
    prop::collection::vec((lattice(p, 3), -1.0f64..1.0, -1.0f64..1.0), 1..=max_support).prop_map(move |terms| {
        NctElement::from_terms(p, terms.into_iter().map(|(n, re, im)| (n, Complex64::new(re, im)))).unwrap()
    })
}

pub fn max_dist(a: &NctElement<Complex64>, b: &NctElement<Complex64>) -> f64 {
    a.max_distance(b)
}

/// `Σ_{j<k} Θ_jk a_j b_k` evaluated straight from the matrix rows.
pub fn bilinear(theta: &SkewMatrix<f64>, a: &[i64], b: &[i64]) -> f64 {
    let rows = theta.rows();
    let mut s = 0.0;
    for j in 0..a.len() {
        for k in j + 1..b.len() {
            s += rows[j][k] * (a[j] * b[k]) as f64;
        }
    }
    s
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..n {
            let factor = a[r][col].clone() / a[col][col].clone();
            let pivot_row = a[col].clone();
            for (entry, pivot) in a[r].iter_mut().zip(pivot_row).skip(col) {
                *entry -= factor.clone() * pivot;
            }
        }
    }
    det
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-12i64..=12)),
        BigInt::from(rng.gen_range(1i64..=8)),
    )
}

pub fn random_skew_f64(rng: &mut impl Rng, p: usize) -> SkewMatrix<f64> {
    let upper: Vec<f64> = (0..p * p.saturating_sub(1) / 2)
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    SkewMatrix::from_upper(p, &upper).unwrap()
}

pub fn random_skew_rational(rng: &mut impl Rng, p: usize) -> SkewMatrix<Rational> {
    let upper: Vec<Rational> = (0..p * p.saturating_sub(1) / 2).map(|_| random_rational(rng)).collect();
    SkewMatrix::from_upper(p, &upper).unwrap()
}

pub fn random_lattice(rng: &mut impl Rng, p: usize, radius: i64) -> LatticeVector {
    LatticeVector::new((0..p).map(|_| rng.gen_range(-radius..=radius)).collect())
}

pub fn random_element(rng: &mut impl Rng, p: usize, max_support: usize) -> NctElement<Complex64> {
    let len = rng.gen_range(1..=max_support);
    let terms: Vec<_> = (0..len)
        .map(|_| {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            (random_lattice(rng, p, 3), c)
        })
        .collect();
    NctElement::from_terms(p, terms).unwrap()
}

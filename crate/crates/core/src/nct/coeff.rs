//! Coefficient rings for the twisted group algebra.
//!
//! Floating deformations use `Complex<T>`. Rational deformations produce
//! phases that are exact roots of unity, which are kept as formal sums
//! [`PhaseSum`] so products, adjoints and traces can be compared exactly.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{Float, FloatConst, One, ToPrimitive, Zero};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{fract_rational, ratio, Rational, Scalar};

/// Magnitude below which floating coefficients are pruned from a support.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn conj(&self) -> Self;

    fn from_integer(n: i64) -> Self;

    /// Whether the coefficient should be dropped from a support.
    fn is_negligible(&self) -> bool;

    fn to_complex64(&self) -> Complex64;
}

/// Coefficients that can absorb the `2πi` of the gauge derivations.
pub trait DerivationCoefficient: Coefficient {
    fn two_pi_i() -> Self;
}

/// Scalars whose values can be exponentiated into unit phases `exp(2πi x)`.
pub trait PhaseScalar: Scalar {
    type Phase: Coefficient;

    fn unit_phase(turns: &Self) -> Self::Phase;

    /// `x · n`, possibly shifted by an integer. Only its class mod 1 matters.
    fn turns_times(x: &Self, n: i64) -> Self {
        x.clone() * Self::from_int(n)
    }
}

impl<T> Coefficient for Complex<T>
where
    T: Float + FloatConst + Debug + Send + Sync,
{
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_integer(n: i64) -> Self {
        Complex::new(T::from(n).expect("integer fits in float"), T::zero())
    }

    fn is_negligible(&self) -> bool {
        self.norm().to_f64().unwrap_or(0.0) < PRUNE_THRESHOLD
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl<T> DerivationCoefficient for Complex<T>
where
    T: Float + FloatConst + Debug + Send + Sync,
{
    fn two_pi_i() -> Self {
        Complex::new(T::zero(), T::TAU())
    }
}

macro_rules! impl_float_phase {
    ($f:ty) => {
        impl PhaseScalar for $f {
            type Phase = Complex<$f>;

            fn unit_phase(turns: &Self) -> Self::Phase {
                // Reducing first keeps large lattice vectors from losing the phase.
                let t = turns - turns.floor();
                Complex::from_polar(1.0, <$f as FloatConst>::TAU() * t)
            }

            fn turns_times(x: &Self, n: i64) -> Self {
                // the rounding error of the product is recovered exactly by
                // the fused multiply-add, and dropping the integer part is exact
                let n = n as $f;
                let prod = x * n;
                let err = x.mul_add(n, -prod);
                (prod - prod.floor()) + err
            }
        }
    };
}

impl_float_phase!(f32);
impl_float_phase!(f64);

impl PhaseScalar for Rational {
    type Phase = PhaseSum;

    fn unit_phase(turns: &Self) -> PhaseSum {
        PhaseSum::root(turns, Rational::one())
    }
}

/// A formal rational combination `Σ c_k · exp(2πi t_k)` of roots of unity.
///
/// Phases are normalised into `[0, 1/2)` using `exp(2πi (t + 1/2)) = -exp(2πi t)`,
/// so real signs such as `σ = -1` collapse onto the phase-zero term.
/// Formal equality implies equality of the complex values. The converse
/// holds while every phase has a power-of-two denominator; other orders carry
/// cyclotomic relations such as `1 + ζ₃ + ζ₃² = 0` that are not reduced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhaseSum {
    terms: BTreeMap<Rational, Rational>,
}

impl PhaseSum {
    /// `c · exp(2πi turns)`.
    pub fn root(turns: &Rational, c: Rational) -> Self {
        let mut out = Self::default();
        out.accumulate(turns, c);
        out
    }

    pub fn rational(c: Rational) -> Self {
        Self::root(&Rational::zero(), c)
    }

    /// `re + im·i`, with `i` the quarter-turn root.
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        let mut out = Self::rational(re);
        out.accumulate(&ratio(1, 4), im);
        out
    }

    /// `[{"turns": "t", "coeff": "c"}, ...]` in increasing phase order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(t, c)| json!({ "turns": t.to_json(), "coeff": c.to_json() }))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse("phase sum must be an array".into()))?;
        let mut out = Self::default();
        for item in items {
            let field = |k: &str| {
                item.get(k)
                    .ok_or_else(|| Error::Parse(format!("phase term is missing \"{k}\"")))
                    .and_then(Rational::from_json)
            };
            out.accumulate(&field("turns")?, field("coeff")?);
        }
        Ok(out)
    }

    fn accumulate(&mut self, turns: &Rational, c: Rational) {
        if c.is_zero() {
            return;
        }
        let half = ratio(1, 2);
        let mut t = fract_rational(turns);
        let c = if t >= half {
            t -= &half;
            -c
        } else {
            c
        };
        match self.terms.entry(t) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    /// The rational value when the sum has no irrational phase left.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Rational::zero()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }
}

impl Add for PhaseSum {
    type Output = PhaseSum;

    fn add(mut self, rhs: PhaseSum) -> PhaseSum {
        for (t, c) in rhs.terms {
            self.accumulate(&t, c);
        }
        self
    }
}

impl Sub for PhaseSum {
    type Output = PhaseSum;

    fn sub(self, rhs: PhaseSum) -> PhaseSum {
        self + (-rhs)
    }
}

impl Neg for PhaseSum {
    type Output = PhaseSum;

    fn neg(mut self) -> PhaseSum {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for PhaseSum {
    type Output = PhaseSum;

    fn mul(self, rhs: PhaseSum) -> PhaseSum {
        let mut out = PhaseSum::default();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &rhs.terms {
                out.accumulate(&(t1 + t2), c1 * c2);
            }
        }
        out
    }
}

impl Zero for PhaseSum {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PhaseSum {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Coefficient for PhaseSum {
    fn conj(&self) -> Self {
        let mut out = PhaseSum::default();
        for (t, c) in &self.terms {
            out.accumulate(&-t, c.clone());
        }
        out
    }

    fn from_integer(n: i64) -> Self {
        Self::rational(Rational::from_int(n))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_complex64(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(t, c)| {
                let angle = std::f64::consts::TAU * t.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

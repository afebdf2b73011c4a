use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::coeff::{Coefficient, PhaseSum};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A point of the lattice `ℤ^p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(components: Vec<i64>) -> Self {
        Self(components)
    }

    pub fn zero(p: usize) -> Self {
        Self(vec![0; p])
    }

    /// The `j`-th standard basis vector (zero-based).
    pub fn basis(p: usize, j: usize) -> Self {
        let mut v = vec![0; p];
        v[j] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(v: [i64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finitely supported function `ℤ^p → C`, i.e. a finite combination of
/// monomials `U^n` of the twisted group algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct NctElement<C> {
    p: usize,
    terms: BTreeMap<LatticeVector, C>,
}

impl<C: Coefficient> NctElement<C> {
    pub fn zero(p: usize) -> Self {
        Self {
            p,
            terms: BTreeMap::new(),
        }
    }

    /// The algebra unit `U^0`.
    pub fn unit(p: usize) -> Self {
        Self::monomial(p, LatticeVector::zero(p), C::one()).expect("zero vector has rank p")
    }

    /// `c · U^n`; a negligible `c` gives the zero element.
    pub fn monomial(p: usize, n: LatticeVector, c: C) -> Result<Self> {
        if n.dim() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: n.dim(),
            });
        }
        let mut out = Self::zero(p);
        out.insert(n, c);
        Ok(out)
    }

    /// Builds an element from `(n, c)` pairs, summing repeated keys.
    pub fn from_terms(p: usize, terms: impl IntoIterator<Item = (LatticeVector, C)>) -> Result<Self> {
        let mut out = Self::zero(p);
        for (n, c) in terms {
            if n.dim() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: n.dim(),
                });
            }
            out.add_term(n, c);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.p
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `n`, zero when `n` is outside the support.
    pub fn coefficient(&self, n: &LatticeVector) -> C {
        self.terms.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &C)> {
        self.terms.iter()
    }

    fn insert(&mut self, n: LatticeVector, c: C) {
        if c.is_negligible() {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, c);
        }
    }

    pub(crate) fn add_term(&mut self, n: LatticeVector, c: C) {
        let sum = match self.terms.remove(&n) {
            Some(old) => old + c,
            None => c,
        };
        self.insert(n, sum);
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other.p)?;
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.add_term(n.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.p);
        for (n, v) in &self.terms {
            out.insert(n.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Applies `f` to each coefficient, pruning negligible results.
    pub fn map_coefficients<D: Coefficient>(&self, mut f: impl FnMut(&LatticeVector, &C) -> D) -> NctElement<D> {
        let mut out = NctElement::zero(self.p);
        for (n, c) in &self.terms {
            out.insert(n.clone(), f(n, c));
        }
        out
    }

    pub fn to_complex(&self) -> NctElement<Complex64> {
        self.map_coefficients(|_, c| c.to_complex64())
    }

    pub(crate) fn check_rank(&self, p: usize) -> Result<()> {
        if self.p != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: self.p,
            });
        }
        Ok(())
    }
}

impl NctElement<Complex64> {
    /// Largest coefficientwise distance to `other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        let keys = self.terms.keys().chain(other.terms.keys());
        keys.map(|n| (self.coefficient(n) - other.coefficient(n)).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = ElementDoc {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(n, c)| TermDoc {
                    n: n.0.clone(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("element documents always serialize")
    }

    /// Reads `{"p", "terms": [{"n", "re", "im"}]}`; documents in the exact
    /// `phases` form are evaluated numerically.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let exact_form = v
            .get("terms")
            .and_then(serde_json::Value::as_array)
            .is_some_and(|ts| ts.iter().any(|t| t.get("phases").is_some()));
        if exact_form {
            return NctElement::<PhaseSum>::from_json(v).map(|f| f.to_complex());
        }
        let doc: ElementDoc =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("element document: {e}")))?;
        Self::from_terms(
            doc.p,
            doc.terms
                .into_iter()
                .map(|t| (LatticeVector(t.n), Complex64::new(t.re, t.im))),
        )
    }
}

impl NctElement<PhaseSum> {
    /// `{"p", "terms": [{"n", "phases": [{"turns", "coeff"}]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(n, c)| serde_json::json!({ "n": n.0, "phases": c.to_json() }))
            .collect();
        serde_json::json!({ "p": self.p, "terms": terms })
    }

    /// Reads the exact form above, or the `re`/`im` form with each part an
    /// `"a/b"` string or a decimal literal.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p = v
            .get("p")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Parse("element document needs an integer \"p\"".into()))?;
        let terms = v
            .get("terms")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Parse("element document needs a \"terms\" array".into()))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let n: Vec<i64> = serde_json::from_value(t.get("n").cloned().unwrap_or_default())
                .map_err(|e| Error::Parse(format!("term index: {e}")))?;
            let c = match t.get("phases") {
                Some(phases) => PhaseSum::from_json(phases)?,
                None => {
                    let part = |k: &str| t.get(k).map_or(Ok(Rational::from_int(0)), Rational::from_json);
                    PhaseSum::gaussian(part("re")?, part("im")?)
                }
            };
            parsed.push((LatticeVector(n), c));
        }
        Self::from_terms(p as usize, parsed)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementDoc {
    p: usize,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    n: Vec<i64>,
    re: f64,
    im: f64,
}

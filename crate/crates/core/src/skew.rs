//! Real skew-symmetric deformation matrices.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A `p × p` skew-symmetric matrix, stored row-major.
///
/// Odd and zero dimensions are representable; operations that need an even
/// rank check it themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<S> {
    p: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SkewMatrix<S> {
    /// Validates the rows: square, exactly zero diagonal, and
    /// `|a_jk + a_kj| <= S::skew_tolerance()` off the diagonal.
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self> {
        let p = rows.len();
        let mut entries = Vec::with_capacity(p * p);
        for row in rows {
            if row.len() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        let tol = S::skew_tolerance();
        for j in 0..p {
            if !entries[j * p + j].is_zero() {
                return Err(Error::NotSkewSymmetric { row: j, col: j });
            }
            for k in j + 1..p {
                let sum = entries[j * p + k].clone() + entries[k * p + j].clone();
                if sum.abs() > tol {
                    return Err(Error::NotSkewSymmetric { row: j, col: k });
                }
            }
        }
        Ok(Self { p, entries })
    }

    /// Builds the matrix from its strict upper triangle, listed row by row
    /// (`Θ12, Θ13, …, Θ1p, Θ23, …`).
    pub fn from_upper(p: usize, upper: &[S]) -> Result<Self> {
        let expected = p * p.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: upper.len(),
            });
        }
        let mut entries = vec![S::zero(); p * p];
        let mut it = upper.iter();
        for j in 0..p {
            for k in j + 1..p {
                let v = it.next().expect("length checked").clone();
                entries[k * p + j] = -v.clone();
                entries[j * p + k] = v;
            }
        }
        Ok(Self { p, entries })
    }

    pub fn zeros(p: usize) -> Self {
        Self {
            p,
            entries: vec![S::zero(); p * p],
        }
    }

    /// Sets `Θ_jk = v` and `Θ_kj = -v` (zero-based indices, `j != k`).
    pub fn set(&mut self, j: usize, k: usize, v: S) {
        assert!(j != k, "diagonal of a skew matrix is fixed at zero");
        self.entries[k * self.p + j] = -v.clone();
        self.entries[j * self.p + k] = v;
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    /// Entry at zero-based `(j, k)`.
    pub fn get(&self, j: usize, k: usize) -> &S {
        &self.entries[j * self.p + k]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries
            .chunks(self.p.max(1))
            .take(self.p)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Principal submatrix on the given zero-based indices.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let n = indices.len();
        let mut entries = Vec::with_capacity(n * n);
        for &j in indices {
            for &k in indices {
                entries.push(self.get(j, k).clone());
            }
        }
        Self { p: n, entries }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SkewMatrix<T> {
        SkewMatrix {
            p: self.p,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `{"p": p, "entries": [[...], ...]}` with rational entries as strings.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(S::to_json).collect()))
            .collect();
        json!({ "p": self.p, "entries": rows })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let p = v
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("skew matrix needs integer field \"p\"".into()))? as usize;
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("skew matrix needs array field \"entries\"".into()))?;
        if rows.len() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: rows.len(),
            });
        }
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                    .iter()
                    .map(S::from_json)
                    .collect::<Result<Vec<S>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }
}

/// True when every entry of a matrix document is written as a string,
/// i.e. the document asks for exact arithmetic.
pub fn json_entries_are_exact(v: &Value) -> bool {
    v.get("entries")
        .and_then(Value::as_array)
        .map(|rows| {
            rows.iter()
                .all(|r| r.as_array().is_some_and(|r| r.iter().all(Value::is_string)))
        })
        .unwrap_or(false)
}

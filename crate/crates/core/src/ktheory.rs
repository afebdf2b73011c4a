//! Pfaffians and the generator sets for the ranges of the trace and of the
//! higher trace on `K_0` of the noncommutative torus.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::skew::SkewMatrix;

/// Pfaffian of a skew matrix; `Pf` of the empty matrix is 1.
///
/// Expands along the first row with memoisation on the remaining index set,
/// so rational input gives an exact result.
pub fn pfaffian<S: Scalar>(m: &SkewMatrix<S>) -> Result<S> {
    let p = m.dim();
    if !p.is_multiple_of(2) {
        return Err(Error::OddDimension(p));
    }
    if p > 62 {
        return Err(Error::InvalidArgument(format!(
            "Pfaffian of a {p}x{p} matrix is out of reach"
        )));
    }
    let full: u64 = if p == 0 { 0 } else { (1u64 << p) - 1 };
    let mut memo = HashMap::new();
    Ok(pfaffian_of_mask(m, full, &mut memo))
}

fn pfaffian_of_mask<S: Scalar>(m: &SkewMatrix<S>, mask: u64, memo: &mut HashMap<u64, S>) -> S {
    if mask == 0 {
        return S::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << first);
    let mut total = S::zero();
    let mut positive = true;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(first, j);
        if !a.is_zero() {
            let term = a.clone() * pfaffian_of_mask(m, rest & !(1u64 << j), memo);
            total = if positive { total + term } else { total - term };
        }
        positive = !positive;
    }
    memo.insert(mask, total.clone());
    total
}

/// All subsets of `{1..p}` with an even number of elements, ordered by size
/// and then lexicographically.
pub fn even_subsets(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(1usize << p.saturating_sub(1));
    for size in (0..=p).step_by(2) {
        let mut combo: Vec<usize> = (1..=size).collect();
        loop {
            out.push(combo.clone());
            // advance to the next combination in lexicographic order
            let mut i = size;
            while i > 0 && combo[i - 1] == p - size + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for k in i..size {
                combo[k] = combo[k - 1] + 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorTag {
    /// The `ℤ` summand from the empty subset.
    Unit,
    /// A proper nonempty subset.
    Partial,
    /// The full index set.
    Top,
    /// A higher-trace generator for `I_i = {i, i+g}` and the subset `I ⊇ I_i`.
    Higher { i: usize, parent: Vec<usize> },
}

impl fmt::Display for GeneratorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unit => write!(f, "unit"),
            Self::Partial => write!(f, "partial"),
            Self::Top => write!(f, "top"),
            Self::Higher { i, .. } => write!(f, "higher({i})"),
        }
    }
}

/// One generator of a trace-range subgroup: the Pfaffian of `Θ_subset`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetGenerator<S> {
    /// One-based, sorted indices of the submatrix whose Pfaffian is `value`.
    pub subset: Vec<usize>,
    pub value: S,
    pub tag: GeneratorTag,
}

impl<S: Scalar> SubsetGenerator<S> {
    pub fn to_json(&self) -> Value {
        let mut doc = json!({
            "subset": self.subset,
            "value": self.value.to_json(),
            "tag": self.tag.to_string(),
        });
        if let GeneratorTag::Higher { parent, .. } = &self.tag {
            doc["parent"] = json!(parent);
        }
        doc
    }
}

fn pfaffian_of_subset<S: Scalar>(theta: &SkewMatrix<S>, subset: &[usize]) -> S {
    let zero_based: Vec<usize> = subset.iter().map(|i| i - 1).collect();
    pfaffian(&theta.submatrix(&zero_based)).expect("even subsets give even submatrices")
}

/// Generators of `τ(K_0(A_Θ)) = ℤ + Σ_{0<|I|<p} Pf(Θ_I) ℤ + Pf(Θ) ℤ`, one per
/// even subset in [`even_subsets`] order.
pub fn trace_range_generators<S: Scalar>(theta: &SkewMatrix<S>) -> Result<Vec<SubsetGenerator<S>>> {
    let p = theta.dim();
    if !p.is_multiple_of(2) {
        return Err(Error::OddDimension(p));
    }
    Ok(even_subsets(p)
        .into_iter()
        .map(|subset| {
            let tag = match subset.len() {
                0 => GeneratorTag::Unit,
                n if n == p => GeneratorTag::Top,
                _ => GeneratorTag::Partial,
            };
            let value = pfaffian_of_subset(theta, &subset);
            SubsetGenerator { subset, value, tag }
        })
        .collect())
}

/// Generators of the higher trace range
/// `Σ_{i=1}^{g} Σ_{I ⊇ I_i} Pf(Θ_{I \ I_i}) ℤ`, with `I_i = {i, i+g}`.
///
/// Ordered by `i`, then by `I` in [`even_subsets`] order. Coinciding values
/// are kept; the tag records `(i, I)`.
pub fn higher_trace_range_generators<S: Scalar>(theta: &SkewMatrix<S>, g: usize) -> Result<Vec<SubsetGenerator<S>>> {
    let p = theta.dim();
    if p != 2 * g {
        return Err(Error::HalfRankMismatch { p, g });
    }
    let subsets = even_subsets(p);
    let mut out = Vec::new();
    for i in 1..=g {
        let pair = [i, i + g];
        for parent in subsets.iter().filter(|s| pair.iter().all(|k| s.contains(k))) {
            let subset: Vec<usize> = parent.iter().copied().filter(|k| !pair.contains(k)).collect();
            let value = pfaffian_of_subset(theta, &subset);
            out.push(SubsetGenerator {
                subset,
                value,
                tag: GeneratorTag::Higher {
                    i,
                    parent: parent.clone(),
                },
            });
        }
    }
    Ok(out)
}

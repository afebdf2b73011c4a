//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

use num_traits::Float;

use crate::error::{Error, Result};

/// A real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    diag: Vec<T>,
    off: Vec<T>,
}

impl<T: Float> SymTridiagonal<T> {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidArgument("tridiagonal matrix must be non-empty".into()));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len() - 1,
                found: off.len(),
            });
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn off_diag(&self) -> &[T] {
        &self.off
    }

    /// Dense row-major copy; intended for small matrices in tests and reports.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        let mut m = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.off[i];
                m[i + 1][i] = self.off[i];
            }
        }
        m
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y = y + self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y = y + self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (T, T) {
        let n = self.dim();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut radius = T::zero();
            if i > 0 {
                radius = radius + self.off[i - 1].abs();
            }
            if i + 1 < n {
                radius = radius + self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sylvester inertia of `T - xI`).
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut d = self.diag[0] - x;
        for i in 0..self.dim() {
            if i > 0 {
                d = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / d;
            }
            if d == T::zero() {
                d = -tiny;
            }
            if d < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (zero-based), bisected to machine precision
    /// inside `[lo, hi]`, which must bracket it.
    fn bisect(&self, k: usize, mut lo: T, mut hi: T, abs_tol: T) -> T {
        let two = T::one() + T::one();
        let eps = T::epsilon();
        loop {
            let mid = (lo + hi) / two;
            let width = hi - lo;
            let tol = abs_tol.max(two * eps * lo.abs().max(hi.abs()));
            if mid <= lo || mid >= hi || width <= tol {
                return mid;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<T>> {
        if k > self.dim() {
            return Err(Error::InvalidArgument(format!(
                "asked for {k} eigenvalues of a {}x{} matrix",
                self.dim(),
                self.dim()
            )));
        }
        let (glo, ghi) = self.gershgorin_bounds();
        let pad = (ghi - glo).abs().max(T::one()) * T::epsilon() * (T::one() + T::one());
        let (glo, ghi) = (glo - pad, ghi + pad);
        let abs_tol = T::epsilon() * glo.abs().max(ghi.abs());
        let mut out = Vec::with_capacity(k);
        let mut lo = glo;
        for i in 0..k {
            let v = self.bisect(i, lo, ghi, abs_tol);
            out.push(v);
            lo = v.max(glo);
            // a repeated eigenvalue may sit exactly at the previous value
            if self.count_below(lo) > i + 1 {
                lo = glo;
            }
        }
        Ok(out)
    }

    /// All eigenvalues strictly below `x`, ascending.
    pub fn eigenvalues_below(&self, x: T) -> Vec<T> {
        let n = self.count_below(x);
        self.lowest_eigenvalues(n).expect("count never exceeds the dimension")
    }
}

/// Free-function form of [`SymTridiagonal::lowest_eigenvalues`].
pub fn lowest_eigenvalues<T: Float>(system: &SymTridiagonal<T>, k: usize) -> Result<Vec<T>> {
    system.lowest_eigenvalues(k)
}

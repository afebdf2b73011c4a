//! Closed-form Landau spectrum of the magnetic Laplacian on the maximal
//! abelian cover of a genus `g` surface with field strength `θ`.
//!
//! The metric has constant Gauss curvature `2 - 2g`, so the base surface has
//! volume `2π`. Every quantity is exact when `θ` is rational.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Genus and field strength of a hyperbolic surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceField<S> {
    pub g: u32,
    pub theta: S,
}

impl<S: Scalar> SurfaceField<S> {
    pub fn new(g: u32, theta: S) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidSurface(format!("genus must be at least 2, got {g}")));
        }
        Ok(Self { g, theta })
    }

    /// `2g - 2`, minus the Euler characteristic.
    pub fn curvature_scale(&self) -> S {
        S::from_int(2 * self.g as i64 - 2)
    }

    fn require_positive_field(&self) -> Result<()> {
        if self.theta <= S::zero() {
            return Err(Error::InvalidSurface(format!(
                "field strength must be positive, got {}",
                self.theta.to_text()
            )));
        }
        Ok(())
    }
}

/// Holomorphic vector bundle data entering the L² Riemann–Roch count.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleData<S> {
    pub deg: S,
    pub rank: u32,
}

impl<S: Scalar> BundleData<S> {
    pub fn new(deg: S, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("bundle rank must be at least 1".into()));
        }
        Ok(Self { deg, rank })
    }

    /// `K^{-q}`: rank one, degree `-q(2g - 2)`.
    pub fn canonical_power(g: u32, q: u32) -> Self {
        Self {
            deg: S::from_int(-(q as i64) * (2 * g as i64 - 2)),
            rank: 1,
        }
    }
}

/// Largest `m` with `θ - m(2g - 2) > 0` (strict); `0` when no level is certified.
pub fn max_landau_level<S: Scalar>(s: &SurfaceField<S>) -> Result<u32> {
    s.require_positive_field()?;
    if s.g < 2 {
        return Err(Error::InvalidSurface(format!("genus must be at least 2, got {}", s.g)));
    }
    let k = s.curvature_scale();
    let ratio = s.theta.clone() / k.clone();
    let estimate = ratio
        .floor_int()
        .ok_or_else(|| Error::InvalidSurface(format!("field strength {} is out of range", s.theta.to_text())))?;
    // Settle rounding at the strict boundary with direct comparisons.
    let mut m = estimate.max(0);
    while m > 0 && s.theta.clone() - S::from_int(m) * k.clone() <= S::zero() {
        m -= 1;
    }
    while s.theta.clone() - S::from_int(m + 1) * k.clone() > S::zero() {
        m += 1;
    }
    u32::try_from(m).map_err(|_| Error::InvalidSurface("cutoff level does not fit in u32".into()))
}

fn check_level<S: Scalar>(s: &SurfaceField<S>, q: i64, inclusive: bool) -> Result<u32> {
    let m = max_landau_level(s)? as i64;
    let hi = if inclusive { m } else { m - 1 };
    if q < 0 || q > hi {
        let allowed = if hi < 0 {
            "none".to_string()
        } else {
            format!("0..={hi}")
        };
        return Err(Error::LevelOutOfRange { q, allowed });
    }
    Ok(q as u32)
}

fn mu<S: Scalar>(s: &SurfaceField<S>, q: u32) -> S {
    let q = q as i64;
    S::from_int(2 * q + 1) * s.theta.clone() - S::from_int(q * (q + 1)) * s.curvature_scale()
}

/// `μ_q = (2q+1)θ - q(q+1)(2g-2)` for `0 <= q <= m`.
pub fn landau_eigenvalue<S: Scalar>(s: &SurfaceField<S>, q: i64) -> Result<S> {
    let q = check_level(s, q, true)?;
    Ok(mu(s, q))
}

/// Eigenvalue of the Dolbeault Laplacian, `(μ_q - θ) / 2`.
pub fn dolbeault_eigenvalue<S: Scalar>(s: &SurfaceField<S>, q: i64) -> Result<S> {
    let mu = landau_eigenvalue(s, q)?;
    Ok((mu - s.theta.clone()) / S::from_int(2))
}

/// `dim_τ(E_{μ_q}) = (2q+1)(1-g) + θ` for `0 <= q < m`.
pub fn von_neumann_dimension<S: Scalar>(s: &SurfaceField<S>, q: i64) -> Result<S> {
    let q = check_level(s, q, false)? as i64;
    let dim = S::from_int((2 * q + 1) * (1 - s.g as i64)) + s.theta.clone();
    if dim <= S::zero() {
        return Err(Error::LevelOutOfRange {
            q,
            allowed: "positive von Neumann dimension".into(),
        });
    }
    Ok(dim)
}

/// L² Riemann–Roch: `deg E + rk(E) θ + (1 - g) rk(E)`. Any real `θ` is allowed.
pub fn l2_index<S: Scalar>(s: &SurfaceField<S>, e: &BundleData<S>) -> S {
    let rank = S::from_int(e.rank as i64);
    e.deg.clone() + rank.clone() * s.theta.clone() + S::from_int(1 - s.g as i64) * rank
}

/// Whether `(q+1)(2g-2) - θ < 0`, the condition under which `h^1` vanishes for `K^{-q}`.
pub fn vanishing_h1<S: Scalar>(s: &SurfaceField<S>, q: u32) -> bool {
    S::from_int(q as i64 + 1) * s.curvature_scale() - s.theta.clone() < S::zero()
}

/// `scale · (μ_q + R/6)` with scalar curvature `R = 2(2 - 2g)`.
pub fn schrodinger_eigenvalue<S: Scalar>(s: &SurfaceField<S>, q: i64, scale: S) -> Result<S> {
    if scale <= S::zero() {
        return Err(Error::InvalidArgument(format!(
            "scale must be positive, got {}",
            scale.to_text()
        )));
    }
    let r = S::from_int(2 * (2 - 2 * s.g as i64));
    Ok(scale * (landau_eigenvalue(s, q)? + r / S::from_int(6)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandauLevel<S> {
    pub q: u32,
    pub mu: S,
    pub dolbeault: S,
    pub dim_tau: S,
}

/// Certified levels below `μ_m`, together with `μ_m` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct LandauSpectrumReport<S> {
    pub surface: SurfaceField<S>,
    pub m: u32,
    pub levels: Vec<LandauLevel<S>>,
    /// `μ_m`: an eigenvalue, but its isolation is not certified.
    pub boundary_mu: S,
}

pub fn spectrum_report<S: Scalar>(s: &SurfaceField<S>) -> Result<LandauSpectrumReport<S>> {
    let m = max_landau_level(s)?;
    let levels = (0..m)
        .map(|q| {
            debug_assert!(vanishing_h1(s, q));
            let q_i = q as i64;
            Ok(LandauLevel {
                q,
                mu: landau_eigenvalue(s, q_i)?,
                dolbeault: dolbeault_eigenvalue(s, q_i)?,
                dim_tau: von_neumann_dimension(s, q_i)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LandauSpectrumReport {
        surface: s.clone(),
        m,
        levels,
        boundary_mu: mu(s, m),
    })
}

impl<S: Scalar> LandauSpectrumReport<S> {
    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|l| {
                json!({
                    "q": l.q,
                    "mu": l.mu.to_json(),
                    "dolbeault": l.dolbeault.to_json(),
                    "dim_tau": l.dim_tau.to_json(),
                })
            })
            .collect();
        json!({
            "g": self.surface.g,
            "theta": self.surface.theta.to_json(),
            "m": self.m,
            "levels": levels,
            "boundary_mu": self.boundary_mu.to_json(),
            "boundary_certified": false,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,mu,dolbeault,dim_tau\n");
        for l in &self.levels {
            out.push_str(&format!(
                "{},{},{},{}\n",
                l.q,
                l.mu.to_text(),
                l.dolbeault.to_text(),
                l.dim_tau.to_text()
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn surf(g: u32, theta: i64) -> SurfaceField<Rational> {
        SurfaceField::new(g, ratio(theta, 1)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| ratio(x, 1)).collect()
    }

    #[test]
    fn cutoff_hand_values() {
        assert_eq!(max_landau_level(&surf(2, 10)).unwrap(), 4);
        assert_eq!(max_landau_level(&surf(2, 2)).unwrap(), 0);
        assert_eq!(max_landau_level(&surf(3, 9)).unwrap(), 2);
        assert_eq!(max_landau_level(&SurfaceField::new(2, 10.0).unwrap()).unwrap(), 4);
        assert_eq!(max_landau_level(&SurfaceField::new(2, 10.000001).unwrap()).unwrap(), 5);
        assert_eq!(
            max_landau_level(&SurfaceField::new(2, ratio(1, 3)).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn spectral_operations_reject_bad_input() {
        assert!(SurfaceField::new(1, 1.0).is_err());
        assert!(SurfaceField::new(0, 1.0).is_err());
        assert!(max_landau_level(&surf(2, 0)).is_err());
        assert!(max_landau_level(&surf(2, -3)).is_err());
        assert!(landau_eigenvalue(&surf(2, 10), 5).is_err());
        assert!(landau_eigenvalue(&surf(2, 10), -1).is_err());
        assert!(von_neumann_dimension(&surf(2, 10), 4).is_err());
        assert!(schrodinger_eigenvalue(&surf(2, 10), 0, ratio(0, 1)).is_err());
    }

    #[test]
    fn eigenvalue_hand_values() {
        assert_eq!(landau_eigenvalue(&surf(2, 10), 0).unwrap(), ratio(10, 1));
        assert_eq!(landau_eigenvalue(&surf(2, 10), 2).unwrap(), ratio(38, 1));
        assert_eq!(landau_eigenvalue(&surf(3, 9), 1).unwrap(), ratio(19, 1));
        // q = m is allowed for the eigenvalue itself
        assert_eq!(landau_eigenvalue(&surf(2, 10), 4).unwrap(), ratio(50, 1));
    }

    #[test]
    fn dolbeault_hand_values() {
        assert_eq!(dolbeault_eigenvalue(&surf(2, 10), 0).unwrap(), ratio(0, 1));
        assert_eq!(dolbeault_eigenvalue(&surf(2, 10), 1).unwrap(), ratio(8, 1));
        assert_eq!(dolbeault_eigenvalue(&surf(2, 10), 3).unwrap(), ratio(18, 1));
    }

    #[test]
    fn dimension_hand_values() {
        assert_eq!(von_neumann_dimension(&surf(2, 10), 0).unwrap(), ratio(9, 1));
        assert_eq!(von_neumann_dimension(&surf(2, 10), 3).unwrap(), ratio(3, 1));
        assert_eq!(von_neumann_dimension(&surf(3, 9), 1).unwrap(), ratio(3, 1));
    }

    #[test]
    fn index_hand_values() {
        let e = BundleData::new(ratio(-4, 1), 1).unwrap();
        assert_eq!(l2_index(&surf(2, 10), &e), ratio(5, 1));
        assert_eq!(
            l2_index(&surf(2, 10), &e),
            von_neumann_dimension(&surf(2, 10), 2).unwrap()
        );
        let e = BundleData::new(ratio(3, 1), 2).unwrap();
        assert_eq!(l2_index(&surf(2, 0), &e), ratio(1, 1));
        let e = BundleData::new(ratio(0, 1), 1).unwrap();
        assert_eq!(l2_index(&surf(2, 0), &e), ratio(-1, 1));
        assert!(BundleData::new(ratio(0, 1), 0).is_err());
    }

    #[test]
    fn vanishing_hand_values() {
        assert!(vanishing_h1(&surf(2, 10), 3));
        assert!(!vanishing_h1(&surf(2, 10), 4));
        assert!(vanishing_h1(&SurfaceField::new(2, ratio(5, 2)).unwrap(), 0));
        assert!(vanishing_h1(&SurfaceField::new(2, 2.5).unwrap(), 0));
    }

    #[test]
    fn report_hand_values() {
        let r = spectrum_report(&surf(2, 10)).unwrap();
        assert_eq!(r.m, 4);
        assert_eq!(
            r.levels.iter().map(|l| l.mu.clone()).collect::<Vec<_>>(),
            ints(&[10, 26, 38, 46])
        );
        assert_eq!(
            r.levels.iter().map(|l| l.dim_tau.clone()).collect::<Vec<_>>(),
            ints(&[9, 7, 5, 3])
        );
        assert_eq!(r.boundary_mu, ratio(50, 1));

        let r = spectrum_report(&surf(2, 2)).unwrap();
        assert_eq!(r.m, 0);
        assert!(r.levels.is_empty());

        let r = spectrum_report(&surf(3, 9)).unwrap();
        assert_eq!(
            r.levels.iter().map(|l| l.mu.clone()).collect::<Vec<_>>(),
            ints(&[9, 19])
        );
        assert_eq!(
            r.levels.iter().map(|l| l.dim_tau.clone()).collect::<Vec<_>>(),
            ints(&[7, 3])
        );
    }

    #[test]
    fn schrodinger_hand_values() {
        let s = surf(2, 10);
        assert_eq!(schrodinger_eigenvalue(&s, 0, ratio(1, 1)).unwrap(), ratio(28, 3));
        assert_eq!(schrodinger_eigenvalue(&s, 1, ratio(1, 1)).unwrap(), ratio(76, 3));
        assert_eq!(schrodinger_eigenvalue(&s, 1, ratio(1, 2)).unwrap(), ratio(38, 3));
    }

    #[test]
    fn csv_and_json_rendering() {
        let r = spectrum_report(&surf(2, 10)).unwrap();
        assert_eq!(
            r.to_csv(),
            "q,mu,dolbeault,dim_tau\n0,10,0,9\n1,26,8,7\n2,38,14,5\n3,46,18,3\n"
        );
        let v = r.to_json();
        assert_eq!(v["boundary_mu"], json!("50"));
        assert_eq!(v["boundary_certified"], json!(false));
        assert_eq!(v["levels"][1]["mu"], json!("26"));

        let rf = spectrum_report(&SurfaceField::new(2, 10.0).unwrap()).unwrap();
        assert_eq!(rf.to_csv(), r.to_csv());
        assert_eq!(rf.to_json()["levels"][1]["mu"], json!(26.0));
    }
}

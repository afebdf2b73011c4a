//! Riemann–Hurwitz bookkeeping for good orbifolds `X = X'/Γ` and the Chern
//! numbers of the Landau eigenspace bundles.

use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_fraction, Rational, Scalar};

/// A ramified cover `X' → X = X'/Γ`, described per `Γ`-orbit of ramification
/// points: each entry of `orbit_orders` is the isotropy order `n_i` shared by
/// the `N / n_i` points of that orbit.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct OrbifoldCoverData {
    pub g_cover: u32,
    pub group_order: u32,
    #[serde(default)]
    pub orbit_orders: Vec<u32>,
}

impl OrbifoldCoverData {
    pub fn new(g_cover: u32, group_order: u32, orbit_orders: Vec<u32>) -> Result<Self> {
        let d = Self {
            g_cover,
            group_order,
            orbit_orders,
        };
        d.validate()?;
        Ok(d)
    }

    /// Checks orders against the group; solvability is checked by
    /// [`riemann_hurwitz_base_genus`].
    pub fn validate(&self) -> Result<()> {
        if self.group_order == 0 {
            return Err(Error::InvalidCover("group order must be at least 1".into()));
        }
        for &n in &self.orbit_orders {
            if n < 2 {
                return Err(Error::InvalidCover(format!("isotropy order {n} must be at least 2")));
            }
            if !self.group_order.is_multiple_of(n) {
                return Err(Error::InvalidCover(format!(
                    "isotropy order {n} does not divide the group order {}",
                    self.group_order
                )));
            }
        }
        Ok(())
    }

    /// `Σ_i (N / n_i)(n_i - 1)`, the ramification term summed over points.
    fn ramification_sum(&self) -> i64 {
        let big_n = self.group_order as i64;
        self.orbit_orders
            .iter()
            .map(|&n| (big_n / n as i64) * (n as i64 - 1))
            .sum()
    }
}

/// Base genus `g` from `2g' - 2 = N(2g - 2) + Σ_i (N / n_i)(n_i - 1)`.
pub fn riemann_hurwitz_base_genus(d: &OrbifoldCoverData) -> Result<u32> {
    d.validate()?;
    let big_n = d.group_order as i64;
    let rhs = 2 * d.g_cover as i64 - 2 - d.ramification_sum();
    if rhs % big_n != 0 {
        return Err(Error::InvalidCover(format!("2g - 2 = {rhs}/{big_n} is not an integer")));
    }
    let two_g = rhs / big_n + 2;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::InvalidCover(format!(
            "base genus {two_g}/2 is not a non-negative integer"
        )));
    }
    Ok((two_g / 2) as u32)
}

/// Number of ramification points in the cover, `n = Σ_i N / n_i`.
pub fn total_ramification_points(d: &OrbifoldCoverData) -> Result<u64> {
    d.validate()?;
    Ok(d.orbit_orders.iter().map(|&n| (d.group_order / n) as u64).sum())
}

/// `2g - 2 + #(R/Γ) + (2 - n)/|Γ|`, exact.
pub fn orbifold_chern_number(d: &OrbifoldCoverData) -> Result<Rational> {
    let g = riemann_hurwitz_base_genus(d)? as i64;
    let n = total_ramification_points(d)? as i64;
    let orbits = d.orbit_orders.len() as i64;
    Ok(Rational::from_int(2 * g - 2 + orbits) + Rational::from_int(2 - n) / Rational::from_int(d.group_order as i64))
}

/// `2g' / |Γ|`, the value the Chern number must reproduce.
pub fn cover_volume_ratio(d: &OrbifoldCoverData) -> Rational {
    Rational::from_int(2 * d.g_cover as i64) / Rational::from_int(d.group_order.max(1) as i64)
}

/// Orbifold Euler characteristic `2 - 2g - Σ_i (1 - 1/n_i)`.
pub fn orbifold_euler_characteristic(d: &OrbifoldCoverData) -> Result<Rational> {
    let g = riemann_hurwitz_base_genus(d)? as i64;
    let defect = d
        .orbit_orders
        .iter()
        .map(|&n| Rational::one() - Rational::one() / Rational::from_int(n as i64))
        .fold(Rational::zero(), |a, b| a + b);
    Ok(Rational::from_int(2 - 2 * g) - defect)
}

/// The Chern number `2g` of each eigenspace bundle on a smooth surface.
pub fn smooth_chern_number(g: u32) -> Result<u64> {
    if g < 2 {
        return Err(Error::InvalidSurface(format!("genus must be at least 2, got {g}")));
    }
    Ok(2 * g as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChernReport {
    pub base_genus: u32,
    pub n_points: u64,
    pub n_orbits: usize,
    pub chern: Rational,
    pub cover_identity_check: bool,
    /// Negative orbifold Euler characteristic. Reported, not enforced.
    pub hyperbolic: bool,
}

pub fn chern_report(d: &OrbifoldCoverData) -> Result<ChernReport> {
    let chern = orbifold_chern_number(d)?;
    Ok(ChernReport {
        base_genus: riemann_hurwitz_base_genus(d)?,
        n_points: total_ramification_points(d)?,
        n_orbits: d.orbit_orders.len(),
        cover_identity_check: chern == cover_volume_ratio(d),
        hyperbolic: orbifold_euler_characteristic(d)? < Rational::zero(),
        chern,
    })
}

impl ChernReport {
    pub fn to_json(&self) -> Value {
        json!({
            "base_genus": self.base_genus,
            "n_points": self.n_points,
            "n_orbits": self.n_orbits,
            "chern": format_fraction(&self.chern),
            "cover_identity_check": self.cover_identity_check,
            "hyperbolic": self.hyperbolic,
        })
    }
}

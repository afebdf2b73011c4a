use num_traits::{One, Zero};

use super::coeff::{Coefficient, DerivationCoefficient, PhaseScalar};
use super::element::{LatticeVector, NctElement};
use crate::error::{Error, Result};
use crate::skew::SkewMatrix;

/// Exponent of the twisting cocycle in turns, `Σ_{j<k} Θ_jk γ_j γ'_k`.
/// Float scalars return it modulo integers.
pub fn cocycle_turns<S: PhaseScalar>(
    theta: &SkewMatrix<S>,
    gamma: &LatticeVector,
    gamma_prime: &LatticeVector,
) -> Result<S> {
    let p = theta.dim();
    for v in [gamma, gamma_prime] {
        if v.dim() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: v.dim(),
            });
        }
    }
    let (a, b) = (gamma.components(), gamma_prime.components());
    let mut turns = S::zero();
    for (j, &aj) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
        for (k, &bk) in b.iter().enumerate().skip(j + 1).filter(|(_, &x)| x != 0) {
            turns = turns + S::turns_times(theta.get(j, k), aj * bk);
        }
    }
    Ok(turns)
}

/// The `U(1)`-valued 2-cocycle `σ(γ, γ') = exp(2πi Σ_{j<k} Θ_jk γ_j γ'_k)`.
pub fn sigma<S: PhaseScalar>(
    theta: &SkewMatrix<S>,
    gamma: &LatticeVector,
    gamma_prime: &LatticeVector,
) -> Result<S::Phase> {
    cocycle_turns(theta, gamma, gamma_prime).map(|t| S::unit_phase(&t))
}

/// Twisted convolution `(f ⋆ g)(γ) = Σ_{γ1+γ2=γ} f(γ1) g(γ2) σ(γ1, γ2)`.
pub fn star_product<S: PhaseScalar>(
    f: &NctElement<S::Phase>,
    g: &NctElement<S::Phase>,
    theta: &SkewMatrix<S>,
) -> Result<NctElement<S::Phase>> {
    let p = theta.dim();
    f.check_rank(p)?;
    g.check_rank(p)?;
    let mut out = NctElement::zero(p);
    for (a, fa) in f.terms() {
        for (b, gb) in g.terms() {
            let phase = sigma(theta, a, b)?;
            out.add_term(a.plus(b), fa.clone() * gb.clone() * phase);
        }
    }
    Ok(out)
}

/// Involution `f*(γ) = conj(f(-γ)) · conj(σ(-γ, γ))`, which makes every
/// monomial unitary.
pub fn adjoint<S: PhaseScalar>(f: &NctElement<S::Phase>, theta: &SkewMatrix<S>) -> Result<NctElement<S::Phase>> {
    f.check_rank(theta.dim())?;
    let mut out = NctElement::zero(f.rank());
    for (n, c) in f.terms() {
        let minus = n.negated();
        let phase = sigma(theta, &minus, n)?;
        out.add_term(minus, c.conj() * phase.conj());
    }
    Ok(out)
}

/// The canonical trace: the coefficient of the unit monomial.
pub fn trace<C: Coefficient>(f: &NctElement<C>) -> C {
    f.coefficient(&LatticeVector::zero(f.rank()))
}

/// `δ_j / 2πi`: multiplies the coefficient at `γ` by `γ_j`. Exact in every
/// coefficient ring. `j` is one-based.
pub fn gauge_generator<C: Coefficient>(j: usize, f: &NctElement<C>) -> Result<NctElement<C>> {
    let p = f.rank();
    if j == 0 || j > p {
        return Err(Error::IndexOutOfRange { index: j, max: p });
    }
    Ok(f.map_coefficients(|n, c| c.clone() * C::from_integer(n.components()[j - 1])))
}

/// The `*`-derivation `δ_j` with `δ_j(U_k) = 2πi δ_jk U_k` (one-based `j`).
pub fn derivation<C: DerivationCoefficient>(j: usize, f: &NctElement<C>) -> Result<NctElement<C>> {
    Ok(gauge_generator(j, f)?.scale(&C::two_pi_i()))
}

fn check_half_rank(p: usize, g: usize) -> Result<()> {
    if !p.is_multiple_of(2) {
        return Err(Error::OddDimension(p));
    }
    if p != 2 * g {
        return Err(Error::HalfRankMismatch { p, g });
    }
    Ok(())
}

/// `τ_c / (2πi)²`: the cyclic 2-cocycle with the derivations replaced by
/// [`gauge_generator`], so it stays exact for rational deformations.
pub fn cyclic_2cocycle_reduced<S: PhaseScalar>(
    f0: &NctElement<S::Phase>,
    f1: &NctElement<S::Phase>,
    f2: &NctElement<S::Phase>,
    theta: &SkewMatrix<S>,
    g: usize,
) -> Result<S::Phase> {
    let p = theta.dim();
    check_half_rank(p, g)?;
    for f in [f0, f1, f2] {
        f.check_rank(p)?;
    }
    let mut total = S::Phase::zero();
    for i in 1..=g {
        let d1_i = gauge_generator(i, f1)?;
        let d1_ig = gauge_generator(i + g, f1)?;
        let d2_i = gauge_generator(i, f2)?;
        let d2_ig = gauge_generator(i + g, f2)?;
        let inner = star_product(&d1_i, &d2_ig, theta)?.sub(&star_product(&d1_ig, &d2_i, theta)?)?;
        total = total + trace(&star_product(f0, &inner, theta)?);
    }
    Ok(total)
}

/// The continuous cyclic 2-cocycle
/// `τ_c(f0, f1, f2) = Σ_{i=1}^{g} τ(f0 (δ_i f1 δ_{i+g} f2 − δ_{i+g} f1 δ_i f2))`.
pub fn cyclic_2cocycle<S>(
    f0: &NctElement<S::Phase>,
    f1: &NctElement<S::Phase>,
    f2: &NctElement<S::Phase>,
    theta: &SkewMatrix<S>,
    g: usize,
) -> Result<S::Phase>
where
    S: PhaseScalar,
    S::Phase: DerivationCoefficient,
{
    let two_pi_i = S::Phase::two_pi_i();
    Ok(cyclic_2cocycle_reduced(f0, f1, f2, theta, g)? * two_pi_i.clone() * two_pi_i)
}

/// The algebra unit of the same rank as `theta`.
pub fn unit<S: PhaseScalar>(theta: &SkewMatrix<S>) -> NctElement<S::Phase> {
    NctElement::monomial(theta.dim(), LatticeVector::zero(theta.dim()), S::Phase::one()).expect("rank matches")
}

//! The Dedekind criterion for a monic integer polynomial at a prime `p`.
//!
//! With `f ≡ ∏ g_i^e_i (mod p)` and monic lifts `G_i`, put
//! `M = (f - ∏ G_i^e_i) / p`. Then `p` divides the index of `Z[θ]` iff some
//! `g_i` with `e_i ≥ 2` divides `M mod p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::exact_div;
use crate::error::{inconsistent, invalid, Result};
use crate::fppoly::{self, factorize, ModFactorization, ModPoly};
use crate::zpoly::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Divides,
    DoesNotDivide,
    /// Only produced by the quadrinomial classifier outside its scope.
    Inapplicable,
}

impl Verdict {
    pub fn from_divides(d: bool) -> Self {
        if d {
            Verdict::Divides
        } else {
            Verdict::DoesNotDivide
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Divides => "divides",
            Verdict::DoesNotDivide => "does_not_divide",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LiftPolicy {
    /// Coefficients in `[0, p)`.
    #[default]
    Canonical,
    /// Coefficients in `(-p/2, p/2]`.
    Symmetric,
}

/// Evidence for one repeated factor of `f mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatedFactor {
    pub factor: ModPoly,
    pub exponent: u32,
    /// `M̄ mod factor`; zero means the factor divides `M̄`.
    pub remainder: ModPoly,
}

impl RepeatedFactor {
    pub fn divides_m_bar(&self) -> bool {
        self.remainder.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct DedekindCertificate {
    pub p: u64,
    pub factorization: ModFactorization,
    pub m_poly: IntPoly,
    pub m_bar: ModPoly,
    pub verdict: Verdict,
    pub repeated: Vec<RepeatedFactor>,
}

impl DedekindCertificate {
    /// First repeated factor dividing `M̄`, if any.
    pub fn witness(&self) -> Option<&RepeatedFactor> {
        self.repeated.iter().find(|r| r.divides_m_bar())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    /// `(residue degree, ramification index)`, canonical factor order.
    pub parts: Vec<(usize, u32)>,
}

impl SplittingType {
    pub fn total_degree(&self) -> usize {
        self.parts.iter().map(|&(f, e)| f * e as usize).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    Known(SplittingType),
    /// `p` divides the index; the factorization of `f mod p` does not
    /// describe `pO_K`.
    Refused,
}

fn require_monic(f: &IntPoly) -> Result<()> {
    match f.degree() {
        Some(d) if d >= 1 && f.is_monic() => Ok(()),
        _ => Err(invalid(format!("polynomial {f} is not monic of positive degree"))),
    }
}

fn lift(g: &ModPoly, policy: LiftPolicy) -> IntPoly {
    match policy {
        LiftPolicy::Canonical => g.lift_canonical(),
        LiftPolicy::Symmetric => g.lift_symmetric(),
    }
}

/// `M(x) = (f - ∏ G_i^e_i) / p` for the lifts selected by `policy`.
pub fn m_polynomial(f: &IntPoly, p: u64, fact: &ModFactorization, policy: LiftPolicy) -> Result<IntPoly> {
    require_monic(f)?;
    if fact.p != p || fact.unit != 1 {
        return Err(invalid("factorization does not belong to a monic polynomial mod p"));
    }
    let prod = fact
        .factors
        .iter()
        .fold(IntPoly::constant(BigInt::from(1)), |acc, (g, e)| acc.mul(&lift(g, policy).pow(*e)));
    let diff = f.sub(&prod);
    let pb = BigInt::from(p);
    let coeffs = diff
        .coeffs()
        .iter()
        .map(|c| exact_div(c, &pb, "f minus the lifted factorization"))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

pub fn index_divides(f: &IntPoly, p: u64, seed: u64) -> Result<DedekindCertificate> {
    index_divides_with(f, p, seed, LiftPolicy::Canonical)
}

pub fn index_divides_with(f: &IntPoly, p: u64, seed: u64, policy: LiftPolicy) -> Result<DedekindCertificate> {
    require_monic(f)?;
    let f_bar = fppoly::reduce(f, p)?;
    let factorization = factorize(&f_bar, seed)?;
    let m_poly = m_polynomial(f, p, &factorization, policy)?;
    let m_bar = fppoly::reduce(&m_poly, p)?;
    let repeated: Vec<RepeatedFactor> = factorization
        .repeated()
        .map(|(g, e)| RepeatedFactor { factor: g.clone(), exponent: *e, remainder: m_bar.rem(g) })
        .collect();
    let verdict = Verdict::from_divides(repeated.iter().any(|r| r.divides_m_bar()));
    Ok(DedekindCertificate { p, factorization, m_poly, m_bar, verdict, repeated })
}

/// Factorization of `f mod p` and `M̄` from canonical lifts, without a verdict.
pub fn reduction_data(f: &IntPoly, p: u64, seed: u64) -> Result<(ModFactorization, ModPoly)> {
    require_monic(f)?;
    let factorization = factorize(&fppoly::reduce(f, p)?, seed)?;
    let m_poly = m_polynomial(f, p, &factorization, LiftPolicy::Canonical)?;
    let m_bar = fppoly::reduce(&m_poly, p)?;
    Ok((factorization, m_bar))
}

/// Verdict only. Skips the factorization when `p^2` does not divide the
/// supplied discriminant.
pub fn verdict_with_discriminant(f: &IntPoly, p: u64, disc: &BigInt, seed: u64) -> Result<Verdict> {
    let p2 = BigInt::from(p) * BigInt::from(p);
    if !disc.is_zero() && !disc.is_multiple_of(&p2) {
        require_monic(f)?;
        return Ok(Verdict::DoesNotDivide);
    }
    Ok(index_divides(f, p, seed)?.verdict)
}

pub fn splitting_type(f: &IntPoly, p: u64, seed: u64) -> Result<Splitting> {
    let cert = index_divides(f, p, seed)?;
    if cert.verdict == Verdict::Divides {
        return Ok(Splitting::Refused);
    }
    let parts: Vec<(usize, u32)> =
        cert.factorization.factors.iter().map(|(g, e)| (g.degree().unwrap_or(0), *e)).collect();
    let st = SplittingType { parts };
    if Some(st.total_degree()) != f.degree() {
        return Err(inconsistent(format!("splitting type {:?} does not sum to deg f", st.parts)));
    }
    Ok(Splitting::Known(st))
}

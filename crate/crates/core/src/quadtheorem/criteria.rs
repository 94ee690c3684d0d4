use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_div, is_prime_u64, residue};
use crate::dedekind::Verdict;
use crate::error::{invalid, Result};
use crate::zpoly::{IntPoly, Quadrinomial};

/// A divisibility pattern under which `p` divides neither the index nor the
/// discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exclusion {
    /// odd `p`: `p ∤ a`, `p ∤ c`, `p | b`, `p | n`
    DividesBAndN,
    /// odd `p`: `p ∤ a`, `p ∤ b`, `p | c`, `p | n - 2`
    DividesCAndNMinusTwo,
    /// odd `p`: `p | a`, `p ∤ b`
    OddDividesANotB,
    /// `p = 2`: `2 | a`, `2 ∤ b`
    TwoDividesANotB,
}

impl Exclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Exclusion::DividesBAndN => "divides_b_and_n",
            Exclusion::DividesCAndNMinusTwo => "divides_c_and_n_minus_2",
            Exclusion::OddDividesANotB => "odd_divides_a_not_b",
            Exclusion::TwoDividesANotB => "two_divides_a_not_b",
        }
    }
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn require_scope(q: &Quadrinomial) -> Result<()> {
    match q.check_scope().failure {
        None => Ok(()),
        Some(reason) => Err(invalid(format!("{q} is out of scope: {reason}"))),
    }
}

/// Checks the exclusion patterns. Uses residues only, so `n` may be huge.
pub fn excluded_prime(q: &Quadrinomial, p: u64) -> Result<Option<Exclusion>> {
    require_scope(q)?;
    if !is_prime_u64(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let (pa, pb, pc) = (residue(&q.a, p) == 0, residue(&q.b, p) == 0, residue(&q.c, p) == 0);
    let n = q.n % p;
    Ok(if p == 2 {
        (pa && !pb).then_some(Exclusion::TwoDividesANotB)
    } else if pa && !pb {
        Some(Exclusion::OddDividesANotB)
    } else if !pa && !pc && pb && n == 0 {
        Some(Exclusion::DividesBAndN)
    } else if !pa && !pb && pc && (n + p - 2) % p == 0 {
        Some(Exclusion::DividesCAndNMinusTwo)
    } else {
        None
    })
}

/// `Σ_{i} C(n-3, 2i) (n-2)/(n-2-2i)` over `0 <= i <= (n-3)/2`.
pub fn binomial_sum(n: u64) -> Result<BigInt> {
    if n < 5 {
        return Err(invalid(format!("binomial sum needs n >= 5, got {n}")));
    }
    let m = n - 3;
    let top = BigInt::from(n - 2);
    let mut binom = BigInt::one();
    let mut sum = BigInt::zero();
    for j in 0..=m {
        if j % 2 == 0 {
            let term = exact_div(&(&binom * &top), &BigInt::from(n - 2 - j), "binomial sum term")?;
            sum += term;
        }
        binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
    }
    Ok(sum)
}

/// Whether `p` divides the field discriminant, for odd `p` with `p ∤ ab`,
/// `p | c`, `p | n - 1`. There `p` does not divide the index, so this is
/// `p | D`, which reduces to `2Σ + 1 + (-1)^n ≡ 0 (mod p)`.
pub fn dk_divides(q: &Quadrinomial, p: u64) -> Result<bool> {
    require_scope(q)?;
    if p == 2 || !is_prime_u64(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    let ok = residue(&q.a, p) != 0 && residue(&q.b, p) != 0 && residue(&q.c, p) == 0 && (q.n - 1) % p == 0;
    if !ok {
        return Err(invalid(format!("{q} at {p} violates p ∤ ab, p | c, p | n - 1")));
    }
    let sigma = binomial_sum(q.n)?;
    let sign = if q.n % 2 == 0 { 1 } else { -1 };
    Ok(residue(&(sigma * 2 + 1 + sign), p) == 0)
}

/// For a monic `f` whose non-leading coefficients are all divisible by `p`:
/// `p` divides the index iff `p^2` divides the constant term.
pub fn all_coeffs_divisible_case(f: &IntPoly, p: u64) -> Option<Verdict> {
    let d = f.degree()?;
    if d == 0 || !f.is_monic() || f.coeffs()[..d].iter().any(|c| residue(c, p) != 0) {
        return None;
    }
    Some(Verdict::from_divides(residue(&f.coeffs()[0], p * p) == 0))
}

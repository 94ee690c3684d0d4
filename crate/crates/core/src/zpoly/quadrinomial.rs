use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntPoly;
use crate::error::{invalid, Result};

/// `x^n + a x^(n-1) + b x + c`.
///
/// Any `n >= 3` and any integers are accepted here; whether the tuple lies
/// inside the range where the closed-form classification holds is decided by
/// [`check_scope`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quadrinomial {
    pub n: u64,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Quadrinomial {
    pub fn new(n: u64, a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("quadrinomial degree must be at least 3, got {n}")));
        }
        Ok(Quadrinomial { n, a: a.into(), b: b.into(), c: c.into() })
    }

    pub fn expand(&self) -> IntPoly {
        let n = self.n as usize;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        coeffs[n - 1] = self.a.clone();
        coeffs[1] = self.b.clone();
        coeffs[0] = self.c.clone();
        IntPoly::new(coeffs)
    }

    pub fn check_scope(&self) -> TheoremScope {
        check_scope(self)
    }
}

impl fmt::Display for Quadrinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        let terms: Vec<(usize, BigInt)> = [(n, BigInt::one()), (n - 1, self.a.clone()), (1, self.b.clone()), (0, self.c.clone())]
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        super::write_terms(f, &terms)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScopeFailure {
    DegreeTooSmall,
    ZeroCoefficient,
    ANonpositive,
    ANotDividingNSquared,
    GcdAKNotOne,
}

impl ScopeFailure {
    pub fn as_str(self) -> &'static str {
        match self {
            ScopeFailure::DegreeTooSmall => "degree_too_small",
            ScopeFailure::ZeroCoefficient => "zero_coefficient",
            ScopeFailure::ANonpositive => "a_nonpositive",
            ScopeFailure::ANotDividingNSquared => "a_not_dividing_n_squared",
            ScopeFailure::GcdAKNotOne => "gcd_a_k_not_one",
        }
    }
}

impl fmt::Display for ScopeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether `n > 4`, `abc != 0`, `n^2 = a k` with `k >= 1` and `gcd(a, k) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremScope {
    pub applicable: bool,
    /// `n^2 / a`, present exactly when applicable.
    pub k: Option<BigInt>,
    pub failure: Option<ScopeFailure>,
}

impl TheoremScope {
    fn fail(reason: ScopeFailure) -> Self {
        TheoremScope { applicable: false, k: None, failure: Some(reason) }
    }
}

pub fn check_scope(q: &Quadrinomial) -> TheoremScope {
    if q.n <= 4 {
        return TheoremScope::fail(ScopeFailure::DegreeTooSmall);
    }
    if q.a.is_zero() || q.b.is_zero() || q.c.is_zero() {
        return TheoremScope::fail(ScopeFailure::ZeroCoefficient);
    }
    if !q.a.is_positive() {
        return TheoremScope::fail(ScopeFailure::ANonpositive);
    }
    let n_sq = BigInt::from(q.n) * BigInt::from(q.n);
    let (k, rem) = n_sq.div_rem(&q.a);
    if !rem.is_zero() {
        return TheoremScope::fail(ScopeFailure::ANotDividingNSquared);
    }
    if !q.a.gcd(&k).is_one() {
        return TheoremScope::fail(ScopeFailure::GcdAKNotOne);
    }
    debug_assert!(a_is_square_full(&q.a), "a | n^2 with gcd(a, n^2/a) = 1 forces p | a => p^2 | a");
    TheoremScope { applicable: true, k: Some(k), failure: None }
}

/// Every prime dividing `a` divides it at least twice, which must hold for
/// every in-scope `a`. Inconclusive factorizations count as passing.
pub(crate) fn a_is_square_full(a: &BigInt) -> bool {
    let f = crate::arith::factor(a, crate::arith::FactorBudget::default());
    match f {
        Ok(f) if f.is_complete() => f.factors.iter().all(|(_, e)| *e >= 2),
        _ => true,
    }
}

//! Best-effort irreducibility over `Q` for monic integer polynomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_prime_u64, FactorBudget};
use crate::fppoly::{factorize, is_separable, reduce};
use crate::zpoly::IntPoly;

/// Primes tried for the modular tests.
pub const PRIME_BOUND: u64 = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Irreducibility {
    /// Irreducible mod `p`.
    ModP { p: u64 },
    /// Eisenstein at `p`.
    Eisenstein { p: String },
    /// The factor-degree patterns mod these primes admit no proper factor.
    DegreePatterns { primes: Vec<u64> },
    /// Has the integer root `root`.
    Reducible { root: String },
    /// No certificate found.
    Assumed,
}

impl Irreducibility {
    /// `"certified"`, `"assumed"` or `"reducible"`.
    pub fn status(&self) -> &'static str {
        match self {
            Irreducibility::Assumed => "assumed",
            Irreducibility::Reducible { .. } => "reducible",
            _ => "certified",
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status() == "certified"
    }
}

pub fn check(f: &IntPoly, seed: u64) -> Irreducibility {
    let Some(d) = f.degree() else {
        return Irreducibility::Assumed;
    };
    if !f.is_monic() || d == 0 {
        return Irreducibility::Assumed;
    }
    if d == 1 {
        return Irreducibility::ModP { p: 2 };
    }
    if let Some(root) = integer_root(f) {
        return Irreducibility::Reducible { root: root.to_string() };
    }
    if let Some(p) = eisenstein_prime(f) {
        return Irreducibility::Eisenstein { p: p.to_string() };
    }
    // degrees of possible factors over Q, as subset sums of each pattern
    let mut possible: BTreeSet<usize> = (1..d).collect();
    let mut used = Vec::new();
    for p in (2..PRIME_BOUND).filter(|&p| is_prime_u64(p)) {
        let fp = reduce(f, p).expect("small prime");
        if !is_separable(&fp) {
            continue;
        }
        let fac = factorize(&fp, seed).expect("nonzero");
        if fac.factors.len() == 1 {
            return Irreducibility::ModP { p };
        }
        let mut sums = BTreeSet::from([0usize]);
        for (g, _) in &fac.factors {
            let dg = g.degree().unwrap();
            sums = sums.iter().flat_map(|&s| [s, s + dg]).collect();
        }
        let before = possible.len();
        possible.retain(|k| sums.contains(k));
        if possible.len() < before {
            used.push(p);
        }
        if possible.is_empty() {
            return Irreducibility::DegreePatterns { primes: used };
        }
    }
    if d <= 3 {
        // no integer root and degree at most 3
        return Irreducibility::DegreePatterns { primes: used };
    }
    Irreducibility::Assumed
}

/// An integer root, found among the divisors of the constant term when it
/// factors within the default budget.
fn integer_root(f: &IntPoly) -> Option<BigInt> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let fac = factor(&c0.abs(), FactorBudget::default()).ok()?;
    if !fac.is_complete() {
        return None;
    }
    let mut divisors = vec![BigInt::from(1)];
    for (p, e) in &fac.factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pk = d.clone();
            for _ in 0..=*e {
                next.push(pk.clone());
                pk *= p;
            }
        }
        divisors = next;
        if divisors.len() > 100_000 {
            return None;
        }
    }
    divisors.sort();
    divisors.into_iter().flat_map(|d| [d.clone(), -d]).find(|r| f.eval(r).is_zero())
}

fn eisenstein_prime(f: &IntPoly) -> Option<BigInt> {
    let d = f.degree()?;
    let lower = &f.coeffs()[..d];
    let g = lower.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return None;
    }
    let fac = factor(&g, FactorBudget::default()).ok()?;
    fac.factors.into_iter().map(|(p, _)| p).find(|p| !(&f.coeffs()[0] % (p * p)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zpoly::Quadrinomial;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn examples_are_certified() {
        for (n, a, b, c) in [(6, 4, 1, 3), (5, 1, 3, 6), (6, 9, 3, 18)] {
            let f = Quadrinomial::new(n, a, b, c).unwrap().expand();
            assert!(check(&f, 0).is_certified(), "{f}");
        }
    }

    #[test]
    fn eisenstein_and_mod_p() {
        // x^5 + 2x + 2
        assert!(matches!(check(&poly(&[2, 2, 0, 0, 0, 1]), 0), Irreducibility::ModP { .. } | Irreducibility::Eisenstein { .. }));
        assert_eq!(eisenstein_prime(&poly(&[2, 2, 0, 0, 0, 1])), Some(BigInt::from(2)));
        assert_eq!(eisenstein_prime(&poly(&[4, 2, 0, 1])), None);
    }

    #[test]
    fn swinnerton_dyer_like_needs_patterns() {
        // x^4 + 1 is reducible mod every prime but irreducible over Q
        let r = check(&poly(&[1, 0, 0, 0, 1]), 0);
        assert_ne!(r.status(), "reducible");
        assert!(!matches!(r, Irreducibility::ModP { .. }));
    }

    #[test]
    fn reducible_inputs() {
        // (x - 2)(x^4 + x + 1)
        let f = poly(&[-2, 1]).mul(&poly(&[1, 1, 0, 0, 1]));
        assert_eq!(check(&f, 0), Irreducibility::Reducible { root: "2".into() });
        assert_eq!(check(&poly(&[0, 1, 0, 0, 0, 1]), 0).status(), "reducible");
        // (x^2 + 1)(x^3 + 2): no rational root, never certified
        let g = poly(&[1, 0, 1]).mul(&poly(&[2, 0, 0, 1]));
        assert_eq!(check(&g, 0).status(), "assumed");
    }
}

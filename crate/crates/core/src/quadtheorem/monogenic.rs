use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::classify::{classify_prime_seeded, CaseVerdict};
use crate::arith::{factor, FactorBudget, PrimeFactorization};
use crate::dedekind::Verdict;
use crate::error::{invalid, Result};
use crate::fppoly::MAX_MODULUS;
use crate::zpoly::{discriminant, Quadrinomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monogenicity {
    Monogenic,
    NotMonogenic,
    /// Factorization of `D` incomplete, or a prime too large to classify.
    Unknown,
}

impl Monogenicity {
    /// `"true"`, `"false"` or `"unknown"`.
    pub fn as_flag(self) -> &'static str {
        match self {
            Monogenicity::Monogenic => "true",
            Monogenicity::NotMonogenic => "false",
            Monogenicity::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonogenicityReport {
    pub q: Quadrinomial,
    pub k: BigInt,
    pub discriminant: BigInt,
    pub factorization: PrimeFactorization,
    /// Every fully factored prime of `D`, ascending.
    pub per_prime: Vec<CaseVerdict>,
    /// Primes of `D` too large to classify, with their exponent.
    pub unclassified: Vec<(BigInt, u32)>,
    pub verdict: Monogenicity,
    /// Product of the primes known to divide the index.
    pub index_lower: BigInt,
    /// `∏ p^(v_p(D)/2)` over dividing primes; only with a complete
    /// factorization and every prime classified.
    pub index_upper: Option<BigInt>,
    pub seed: u64,
}

impl MonogenicityReport {
    /// The index, when the bounds meet.
    pub fn index(&self) -> Option<&BigInt> {
        self.index_upper.as_ref().filter(|u| **u == self.index_lower)
    }

    pub fn dividing_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.per_prime.iter().filter(|v| v.verdict == Verdict::Divides).map(|v| v.p)
    }
}

pub fn is_monogenic(q: &Quadrinomial, budget: FactorBudget, seed: u64) -> Result<MonogenicityReport> {
    let scope = q.check_scope();
    let Some(k) = scope.k else {
        return Err(invalid(format!("{q} is out of scope: {}", scope.failure.map(|f| f.as_str()).unwrap_or("?"))));
    };
    let d = discriminant(q)?;
    // D = 0 means repeated roots: no field, nothing to classify
    let factorization = if d.is_zero() {
        PrimeFactorization { factors: Vec::new(), cofactor: d.clone() }
    } else {
        factor(&d, budget)?
    };
    let mut per_prime = Vec::new();
    let mut unclassified = Vec::new();
    let mut index_lower = BigInt::one();
    let mut index_upper = BigInt::one();
    for (p, e) in &factorization.factors {
        let small = u64::try_from(p).ok().filter(|&v| v < MAX_MODULUS);
        match small {
            Some(p64) => {
                let v = classify_prime_seeded(q, p64, seed)?;
                if v.verdict == Verdict::Divides {
                    index_lower *= p;
                    index_upper *= p.pow(e / 2);
                }
                per_prime.push(v);
            }
            // p^2 ∤ D leaves nothing to decide
            None if *e < 2 => {}
            None => unclassified.push((p.clone(), *e)),
        }
    }
    let any_divides = per_prime.iter().any(|v| v.verdict == Verdict::Divides);
    let settled = factorization.is_complete() && unclassified.is_empty();
    let verdict = if any_divides {
        Monogenicity::NotMonogenic
    } else if settled {
        Monogenicity::Monogenic
    } else {
        Monogenicity::Unknown
    };
    Ok(MonogenicityReport {
        q: q.clone(),
        k,
        discriminant: d,
        factorization,
        per_prime,
        unclassified,
        verdict,
        index_lower,
        index_upper: settled.then_some(index_upper),
        seed,
    })
}

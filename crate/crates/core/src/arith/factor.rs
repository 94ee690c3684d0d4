use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{is_prime, is_prime_u64, mul_mod};
use crate::error::{invalid, Result};

/// Work limits for [`factor`]. Exhausting them is not an error; the
/// unfactored part is returned as the cofactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    /// Trial division by every candidate up to this bound.
    pub trial_bound: u64,
    /// Total Pollard-rho iterations across the whole run.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { trial_bound: 1 << 16, rho_iterations: 1 << 21 }
    }
}

/// `|n| = cofactor * Π p^e`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub factors: Vec<(BigInt, u32)>,
    /// Unfactored composite remainder; `1` when the factorization is complete.
    pub cofactor: BigInt,
}

impl PrimeFactorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn reassemble(&self) -> BigInt {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }
}

/// Factor `n != 0` within `budget`.
pub fn factor(n: &BigInt, budget: FactorBudget) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(invalid("cannot factor zero"));
    }
    let mut m = n.magnitude().clone();
    let mut found: Vec<(BigUint, u32)> = Vec::new();

    trial_divide(&mut m, budget.trial_bound, &mut found);

    let mut cofactor = BigUint::one();
    let mut rho_left = budget.rho_iterations;
    let mut stack = vec![(m, 1u32)];
    while let Some((x, mult)) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if is_prime(&BigInt::from(x.clone())) {
            found.push((x, mult));
            continue;
        }
        if let Some((root, k)) = perfect_power(&x) {
            stack.push((root, mult * k));
            continue;
        }
        let split = match x.to_u64() {
            Some(small) => rho_u64(small, &mut rho_left).map(BigUint::from),
            None => rho_big(&x, &mut rho_left),
        };
        match split {
            Some(d) => {
                let rest = &x / &d;
                stack.push((d, mult));
                stack.push((rest, mult));
            }
            None => cofactor *= num_traits::pow(x, mult as usize),
        }
    }

    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in found {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => factors.push((p, e)),
        }
    }
    Ok(PrimeFactorization { factors, cofactor: BigInt::from(cofactor) })
}

fn trial_divide(m: &mut BigUint, bound: u64, found: &mut Vec<(BigUint, u32)>) {
    let mut strip = |m: &mut BigUint, d: u64| {
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&BigUint::from(d));
            if !r.is_zero() {
                break;
            }
            *m = q;
            e += 1;
        }
        if e > 0 {
            found.push((BigUint::from(d), e));
        }
    };
    for d in [2u64, 3, 5] {
        if d > bound {
            return;
        }
        strip(m, d);
    }
    // 6k ± 1 wheel
    let mut d = 7u64;
    let mut step = 4u64;
    while d <= bound {
        if BigUint::from(d) * d > *m {
            break;
        }
        if (&*m % d).is_zero() {
            strip(m, d);
        }
        d += step;
        step = 6 - step;
    }
}

fn perfect_power(x: &BigUint) -> Option<(BigUint, u32)> {
    let bits = x.bits() as u32;
    for k in (2..=bits).rev() {
        let r = x.nth_root(k);
        if r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == *x {
            return Some((r, k));
        }
    }
    None
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho; returns a proper divisor or `None` once
/// the iteration budget runs out.
fn rho_u64(n: u64, budget: &mut u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    const BATCH: u64 = 128;
    for c in 1..64u64 {
        let f = |v: u64| (mul_mod(v, v, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let (mut x, mut ys) = (y, y);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = BATCH.min(r - k);
                if *budget < steps {
                    *budget = 0;
                    return None;
                }
                *budget -= steps;
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            debug_assert!(!is_prime_u64(n));
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    const BATCH: u64 = 128;
    let one = BigUint::one();
    let absdiff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1..64u64 {
        let f = |v: &BigUint| (v * v + c) % n;
        let mut y = BigUint::from(2u8);
        let (mut r, mut q, mut g) = (1u64, one.clone(), one.clone());
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if *budget < steps {
                    *budget = 0;
                    return None;
                }
                *budget -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    q = q * absdiff(&x, &y) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = absdiff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    None
}

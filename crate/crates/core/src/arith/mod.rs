//! Exact integer kernels shared by every other module.

mod factor;
mod primality;
mod sqrt;

pub use factor::{factor, FactorBudget, PrimeFactorization};
pub use primality::{is_prime, is_prime_seeded, is_prime_u64, DETERMINISTIC_LIMIT};
pub use sqrt::sqrt_mod;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{inconsistent, invalid, Result};

/// `base^exp mod modulus`, always in `[0, modulus)`. Negative bases are
/// reduced first.
pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    if *modulus < BigInt::from(2) {
        return Err(invalid(format!("modulus must be >= 2, got {modulus}")));
    }
    if exp.is_negative() {
        return Err(invalid("exponent must be non-negative"));
    }
    let b = base.mod_floor(modulus);
    Ok(b.modpow(exp, modulus))
}

/// Largest `e` with `p^e | n`.
///
/// Panics if `n` is zero or `p < 2`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is undefined");
    assert!(*p >= BigInt::from(2), "valuation base must be >= 2");
    let mut m = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// `v_p(n)` for machine integers. Panics on `n == 0` or `p < 2`.
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    assert!(n != 0 && p >= 2);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Division that must be exact; a remainder is a bug, never truncated.
pub fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(inconsistent(format!("{what}: division by zero")));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(inconsistent(format!("{what}: {den} does not divide {num}")));
    }
    Ok(q)
}

/// Residue of `n` in `[0, p)`.
pub fn residue(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Power with an arbitrary-precision exponent, modulo a machine modulus.
pub fn pow_mod_big_exp(base: u64, exp: &BigUint, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let base = base % m;
    for i in (0..exp.bits()).rev() {
        acc = mul_mod(acc, acc, m);
        if exp.bit(i) {
            acc = mul_mod(acc, base, m);
        }
    }
    acc
}

/// Inverse modulo `m` by the extended Euclidean algorithm; `None` when
/// `gcd(a, m) != 1`.
pub fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

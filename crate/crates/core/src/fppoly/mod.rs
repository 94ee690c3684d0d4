//! Polynomials over `F_p` (`p < 2^63`) and their complete factorization.

mod factor;

pub use factor::{factorize, squarefree_decomposition, FactorRecord, ModFactorization};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::arith::{add_mod, inv_mod_u64, is_prime_u64, mul_mod, pow_mod_u64, residue, sub_mod};
use crate::error::{invalid, Result};
use crate::zpoly::IntPoly;

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 63;

/// Polynomial over `F_p`; `coeffs[i]` is the coefficient of `x^i`, all in
/// `[0, p)`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| (c as i128).rem_euclid(p as i128) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// `x - r`
    pub fn linear_root(p: u64, r: u64) -> Self {
        Self::new(p, vec![sub_mod(0, r % p, p), 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = inv_mod_u64(self.leading(), self.p).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, k, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| add_mod(self.coeff(i), other.coeff(i), self.p)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        Self::new(p, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        debug_assert_eq!(self.p, divisor.p);
        let p = self.p;
        let db = divisor.degree().expect("division by the zero polynomial");
        let inv = inv_mod_u64(divisor.leading(), p).expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let coef = mul_mod(rem[i], inv, p);
            if coef == 0 {
                continue;
            }
            quot[i - db] = coef;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - db + j;
                rem[k] = sub_mod(rem[k], mul_mod(coef, d, p), p);
            }
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    /// `self^exp mod modulus`
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Coefficients in `[0, p)`.
    pub fn lift_canonical(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients in `(-p/2, p/2]`.
    pub fn lift_symmetric(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|&c| if c > half { BigInt::from(c) - BigInt::from(self.p) } else { BigInt::from(c) })
                .collect(),
        )
    }
}

impl PartialOrd for ModPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by degree, then coefficients from the leading one down.
impl Ord for ModPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then_with(|| self.p.cmp(&other.p))
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, BigInt::from(c)))
            .collect();
        crate::zpoly::write_terms(f, &terms)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly[{}]({self})", self.p)
    }
}

fn check_modulus(p: u64) -> Result<()> {
    if p >= MAX_MODULUS {
        return Err(crate::Error::Unsupported(format!("modulus {p} exceeds 2^63")));
    }
    if !is_prime_u64(p) {
        return Err(invalid(format!("modulus {p} is not prime")));
    }
    Ok(())
}

/// Coefficient-wise reduction of an integer polynomial.
pub fn reduce(f: &IntPoly, p: u64) -> Result<ModPoly> {
    check_modulus(p)?;
    Ok(ModPoly::new(p, f.coeffs().iter().map(|c| residue(c, p)).collect()))
}

/// Reduction with a prime given as a big integer.
pub fn reduce_big(f: &IntPoly, p: &BigInt) -> Result<ModPoly> {
    let small = u64::try_from(p).map_err(|_| crate::Error::Unsupported(format!("modulus {p} exceeds 2^63")))?;
    reduce(f, small)
}

/// Monic gcd; `gcd(f, 0) = monic(f)`.
pub fn gcd(f: &ModPoly, g: &ModPoly) -> Result<ModPoly> {
    if f.p != g.p {
        return Err(invalid(format!("modulus mismatch: {} vs {}", f.p, g.p)));
    }
    Ok(gcd_same(f, g))
}

pub(crate) fn gcd_same(f: &ModPoly, g: &ModPoly) -> ModPoly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// `gcd(f, f') = 1`.
pub fn is_separable(f: &ModPoly) -> bool {
    gcd_same(f, &f.derivative()).is_one()
}

pub fn mod_inverse(a: u64, p: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(invalid(format!("{a} has no inverse modulo {p}")));
    }
    inv_mod_u64(a, p).ok_or_else(|| invalid(format!("{a} has no inverse modulo {p}")))
}

pub fn eval(f: &ModPoly, x: u64) -> u64 {
    f.eval(x)
}

/// `Res(f, g)` over `F_p` by the Euclidean recurrence
/// `Res(A, B) = (-1)^(deg A deg B) lc(B)^(deg A - deg R) Res(B, R)`.
pub fn resultant(f: &ModPoly, g: &ModPoly) -> Result<u64> {
    if f.p != g.p {
        return Err(invalid("modulus mismatch"));
    }
    let p = f.p;
    if f.is_zero() || g.is_zero() {
        return Ok(0);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut acc = 1u64;
    loop {
        let da = a.degree().unwrap() as u64;
        let db = b.degree().unwrap() as u64;
        if db == 0 {
            return Ok(mul_mod(acc, pow_mod_u64(b.leading(), da, p), p));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Ok(0);
        }
        let dr = r.degree().unwrap() as u64;
        if (da * db) % 2 == 1 {
            acc = sub_mod(0, acc, p);
        }
        acc = mul_mod(acc, pow_mod_u64(b.leading(), da - dr, p), p);
        a = b;
        b = r;
    }
}

/// Discriminant of a monic `f` modulo `p`.
pub fn discriminant_mod(f: &ModPoly) -> Result<u64> {
    let d = f.degree().ok_or_else(|| invalid("discriminant of zero"))? as u64;
    let res = resultant(f, &f.derivative())?;
    let inv = mod_inverse(f.leading(), f.p)?;
    let res = mul_mod(res, inv, f.p);
    Ok(if (d * d.saturating_sub(1) / 2) % 2 == 0 { res } else { sub_mod(0, res, f.p) })
}

#[cfg(test)]
mod tests;

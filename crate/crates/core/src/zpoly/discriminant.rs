use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{check_scope, resultant, IntPoly, Quadrinomial};
use crate::arith::exact_div;
use crate::error::{inconsistent, invalid, Error, Result};

/// Largest degree for which the closed form is evaluated. It has `Θ(n)`
/// terms with `Θ(n)`-fold powers; beyond this only the predicate-level
/// operations are offered.
pub const DEFAULT_FORMULA_CAP: u64 = 2000;

/// Degree up to which [`discriminant`] also runs the resultant route and
/// insists on agreement.
const CROSS_CHECK_MAX_DEGREE: u64 = 64;

/// Closed-form discriminant of `x^n + a x^(n-1) + b x + c` (`n > 4`,
/// `abc != 0`).
///
/// With `P = (n-2)ab + cn`, `B = (2-n)ab - cn`, `N = n^2 c - ab` and
/// `E = P^2 - 4abc(n-1)^2`:
///
/// ```text
/// D = s * [ (n-1)^(n-1) a^n c^(n-2) + n^2 (n-1)^(n-1) b^(n-1) c / a
///         + (n-1)^(n-3) b^(n-2) N^2 / a^2 - n (n-1)^(n-3) b^(n-2) N P / a^2
///         - Σ_i ( 2n(n-1)^2 abc B^(n-3-2i) E^i C(n-3,2i)
///               + N B^(n-2-2i) E^i C(n-3,2i)(n-2)/(n-2-2i) ) / 2^(n-3)
///         - (1 + (-1)^n) N E^((n-2)/2) / 2^(n-2) ]
/// ```
///
/// with `s = (-1)^((n+2)(n-1)/2)` and `i` running over `0..=⌊(n-3)/2⌋`.
/// Evaluated over the common denominator `a^2 2^(n-2)`; the final division is
/// asserted exact.
pub fn discriminant_formula(q: &Quadrinomial) -> Result<BigInt> {
    discriminant_formula_capped(q, DEFAULT_FORMULA_CAP)
}

pub fn discriminant_formula_capped(q: &Quadrinomial, cap: u64) -> Result<BigInt> {
    let n = q.n;
    if n <= 4 {
        return Err(invalid(format!("closed form needs n > 4, got {n}")));
    }
    if q.a.is_zero() || q.b.is_zero() || q.c.is_zero() {
        return Err(invalid("closed form needs abc != 0"));
    }
    if n > cap {
        return Err(Error::Unsupported(format!("closed-form discriminant refused for n = {n} > cap {cap}")));
    }
    let (a, b, c) = (&q.a, &q.b, &q.c);
    let nn = n as usize;
    let nb = BigInt::from(n);
    let n1 = BigInt::from(n - 1);
    let n2 = BigInt::from(n - 2);
    let pow = |x: &BigInt, e: usize| num_traits::pow(x.clone(), e);

    let ab = a * b;
    let p_term = &n2 * &ab + c * &nb;
    let b_term = -(&n2 * &ab) - c * &nb;
    let n_term = &nb * &nb * c - &ab;
    let e_term = &p_term * &p_term - BigInt::from(4) * &ab * c * &n1 * &n1;

    let two_pow = pow(&BigInt::from(2), nn - 2);
    let a_sq = a * a;

    // bracket * a^2 * 2^(n-2)
    let mut total = pow(&n1, nn - 1) * pow(a, nn) * pow(c, nn - 2) * &a_sq * &two_pow;
    total += &nb * &nb * pow(&n1, nn - 1) * pow(b, nn - 1) * c * a * &two_pow;
    let n1_pow = pow(&n1, nn - 3);
    let b_pow = pow(b, nn - 2);
    total += &n1_pow * &b_pow * &n_term * &n_term * &two_pow;
    total -= &nb * &n1_pow * &b_pow * &n_term * &p_term * &two_pow;

    let b_pows = powers(&b_term, nn - 2);
    let e_pows = powers(&e_term, (nn - 2) / 2);
    let binom = binomial_row(nn - 3);
    let s1_coeff = BigInt::from(2) * &nb * &n1 * &n1 * &ab * c;
    let mut sum = BigInt::zero();
    for i in 0..=(nn - 3) / 2 {
        let binom_i = &binom[2 * i];
        let weight = exact_div(&(binom_i * &n2), &BigInt::from(n - 2 - 2 * i as u64), "binomial weight")?;
        sum += &s1_coeff * &b_pows[nn - 3 - 2 * i] * &e_pows[i] * binom_i;
        sum += &n_term * &b_pows[nn - 2 - 2 * i] * &e_pows[i] * weight;
    }
    // Σ carries 1/2^(n-3) = 2/2^(n-2)
    total -= sum * &a_sq * BigInt::from(2);
    if n % 2 == 0 {
        total -= BigInt::from(2) * &n_term * &e_pows[(nn - 2) / 2] * &a_sq;
    }

    let d = exact_div(&total, &(&a_sq * &two_pow), "closed-form discriminant denominator")?;
    let sign_exp = (n as u128 + 2) * (n as u128 - 1) / 2;
    Ok(if sign_exp % 2 == 0 { d } else { -d })
}

fn powers(x: &BigInt, max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(BigInt::one());
    for i in 0..max {
        let next = &out[i] * x;
        out.push(next);
    }
    out
}

fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..m {
        let next = &row[k] * BigInt::from(m - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant_of(f: &IntPoly) -> Result<BigInt> {
    let d = f.degree().ok_or_else(|| invalid("discriminant of the zero polynomial"))?;
    if d == 0 {
        return Err(invalid("discriminant of a constant"));
    }
    let res = resultant(f, &f.derivative())?;
    let res = exact_div(&res, f.leading().unwrap(), "discriminant leading coefficient")?;
    Ok(if (d * (d - 1) / 2) % 2 == 0 { res } else { -res })
}

/// Discriminant of the expanded quadrinomial. In-scope tuples use the closed
/// form (checked against the resultant route up to moderate degree); all
/// others go through the resultant.
pub fn discriminant(q: &Quadrinomial) -> Result<BigInt> {
    if check_scope(q).applicable && q.n <= DEFAULT_FORMULA_CAP {
        let closed = discriminant_formula(q)?;
        if q.n <= CROSS_CHECK_MAX_DEGREE {
            let via_res = discriminant_of(&q.expand())?;
            if via_res != closed {
                return Err(inconsistent(format!("discriminant routes disagree for {q}: {closed} vs {via_res}")));
            }
        }
        Ok(closed)
    } else {
        discriminant_of(&q.expand())
    }
}

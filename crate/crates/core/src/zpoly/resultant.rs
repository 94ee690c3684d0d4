use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::arith::exact_div;
use crate::error::{invalid, Result};

/// Above this degree the Sylvester determinant is skipped in favour of the
/// subresultant sequence.
const SYLVESTER_MAX_DEGREE: usize = 12;

/// `Res(p, q)`; Bareiss on the Sylvester matrix for small degrees, the
/// subresultant PRS otherwise.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    let (dp, dq) = degrees(p, q)?;
    if dp.max(dq) <= SYLVESTER_MAX_DEGREE {
        resultant_sylvester(p, q)
    } else {
        resultant_subresultant(p, q)
    }
}

fn degrees(p: &IntPoly, q: &IntPoly) -> Result<(usize, usize)> {
    match (p.degree(), q.degree()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(invalid("resultant of the zero polynomial")),
    }
}

/// Fraction-free (Bareiss) determinant of the Sylvester matrix.
pub fn resultant_sylvester(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    let (m, n) = degrees(p, q)?;
    let size = m + n;
    if size == 0 {
        return Ok(BigInt::one());
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows 0..n hold shifted copies of p, rows n..n+m shifted copies of q,
    // coefficients from the leading one down
    for r in 0..n {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            mat[n + r][r + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = exact_div(&num, &prev, "Bareiss step")?;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a = Q b + R`.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().unwrap().clone();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let mut e = (a.degree().unwrap() + 1).saturating_sub(db);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.coeffs().iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        e -= 1;
    }
    let fix = num_traits::pow(lb, e);
    IntPoly::new(r.into_iter().map(|c| c * &fix).collect())
}

/// Subresultant PRS (Collins / Brown–Traub).
pub fn resultant_subresultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    degrees(p, q)?;
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = -s;
        }
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if db == 0 {
        return Ok(num_traits::pow(b.leading().unwrap().clone(), da));
    }
    let ca = a.content();
    let cb = b.content();
    a = IntPoly::new(a.coeffs().iter().map(|c| c / &ca).collect());
    b = IntPoly::new(b.coeffs().iter().map(|c| c / &cb).collect());
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = IntPoly::new(
            r.coeffs()
                .iter()
                .map(|c| exact_div(c, &div, "subresultant reduction"))
                .collect::<Result<Vec<_>>>()?,
        );
        g = a.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            exact_div(&num_traits::pow(g.clone(), delta), &num_traits::pow(h.clone(), delta - 1), "subresultant h")?
        };
        if b.degree() == Some(0) {
            let da = a.degree().unwrap();
            let lb = b.leading().unwrap().clone();
            let hh = exact_div(&num_traits::pow(lb, da), &num_traits::pow(h, da - 1), "subresultant final")?;
            return Ok(s * t * hh);
        }
    }
}

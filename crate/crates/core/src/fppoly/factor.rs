use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{gcd_same, ModPoly};
use crate::error::{invalid, Result};

/// `unit * prod g_i^e_i` with monic irreducible `g_i` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFactorization {
    pub p: u64,
    pub unit: u64,
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModFactorization {
    pub fn product(&self) -> ModPoly {
        self.factors
            .iter()
            .fold(ModPoly::new(self.p, vec![self.unit]), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Factors with exponent at least 2.
    pub fn repeated(&self) -> impl Iterator<Item = &(ModPoly, u32)> {
        self.factors.iter().filter(|(_, e)| *e >= 2)
    }

    /// Sorted list of `(degree, exponent)`.
    pub fn pattern(&self) -> Vec<(usize, u32)> {
        let mut v: Vec<(usize, u32)> = self.factors.iter().map(|(g, e)| (g.degree().unwrap_or(0), *e)).collect();
        v.sort_unstable();
        v
    }
}

/// Serializable form with factors as coefficient lists (leading first).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorRecord {
    pub factor: String,
    pub degree: usize,
    pub exponent: u32,
}

impl ModFactorization {
    pub fn records(&self) -> Vec<FactorRecord> {
        self.factors
            .iter()
            .map(|(g, e)| FactorRecord { factor: g.to_string(), degree: g.degree().unwrap_or(0), exponent: *e })
            .collect()
    }
}

/// Complete factorization over `F_p`. The same seed always gives the same
/// result; the result itself does not depend on the seed.
pub fn factorize(f: &ModPoly, seed: u64) -> Result<ModFactorization> {
    if f.is_zero() {
        return Err(invalid("cannot factor the zero polynomial"));
    }
    let p = f.modulus();
    let unit = f.leading();
    let g = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(17));
    let mut factors = Vec::new();
    if g.degree() != Some(0) {
        for (part, e) in squarefree_decomposition(&g) {
            for (d, chunk) in distinct_degree(&part) {
                for irr in equal_degree(&chunk, d, &mut rng) {
                    factors.push((irr, e));
                }
            }
        }
    }
    factors.sort();
    Ok(ModFactorization { p, unit, factors })
}

/// Monic squarefree parts `(h, e)` with `f = prod h^e`, pairwise coprime.
pub fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let p = f.modulus();
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (h, e) in squarefree_decomposition(&pth_root(&f)) {
            out.push((h, e * p as u32));
        }
        return out;
    }
    let mut c = gcd_same(&f, &df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd_same(&w, &c);
        let z = w.div_rem(&y).0;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.div_rem(&y).0;
        w = y;
    }
    if !c.is_one() {
        for (h, e) in squarefree_decomposition(&pth_root(&c)) {
            out.push((h, e * p as u32));
        }
    }
    out
}

// f(x) = g(x^p) = g(x)^p over F_p
fn pth_root(f: &ModPoly) -> ModPoly {
    let p = f.modulus() as usize;
    ModPoly::new(f.modulus(), f.coeffs().iter().step_by(p).copied().collect())
}

fn distinct_degree(f: &ModPoly) -> Vec<(usize, ModPoly)> {
    let p = f.modulus();
    let x = ModPoly::x(p);
    let exp = BigUint::from(p);
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.rem(&f);
    let mut d = 1;
    while f.degree().unwrap() >= 2 * d {
        h = h.pow_mod(&exp, &f);
        let g = gcd_same(&f, &h.sub(&x));
        if !g.is_one() {
            f = f.div_rem(&g).0;
            h = h.rem(&f);
            out.push((d, g));
        }
        d += 1;
    }
    if f.degree().unwrap() > 0 {
        out.push((f.degree().unwrap(), f));
    }
    out
}

fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let p = f.modulus();
    let half_exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = ModPoly::new(p, (0..n).map(|_| rng.random_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                s = s.add(&t);
            }
            s
        } else {
            a.pow_mod(&half_exp, f).sub(&ModPoly::one(p))
        };
        let g = gcd_same(f, &b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_rem(&g).0, d, rng));
            return out;
        }
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::case::{case_of, CaseLabel, DecisionSource, Subcase};
use super::criteria::{all_coeffs_divisible_case, excluded_prime, Exclusion};
use crate::arith::{add_mod, is_prime_u64, mod_pow, mul_mod, pow_mod_u64, residue, sqrt_mod, sub_mod, valuation_u64};
use crate::dedekind::{reduction_data, Verdict};
use crate::error::{inconsistent, invalid, Result};
use crate::fppoly::{self, gcd, is_separable, mod_inverse, ModPoly, MAX_MODULUS};
use crate::zpoly::{IntPoly, Quadrinomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub p: u64,
    pub label: CaseLabel,
    pub subcase: Option<Subcase>,
    pub source: DecisionSource,
    pub verdict: Verdict,
    /// Deciding quantities, as decimal strings or polynomials mod `p`.
    pub witness: BTreeMap<String, String>,
    /// An exclusion pattern that independently gives the same answer.
    pub corroboration: Option<Exclusion>,
}

pub fn classify_prime(q: &Quadrinomial, p: u64) -> Result<CaseVerdict> {
    classify_prime_seeded(q, p, crate::DEFAULT_SEED)
}

/// Decides `p | [O_K : Z[θ]]` from the closed-form case conditions.
/// `seed` only drives the factorization used to build `M̄`; the verdict does
/// not depend on it.
pub fn classify_prime_seeded(q: &Quadrinomial, p: u64, seed: u64) -> Result<CaseVerdict> {
    if p >= MAX_MODULUS {
        return Err(crate::Error::Unsupported(format!("prime {p} exceeds 2^63")));
    }
    if !is_prime_u64(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let label = case_of(q, p);
    if let Some(reason) = q.check_scope().failure {
        let mut witness = BTreeMap::new();
        witness.insert("reason".to_string(), reason.to_string());
        return Ok(CaseVerdict {
            p,
            label,
            subcase: None,
            source: DecisionSource::OutOfScope,
            verdict: Verdict::Inapplicable,
            witness,
            corroboration: None,
        });
    }
    let mut cx = Ctx::new(q, p, seed);
    let (subcase, verdict) = match label {
        CaseLabel::AllDivide => cx.all_divide()?,
        CaseLabel::AbNotC => cx.ab_not_c()?,
        CaseLabel::BcNotA => cx.bc_not_a(),
        CaseLabel::OnlyC => cx.only_c()?,
        CaseLabel::OnlyB => cx.only_b()?,
        CaseLabel::NoneDivide if p == 2 => cx.none_divide_two()?,
        CaseLabel::NoneDivide => cx.none_divide_odd()?,
        CaseLabel::AcNotB | CaseLabel::OnlyA => (None, Verdict::DoesNotDivide),
    };
    let source = match label {
        CaseLabel::AcNotB | CaseLabel::OnlyA if p == 2 => DecisionSource::TwoDividingA,
        CaseLabel::AcNotB | CaseLabel::OnlyA => DecisionSource::OddPrimeDividingA,
        _ => DecisionSource::Theorem,
    };
    let corroboration = excluded_prime(q, p)?;
    if corroboration.is_some() && verdict == Verdict::Divides {
        return Err(inconsistent(format!("{q} at {p}: excluded prime classified as dividing the index")));
    }
    Ok(CaseVerdict { p, label, subcase, source, verdict, witness: cx.witness, corroboration })
}

struct Ctx<'a> {
    q: &'a Quadrinomial,
    p: u64,
    seed: u64,
    a: u64,
    b: u64,
    c: u64,
    /// `n mod p`
    n: u64,
    witness: BTreeMap<String, String>,
    f: IntPoly,
}

type Decision = (Option<Subcase>, Verdict);

impl<'a> Ctx<'a> {
    fn new(q: &'a Quadrinomial, p: u64, seed: u64) -> Self {
        Ctx {
            q,
            p,
            seed,
            a: residue(&q.a, p),
            b: residue(&q.b, p),
            c: residue(&q.c, p),
            n: q.n % p,
            witness: BTreeMap::new(),
            f: q.expand(),
        }
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.witness.insert(key.to_string(), value.to_string());
    }

    fn fail(&self, what: &str) -> crate::Error {
        inconsistent(format!("{} at p = {}: {what}", self.q, self.p))
    }

    fn p2(&self) -> BigInt {
        BigInt::from(self.p) * BigInt::from(self.p)
    }

    /// `(x mod p^2) / p` for `x ≡ 0 (mod p)`.
    fn quotient(&self, x: &BigInt) -> Result<u64> {
        let r = x.mod_floor(&self.p2());
        let (q, rem) = r.div_rem(&BigInt::from(self.p));
        if !rem.is_zero() {
            return Err(self.fail("quotient numerator is not divisible by p"));
        }
        Ok(residue(&q, self.p))
    }

    /// `base^(p^r) mod p^2`
    fn pow_p_power(&self, base: &BigInt, r: u32) -> Result<BigInt> {
        mod_pow(base, &BigInt::from(self.p).pow(r), &self.p2())
    }

    fn f_bar(&self) -> ModPoly {
        fppoly::reduce(&self.f, self.p).expect("prime modulus checked")
    }

    fn m_bar(&mut self) -> Result<ModPoly> {
        let (_, m) = reduction_data(&self.f, self.p, self.seed)?;
        self.note("m_bar", &m);
        Ok(m)
    }

    fn pow(&self, base: u64, e: u64) -> u64 {
        pow_mod_u64(base, e, self.p)
    }

    fn neg(&self, x: u64) -> u64 {
        sub_mod(0, x, self.p)
    }

    fn all_divide(&mut self) -> Result<Decision> {
        let c2 = residue(&self.q.c, self.p * self.p);
        self.note("c_mod_p2", c2);
        let verdict = Verdict::from_divides(c2 == 0);
        if all_coeffs_divisible_case(&self.f, self.p) != Some(verdict) {
            return Err(self.fail("coefficient-divisibility rule disagrees"));
        }
        Ok((None, verdict))
    }

    fn ab_not_c(&mut self) -> Result<Decision> {
        let p = self.p;
        let r = valuation_u64(self.q.n, p);
        if r == 0 {
            return Err(self.fail("p | a but p ∤ n"));
        }
        let t = self.pow_p_power(&-&self.q.c, r)?;
        let c1 = self.quotient(&(&self.q.c + t))?;
        let b1 = self.quotient(&self.q.b)?;
        let inner = add_mod(self.pow(self.neg(c1), self.q.n), mul_mod(self.c, self.pow(b1, self.q.n), p), p);
        self.note("r", r);
        self.note("b1_mod_p", b1);
        self.note("c1_mod_p", c1);
        self.note("scalar", inner);
        let ok = (b1 == 0 && c1 != 0) || mul_mod(b1, inner, p) != 0;
        let sub = if b1 == 0 { Subcase::TwoI } else { Subcase::TwoII };
        Ok((Some(sub), Verdict::from_divides(!ok)))
    }

    fn bc_not_a(&mut self) -> Decision {
        let p2 = self.p * self.p;
        let c2 = residue(&self.q.c, p2);
        let abc = residue(&(&self.q.a * &self.q.b - &self.q.c), p2);
        self.note("c_mod_p2", c2);
        self.note("ab_minus_c_mod_p2", abc);
        (None, Verdict::from_divides(c2 == 0))
    }

    /// Shared tail of the `p ∤ a` cases with a single candidate repeated
    /// root `root`: the scalar decides separability, then `M̄(root)` decides.
    fn linear_candidate(&mut self, scalar: u64, root: u64) -> Result<Verdict> {
        let f_bar = self.f_bar();
        self.note("scalar", scalar);
        if (scalar != 0) != is_separable(&f_bar) {
            return Err(self.fail("separability scalar disagrees with gcd(f, f')"));
        }
        if scalar != 0 {
            return Ok(Verdict::DoesNotDivide);
        }
        if f_bar.eval(root) != 0 || f_bar.derivative().eval(root) != 0 {
            return Err(self.fail("candidate is not a repeated root"));
        }
        self.note("root", root);
        let m = self.m_bar()?;
        Ok(Verdict::from_divides(m.eval(root) == 0))
    }

    fn only_c(&mut self) -> Result<Decision> {
        let p = self.p;
        let n1 = (self.n + p - 1) % p;
        if n1 == 0 {
            return Ok((Some(Subcase::FourI), Verdict::DoesNotDivide));
        }
        let n2 = (self.n + p - 2) % p;
        let e = self.q.n;
        let base = self.neg(mul_mod(self.a, n2, p));
        let scalar = add_mod(mul_mod(self.a, self.pow(base, e - 2), p), mul_mod(self.b, self.pow(n1, e - 1), p), p);
        let root = mul_mod(self.neg(mod_inverse(n1, p)?), mul_mod(self.a, n2, p), p);
        Ok((Some(Subcase::FourII), self.linear_candidate(scalar, root)?))
    }

    fn only_b(&mut self) -> Result<Decision> {
        let p = self.p;
        if self.n == 0 {
            return Ok((Some(Subcase::FiveI), Verdict::DoesNotDivide));
        }
        let n1 = (self.n + p - 1) % p;
        let e = self.q.n;
        let base = self.neg(mul_mod(self.a, n1, p));
        let scalar = add_mod(mul_mod(self.c, self.pow(self.n, e), p), mul_mod(self.a, self.pow(base, e - 1), p), p);
        let root = mul_mod(self.neg(mod_inverse(self.n, p)?), mul_mod(self.a, n1, p), p);
        Ok((Some(Subcase::FiveII), self.linear_candidate(scalar, root)?))
    }

    fn none_divide_two(&mut self) -> Result<Decision> {
        if self.q.n % 2 == 0 {
            let m = self.m_bar()?;
            return Ok((Some(Subcase::SixTwoOne), Verdict::from_divides(m.eval(1) == 0)));
        }
        let (a, b, c) = (&self.q.a, &self.q.b, &self.q.c);
        if a.is_even() || b.is_even() || c.is_even() {
            return Err(self.fail("a, b, c must be odd"));
        }
        let u: BigInt = (b + 1) / 2;
        let v: BigInt = (a + c) / 2;
        self.note("b_plus_1_half", &u);
        self.note("a_plus_c_half", &v);
        let exactly_one = u.is_even() != v.is_even();
        Ok((Some(Subcase::SixTwoTwo), Verdict::from_divides(!exactly_one)))
    }

    fn none_divide_odd(&mut self) -> Result<Decision> {
        let p = self.p;
        let (a, b, c) = (self.a, self.b, self.c);
        if (self.n + p - 1) % p == 0 {
            let abc = sub_mod(mul_mod(a, b, p), c, p);
            self.note("ab_minus_c_mod_p", abc);
            if abc != 0 {
                return Ok((Some(Subcase::SixOneOne), Verdict::DoesNotDivide));
            }
            let r0 = valuation_u64(self.q.n - 1, p);
            let t = self.pow_p_power(&-&self.q.b, r0)?;
            let v1 = self.quotient(&(&self.q.b + &t))?;
            let v0 = self.quotient(&(&self.q.c + &self.q.a * &t))?;
            let e = self.q.n - 1;
            let inner = add_mod(self.pow(self.neg(v0), e), mul_mod(b, self.pow(v1, e), p), p);
            self.note("r0", r0);
            self.note("v0_mod_p", v0);
            self.note("v1_mod_p", v1);
            self.note("scalar", inner);
            let ok = (v1 == 0 && v0 != 0) || mul_mod(v1, inner, p) != 0;
            return Ok((Some(Subcase::SixOneOne), Verdict::from_divides(!ok)));
        }
        let (sub, quad) = if self.n == 0 {
            // x^2 + 2a x + a c / b
            let k = mul_mod(mul_mod(a, c, p), mod_inverse(b, p)?, p);
            (Subcase::SixOneTwo, ModPoly::new(p, vec![k, add_mod(a, a, p), 1]))
        } else {
            // x^2 + x (b - nb)^-1 (ab - (n-1)ab - cn) - (b - nb)^-1 (n-1) a c
            let n = self.n;
            let n1 = (n + p - 1) % p;
            let inv = mod_inverse(sub_mod(b, mul_mod(n, b, p), p), p)?;
            let ab = mul_mod(a, b, p);
            let lin = sub_mod(sub_mod(ab, mul_mod(n1, ab, p), p), mul_mod(c, n, p), p);
            let con = self.neg(mul_mod(inv, mul_mod(n1, mul_mod(a, c, p), p), p));
            (Subcase::SixOneThree, ModPoly::new(p, vec![con, mul_mod(inv, lin, p), 1]))
        };
        self.note("quadratic", &quad);
        let f_bar = self.f_bar();
        let df = f_bar.derivative();
        let separable = is_separable(&f_bar);
        self.note("separable", separable);
        self.check_quadratic(sub, &quad, &f_bar, separable)?;
        if separable {
            return Ok((Some(sub), Verdict::DoesNotDivide));
        }
        let g = gcd(&quad, &df)?;
        let m = self.m_bar()?;
        let h = gcd(&g, &m)?;
        self.note("gcd_with_m_bar", &h);
        Ok((Some(sub), Verdict::from_divides(!h.is_one())))
    }

    /// Every repeated root of `f̄` is a root of the quadratic, and for roots
    /// in `F_p` the scalar form vanishes exactly at the repeated ones.
    fn check_quadratic(&self, sub: Subcase, quad: &ModPoly, f_bar: &ModPoly, separable: bool) -> Result<()> {
        let p = self.p;
        let rep = fppoly::gcd(f_bar, &f_bar.derivative())?;
        let d = rep.degree().unwrap_or(0) as u64;
        if !quad.pow(d).rem(&rep).is_zero() {
            return Err(self.fail("repeated roots outside the quadratic"));
        }
        let half_lin = mul_mod(quad.coeff(1), mod_inverse(2, p)?, p);
        let delta = sub_mod(mul_mod(half_lin, half_lin, p), quad.coeff(0), p);
        let Some(s) = sqrt_mod(delta, p)? else {
            return Ok(());
        };
        let df = f_bar.derivative();
        let e = self.q.n;
        let mut any_zero = false;
        for zeta in [sub_mod(s, half_lin, p), sub_mod(self.neg(s), half_lin, p)] {
            let scalar = match sub {
                Subcase::SixOneTwo => sub_mod(mul_mod(self.a, self.pow(zeta, e - 2), p), self.b, p),
                _ => {
                    let l1 = add_mod(zeta, zeta, p);
                    let n1 = (self.n + p - 1) % p;
                    let lin = add_mod(mul_mod(self.n, l1, p), mul_mod(2, mul_mod(self.a, n1, p), p), p);
                    add_mod(mul_mod(self.pow(l1, e - 2), lin, p), mul_mod(self.pow(2, e - 1), self.b, p), p)
                }
            };
            let repeated = f_bar.eval(zeta) == 0 && df.eval(zeta) == 0;
            if (scalar == 0) != repeated {
                return Err(self.fail("quadratic scalar disagrees with the repeated-root test"));
            }
            any_zero |= scalar == 0;
        }
        if any_zero == separable {
            return Err(self.fail("split quadratic disagrees with separability"));
        }
        Ok(())
    }
}

use num_bigint::BigInt;

use super::*;
use crate::arith::{FactorBudget, is_prime_u64};
use crate::dedekind::{index_divides, Verdict};
use crate::fppoly::{discriminant_mod, gcd, is_separable, reduce};
use crate::zpoly::Quadrinomial;

fn q(n: u64, a: i64, b: i64, c: i64) -> Quadrinomial {
    Quadrinomial::new(n, a, b, c).unwrap()
}

#[test]
fn first_example_at_three() {
    let v = classify_prime(&q(6, 4, 1, 3), 3).unwrap();
    assert_eq!(v.label, CaseLabel::OnlyC);
    assert_eq!(v.subcase, Some(Subcase::FourII));
    assert_eq!(v.verdict, Verdict::Divides);
    assert_eq!(v.witness["scalar"], "0");
    assert_eq!(v.witness["root"], "1");
    assert_eq!(v.witness["m_bar"], "x^4 + 2*x^2 + 2*x + 1");
    let v = classify_prime(&q(6, 4, 1, 3), 7561).unwrap();
    assert_eq!(v.verdict, Verdict::DoesNotDivide);
}

#[test]
fn second_and_third_examples() {
    let v = classify_prime(&q(5, 1, 3, 6), 3).unwrap();
    assert_eq!(v.label, CaseLabel::BcNotA);
    assert_eq!(v.verdict, Verdict::DoesNotDivide);
    assert_eq!(v.witness["c_mod_p2"], "6");
    assert_eq!(v.witness["ab_minus_c_mod_p2"], "6");
    let v = classify_prime(&q(6, 9, 3, 18), 3).unwrap();
    assert_eq!(v.label, CaseLabel::AllDivide);
    assert_eq!(v.verdict, Verdict::Divides);
}

#[test]
fn out_of_scope_is_a_verdict() {
    let v = classify_prime(&q(6, 5, 1, 3), 3).unwrap();
    assert_eq!(v.verdict, Verdict::Inapplicable);
    assert_eq!(v.witness["reason"], "a_not_dividing_n_squared");
    assert!(classify_prime(&q(6, 4, 1, 3), 9).is_err());
}

#[test]
fn monogenicity_of_examples() {
    let b = FactorBudget::default();
    let r = is_monogenic(&q(6, 4, 1, 3), b, 1).unwrap();
    assert_eq!(r.verdict, Monogenicity::NotMonogenic);
    assert_eq!(r.index(), Some(&BigInt::from(3)));
    assert_eq!(r.dividing_primes().collect::<Vec<_>>(), vec![3]);
    assert_eq!(r.per_prime.iter().map(|v| v.p).collect::<Vec<_>>(), vec![3, 7561, 15269]);

    let r = is_monogenic(&q(5, 1, 3, 6), b, 1).unwrap();
    assert_eq!(r.verdict, Monogenicity::Monogenic);
    assert_eq!(r.index(), Some(&BigInt::from(1)));
    assert!(r.per_prime.iter().all(|v| v.verdict == Verdict::DoesNotDivide));

    let r = is_monogenic(&q(6, 9, 3, 18), b, 1).unwrap();
    assert_eq!(r.verdict, Monogenicity::NotMonogenic);
    assert!(is_monogenic(&q(6, 5, 1, 3), b, 1).is_err());
}

#[test]
fn incomplete_factorization_is_unknown() {
    let tight = FactorBudget { trial_bound: 3, rho_iterations: 1 };
    let r = is_monogenic(&q(5, 1, 3, 6), tight, 1).unwrap();
    if !r.factorization.is_complete() {
        assert_eq!(r.verdict, Monogenicity::Unknown);
        assert!(r.index_upper.is_none());
    }
}

// classifier vs. the general criterion on a small grid; the full grid runs
// in the acceptance suite
#[test]
fn agrees_with_dedekind_small_grid() {
    let primes: Vec<u64> = (2..=13).filter(|&p| is_prime_u64(p)).collect();
    let mut pairs = 0;
    for (n, a) in [(5u64, 1i64), (5, 25), (6, 4), (6, 9), (7, 1)] {
        for b in -6..=6i64 {
            for c in -6..=6i64 {
                if b == 0 || c == 0 {
                    continue;
                }
                let t = q(n, a, b, c);
                let f = t.expand();
                for &p in &primes {
                    let v = classify_prime(&t, p).unwrap();
                    let d = index_divides(&f, p, 3).unwrap();
                    assert_eq!(v.verdict, d.verdict, "{t} at {p}: {v:?}");
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 4000);
}

#[test]
fn scalar_matches_separability_in_linear_cases() {
    for n in 5..=9u64 {
        for b in -10..=10i64 {
            for c in -10..=10i64 {
                if b == 0 || c == 0 {
                    continue;
                }
                let t = q(n, 1, b, c);
                for p in [3u64, 5, 7] {
                    let v = classify_prime(&t, p).unwrap();
                    if let Some(s) = v.witness.get("scalar") {
                        if matches!(v.subcase, Some(Subcase::FourII | Subcase::FiveII)) {
                            let f = reduce(&t.expand(), p).unwrap();
                            assert_eq!(s != "0", is_separable(&f));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn dividing_primes_divide_discriminant_twice() {
    for n in 5..=8u64 {
        for b in -8..=8i64 {
            for c in -8..=8i64 {
                if b == 0 || c == 0 {
                    continue;
                }
                let t = q(n, 1, b, c);
                let d = crate::zpoly::discriminant(&t).unwrap();
                for p in [2u64, 3, 5, 7] {
                    let v = classify_prime(&t, p).unwrap();
                    if v.verdict == Verdict::Divides {
                        assert!((&d % BigInt::from(p * p)) == BigInt::from(0), "{t} at {p}");
                    }
                    if v.corroboration.is_some() {
                        let dm = discriminant_mod(&reduce(&t.expand(), p).unwrap()).unwrap();
                        assert_ne!(dm, 0);
                    }
                }
            }
        }
    }
}

#[test]
fn quadratic_subcases_use_repeated_part() {
    // an inseparable instance in the p ∤ n(n-1) subcase
    let mut found = false;
    'outer: for b in 1..=30i64 {
        for c in 1..=30i64 {
            let t = q(5, 1, b, c);
            let p = 7;
            let v = classify_prime(&t, p).unwrap();
            if v.subcase == Some(Subcase::SixOneThree) && v.witness["separable"] == "false" {
                let f = reduce(&t.expand(), p).unwrap();
                assert!(!gcd(&f, &f.derivative()).unwrap().is_one());
                found = true;
                break 'outer;
            }
        }
    }
    assert!(found);
}

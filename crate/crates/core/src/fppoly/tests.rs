use super::*;
use crate::zpoly::IntPoly;

fn mp(p: u64, lead_first: &[i64]) -> ModPoly {
    let mut v = lead_first.to_vec();
    v.reverse();
    ModPoly::from_i64s(p, &v)
}

fn rand_poly(rng: &mut ChaCha8Rng, p: u64, max_deg: usize) -> ModPoly {
    let d = rng.random_range(0..=max_deg);
    let mut c: Vec<u64> = (0..=d).map(|_| rng.random_range(0..p)).collect();
    c[d] = rng.random_range(1..p);
    ModPoly::new(p, c)
}

// every monic polynomial of the given degree over F_p
fn all_monic(p: u64, d: usize) -> Vec<ModPoly> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut k| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(k % p);
                k /= p;
            }
            c.push(1);
            ModPoly::new(p, c)
        })
        .collect()
}

fn brute_irreducible(f: &ModPoly) -> bool {
    let d = f.degree().unwrap();
    d >= 1 && (1..=d / 2).all(|k| all_monic(f.modulus(), k).iter().all(|g| !g.divides(f)))
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn reduction_examples() {
    let f = IntPoly::from_i64s(&[3, 1, 0, 0, 0, 4, 1]);
    assert_eq!(reduce(&f, 3).unwrap(), mp(3, &[1, 1, 0, 0, 0, 1, 0]));
    let g = IntPoly::from_i64s(&[6, 3, 0, 0, 1, 1]);
    assert_eq!(reduce(&g, 3).unwrap().to_string(), "x^5 + x^4");
    assert!(reduce(&IntPoly::zero(), 7).unwrap().is_zero());
    assert!(reduce(&f, 9).is_err());
    assert!(matches!(reduce(&IntPoly::from_i64s(&[-1, 1]), 3).unwrap().coeffs(), [2, 1]));
}

#[test]
fn gcd_examples() {
    let g = gcd(&mp(5, &[1, 0, -1]), &mp(5, &[1, -1])).unwrap();
    assert_eq!(g, mp(5, &[1, 4]));
    let f = mp(7, &[3, 2, 1]);
    assert!(gcd(&f, &ModPoly::one(7)).unwrap().is_one());
    assert_eq!(gcd(&f, &ModPoly::zero(7)).unwrap(), f.monic());
    assert!(gcd(&f, &ModPoly::one(5)).is_err());
}

#[test]
fn gcd_is_maximal_common_divisor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..300 {
        let p = [2, 3, 5, 7][i % 4];
        let f = rand_poly(&mut rng, p, 6);
        let g = rand_poly(&mut rng, p, 6);
        let h = gcd(&f, &g).unwrap();
        assert!(h.divides(&f) && h.divides(&g));
        let dh = h.degree().unwrap();
        let top = f.degree().unwrap().min(g.degree().unwrap());
        for d in dh + 1..=top {
            for cand in all_monic(p, d) {
                assert!(!(cand.divides(&f) && cand.divides(&g)), "{cand:?} beats {h:?}");
            }
        }
    }
}

#[test]
fn separability_examples() {
    assert!(!is_separable(&mp(2, &[1, 1, 0, 0, 0, 1, 1])));
    assert!(!is_separable(&mp(7, &[1, 0, 0])));
    assert!(!is_separable(&mp(3, &[1, 1, 0, 0, 0, 0])));
    assert!(is_separable(&mp(5, &[1, 0, 1])));
}

#[test]
fn factorization_examples() {
    let f = mp(3, &[1, 1, 0, 0, 0, 1, 0]);
    let fac = factorize(&f, 1).unwrap();
    for (g, _) in &fac.factors {
        assert!(brute_irreducible(g));
    }
    assert_eq!(fac.product(), f);
    assert_eq!(fac.pattern(), vec![(1, 1), (1, 2), (3, 1)]);
    assert!(fac.factors.contains(&(mp(3, &[1, 0]), 1)));
    assert!(fac.factors.contains(&(mp(3, &[1, 2]), 2)));

    let g = mp(2, &[1, 1, 0, 0, 0, 1, 1]);
    let fac = factorize(&g, 1).unwrap();
    assert_eq!(fac.product(), g);
    assert!(fac.factors.iter().any(|(h, e)| *h == mp(2, &[1, 1]) && *e >= 2));

    // x^9 + 2 over F_3 is (x + 2)^9
    let h = mp(3, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 2]);
    let fac = factorize(&h, 5).unwrap();
    assert_eq!(fac.factors, vec![(mp(3, &[1, 2]), 9)]);
    // x^6 + 1 over F_3 is (x^2 + 1)^3
    let fac = factorize(&mp(3, &[1, 0, 0, 0, 0, 0, 1]), 5).unwrap();
    assert_eq!(fac.factors, vec![(mp(3, &[1, 0, 1]), 3)]);
    assert!(fac.factors.iter().all(|(_, e)| e % 3 == 0));
}

#[test]
fn factorization_with_unit() {
    let f = mp(7, &[3, 1, 4]);
    let fac = factorize(&f, 0).unwrap();
    assert_eq!(fac.unit, 3);
    assert_eq!(fac.product(), f);
    assert!(factorize(&ModPoly::zero(7), 0).is_err());
    let c = factorize(&ModPoly::new(7, vec![5]), 0).unwrap();
    assert!(c.factors.is_empty());
}

#[test]
fn random_factorizations_reconstruct() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1000 {
        let p = [2, 3, 5, 7, 11][i % 5];
        let f = rand_poly(&mut rng, p, 10);
        let fac = factorize(&f, i as u64).unwrap();
        assert_eq!(fac.product(), f);
        assert_eq!(is_separable(&f) || f.degree() == Some(0), fac.is_squarefree());
        let mut sorted = fac.factors.clone();
        sorted.sort();
        assert_eq!(sorted, fac.factors);
        for w in fac.factors.windows(2) {
            assert_ne!(w[0].0, w[1].0);
        }
        for (g, _) in &fac.factors {
            assert!(g.is_monic());
            if p <= 5 && g.degree().unwrap() <= 8 {
                assert!(brute_irreducible(g), "{g:?}");
            }
        }
    }
}

#[test]
fn factorization_is_seed_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let f = rand_poly(&mut rng, 13, 12);
        let a = factorize(&f, 1).unwrap();
        assert_eq!(a, factorize(&f, 1).unwrap());
        assert_eq!(a, factorize(&f, 999).unwrap());
    }
}

#[test]
fn large_prime_splitting() {
    let p = (1u64 << 61) - 1;
    let f = ModPoly::linear_root(p, 12345)
        .mul(&ModPoly::linear_root(p, 99))
        .mul(&ModPoly::linear_root(p, 12345))
        .mul(&ModPoly::new(p, vec![1, 0, 0, 1]).add(&ModPoly::x(p)));
    let fac = factorize(&f, 8).unwrap();
    assert_eq!(fac.product(), f);
    assert!(fac.factors.contains(&(ModPoly::linear_root(p, 12345), 2)));
}

#[test]
fn inverse_and_eval() {
    assert_eq!(mod_inverse(2, 5).unwrap(), 3);
    assert_eq!(mod_inverse(1, 97).unwrap(), 1);
    assert!(mod_inverse(10, 5).is_err());
    for p in (2..100).filter(|&p| is_prime_u64(p)) {
        for a in 1..p {
            assert_eq!(mul_mod(a, mod_inverse(a, p).unwrap(), p), 1);
        }
    }
    let m = mp(3, &[1, 0, 2, 2, 1]);
    assert_eq!(eval(&m, 1), 0);
    assert_eq!(eval(&m, 0), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let f = rand_poly(&mut rng, 101, 8);
        let x = rng.random_range(0..101);
        let naive = f.coeffs().iter().enumerate().fold(0, |s, (i, &c)| (s + c * pow_mod_u64(x, i as u64, 101)) % 101);
        assert_eq!(f.eval(x), naive);
    }
}

#[test]
fn lifts() {
    let f = mp(5, &[1, 4, 2, 3]);
    assert_eq!(f.lift_canonical(), IntPoly::from_i64s(&[3, 2, 4, 1]));
    assert_eq!(f.lift_symmetric(), IntPoly::from_i64s(&[-2, 2, -1, 1]));
    assert_eq!(reduce(&f.lift_symmetric(), 5).unwrap(), f);
}

#[test]
fn modular_resultant_matches_integer() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let a: Vec<i64> = (0..rng.random_range(1..6)).map(|_| rng.random_range(-9..10)).chain([1]).collect();
        let b: Vec<i64> = (0..rng.random_range(1..6)).map(|_| rng.random_range(-9..10)).chain([1]).collect();
        let (fa, fb) = (IntPoly::from_i64s(&a), IntPoly::from_i64s(&b));
        let r = crate::zpoly::resultant(&fa, &fb).unwrap();
        for p in [2u64, 3, 7, 101] {
            let rm = resultant(&reduce(&fa, p).unwrap(), &reduce(&fb, p).unwrap()).unwrap();
            assert_eq!(rm, residue(&r, p));
        }
    }
    let f = IntPoly::from_i64s(&[3, 1, 0, 0, 0, 4, 1]);
    let d = crate::zpoly::discriminant_of(&f).unwrap();
    for p in [2u64, 5, 7561, 15269, 10007] {
        assert_eq!(discriminant_mod(&reduce(&f, p).unwrap()).unwrap(), residue(&d, p));
    }
}

#[test]
fn display_and_order() {
    assert_eq!(mp(3, &[1, 0, 2, 2, 1]).to_string(), "x^4 + 2*x^2 + 2*x + 1");
    assert!(mp(3, &[1, 2]) < mp(3, &[1, 0, 0]));
    assert!(mp(3, &[1, 0]) < mp(3, &[1, 2]));
}

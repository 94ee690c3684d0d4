use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{mul_mod, pow_mod_u64};

/// Below this bound Miller–Rabin with the first thirteen prime bases is
/// deterministic (Sorenson–Webster).
pub const DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const RANDOM_ROUNDS: usize = 64;

/// Deterministic Miller–Rabin for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let (d, s) = split_odd_u64(n - 1);
    'witness: for &a in &BASES[..12] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn split_odd_u64(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

/// Primality with the crate's default seed for the probabilistic range.
pub fn is_prime(n: &BigInt) -> bool {
    is_prime_seeded(n, crate::DEFAULT_SEED)
}

/// Miller–Rabin. Deterministic below [`DETERMINISTIC_LIMIT`]; above it,
/// 64 bases drawn from a ChaCha generator seeded with `seed`, so a
/// composite survives with probability below `2^-128`.
pub fn is_prime_seeded(n: &BigInt, seed: u64) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.magnitude();
    for &p in &BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let limit: BigUint = DETERMINISTIC_LIMIT.parse().expect("constant parses");
    if *n < limit {
        BASES.iter().all(|&a| strong_probable_prime(n, &BigUint::from(a)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = n - 3u8;
        let limbs = n.to_u64_digits().len() + 1;
        (0..RANDOM_ROUNDS).all(|_| {
            let raw: Vec<u64> = (0..limbs).map(|_| rng.random()).collect();
            let a = BigUint::from_slice(&to_u32_limbs(&raw)) % &span + 2u8;
            strong_probable_prime(n, &a)
        })
    }
}

fn to_u32_limbs(words: &[u64]) -> Vec<u32> {
    words.iter().flat_map(|&w| [w as u32, (w >> 32) as u32]).collect()
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let n_minus_1 = n - 1u8;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

use super::{is_prime_u64, mul_mod, pow_mod_u64};
use crate::error::{invalid, Result};

/// Square root of `a` modulo an odd prime `p` by Tonelli–Shanks.
///
/// Returns the smaller of the two roots, or `None` for a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Result<Option<u64>> {
    if p == 2 || !is_prime_u64(p) {
        return Err(invalid(format!("sqrt_mod needs an odd prime modulus, got {p}")));
    }
    let a = a % p;
    if a == 0 {
        return Ok(Some(0));
    }
    if pow_mod_u64(a, (p - 1) / 2, p) != 1 {
        return Ok(None);
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod_u64(z, (p - 1) / 2, p) == p - 1).expect("non-residue exists");

    let mut m = s;
    let mut c = pow_mod_u64(z, q, p);
    let mut t = pow_mod_u64(a, q, p);
    let mut r = pow_mod_u64(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod_u64(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Ok(Some(r.min(p - r)))
}

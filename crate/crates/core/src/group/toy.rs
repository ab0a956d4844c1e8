//! Arithmetic for the explicitly parameterized subgroup of `Z_p^*`.
//!
//! Everything here works on `u64` values with `u128` intermediates, which
//! keeps brute-force discrete logarithms cheap enough for exhaustive tests.

use super::GroupError;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        (m - (b - a) % m) % m
    }
}

/// Square-and-multiply exponentiation.
pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut acc = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, acc, m);
        }
        acc = mul_mod(acc, acc, m);
        exp >>= 1;
    }
    result
}

/// Deterministic trial division; toy parameters are small by construction.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Byte width of the big-endian encoding of values below `bound`.
pub(crate) fn byte_len(bound: u64) -> usize {
    let bits = 64 - (bound - 1).leading_zeros() as usize;
    bits.div_ceil(8).max(1)
}

pub(crate) fn check_params(p: u64, q: u64, g: u64) -> Result<(), GroupError> {
    let bad = |reason: String| Err(GroupError::InvalidParameters(reason));
    if p >= 1 << 62 {
        return bad(format!("modulus {p} exceeds the toy backend limit of 2^62"));
    }
    if !is_prime(p) {
        return bad(format!("modulus {p} is not prime"));
    }
    if !is_prime(q) {
        return bad(format!("order {q} is not prime"));
    }
    if !(p - 1).is_multiple_of(q) {
        return bad(format!("order {q} does not divide {p} - 1"));
    }
    if g == 0 || g >= p {
        return bad(format!("generator {g} is not a unit modulo {p}"));
    }
    // q prime, so order(g) is 1 or q.
    if g == 1 || pow_mod(g, q, p) != 1 {
        return bad(format!("generator {g} does not have order {q} modulo {p}"));
    }
    Ok(())
}

pub(crate) fn encode_be(value: u64, width: usize) -> Vec<u8> {
    value.to_be_bytes()[8 - width..].to_vec()
}

pub(crate) fn decode_be(bytes: &[u8]) -> Option<u64> {
    if bytes.len() > 8 {
        return None;
    }
    Some(bytes.iter().fold(0u64, |acc, &b| (acc << 8) | b as u64))
}

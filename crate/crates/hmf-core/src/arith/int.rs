//! Integer helpers: gcds, modular inverses, small-prime utilities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Returns (g, s, t) with g = s*a + t*b and g >= 0.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b).abs()
}

/// Least common multiple of the denominators.
pub fn common_denom<'a, I: IntoIterator<Item = &'a Q>>(it: I) -> BigInt {
    let mut d = BigInt::one();
    for x in it {
        d = d.lcm(x.denom());
    }
    d
}

pub fn rem_euclid_i64(a: i128, m: i64) -> i64 {
    a.rem_euclid(m as i128) as i64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn inv_mod_i64(a: i64, m: i64) -> Option<i64> {
    let (g, s, _) = xgcd(&bi(a.rem_euclid(m)), &bi(m));
    if !g.is_one() {
        return None;
    }
    Some(s.mod_floor(&bi(m)).to_i64().unwrap())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Trial-division factorization of |n|; n must be nonzero.
/// Fails when a cofactor above `limit²` survives without being prime.
pub fn factor_bigint(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut m = n.abs();
    assert!(!m.is_zero());
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000_000u64);
    while &p * &p <= m {
        if p > limit {
            if let Some(v) = m.to_u64() {
                if is_prime(v) {
                    break;
                }
            }
            return None;
        }
        if (&m % &p).is_zero() {
            let mut e = 0;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !m.is_one() {
        out.push((m, 1));
    }
    Some(out)
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor_bigint(&BigInt::from(n))
        .expect("u64 factorization")
        .into_iter()
        .map(|(p, e)| (p.to_u64().unwrap(), e))
        .collect()
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn q_floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn q_to_f64(x: &Q) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        let bits = x.numer().bits().max(x.denom().bits()) as i64 - 900;
        let sh = bits.max(0) as usize;
        let n2 = (x.numer() >> sh).to_f64().unwrap();
        let d2 = (x.denom() >> sh).to_f64().unwrap();
        n2 / d2
    }
}

/// Deterministic 64-bit hash (FNV-1a) used to derive seeds.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_identity() {
        let (g, s, t) = xgcd(&bi(240), &bi(-46));
        assert_eq!(g, bi(2));
        assert_eq!(s * bi(240) + t * bi(-46), bi(2));
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(561));
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_u64(229), vec![(229, 1)]);
        assert_eq!(inv_mod_i64(3, 7), Some(5));
        assert_eq!(exact_sqrt(&bi(144)), Some(bi(12)));
        assert_eq!(exact_sqrt(&bi(145)), None);
    }
}

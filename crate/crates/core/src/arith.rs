//! Small rational-integer helpers shared across modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo a prime `m`.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

/// Legendre symbol (a/q) for an odd prime q, as -1, 0 or 1.
pub fn legendre(a: u64, q: u64) -> i8 {
    let a = a % q;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// `x mod m` in `[0, m)` for a big signed integer.
pub fn big_mod_u64(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

/// Exact integer square root of a non-negative big integer, if it is a square.
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

/// Trial-division factorization of |n| (n != 0) into (prime, exponent) pairs.
pub fn factor(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut n = n.magnitude().clone();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut push = |q: BigUint, n: &mut BigUint| {
        let mut e = 0;
        while (&*n % &q).is_zero() {
            *n /= &q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
    };
    push(BigUint::from(2u32), &mut n);
    let mut q = BigUint::from(3u32);
    while &q * &q <= n {
        push(q.clone(), &mut n);
        q += 2u32;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}

pub fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn factor_and_sqrt() {
        let f = factor(&BigInt::from(-769 * 4 * 9));
        let v: Vec<(u64, u32)> = f.iter().map(|(q, e)| (to_u64(q).unwrap(), *e)).collect();
        assert_eq!(v, vec![(2, 2), (3, 2), (769, 1)]);
        assert_eq!(exact_sqrt(&BigInt::from(784)), Some(BigInt::from(28)));
        assert_eq!(exact_sqrt(&BigInt::from(785)), None);
        assert_eq!(legendre(77, 101), 1);
        assert_eq!(legendre(57, 101), -1);
    }
}

//! Small-integer number theory helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 == 1 {
        Some(s0.rem_euclid(m))
    } else if m == 1 {
        Some(0)
    } else {
        None
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sum of k-th powers of the divisors of n.
pub fn sigma(n: u64, k: u32) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1 assumed).
pub fn mult_order(a: u64, m: u64) -> u64 {
    let phi = euler_phi(m);
    let mut ord = phi;
    for (q, _) in factorize(phi) {
        while ord % q == 0 && mod_pow(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Least positive generator of (Z/q^e)^× for an odd prime q.
pub fn primitive_root(q: u64, e: u32) -> u64 {
    let m = q.pow(e);
    let phi = euler_phi(m);
    (2..m)
        .find(|&g| gcd(g, q) == 1 && mult_order(g, m) == phi)
        .unwrap_or(1)
}

/// q-adic valuation of an integer; `None` for zero.
pub fn val_i128(mut n: i128, q: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let q = q as i128;
    let mut v = 0;
    while n % q == 0 {
        n /= q;
        v += 1;
    }
    Some(v)
}

pub fn val_big(n: &BigInt, q: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let q = BigInt::from(q);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (d, r) = n.div_rem(&q);
        if !r.is_zero() {
            return Some(v);
        }
        n = d;
        v += 1;
    }
}

/// Kronecker symbol (d / n) for n > 0.
pub fn kronecker(d: i64, n: u64) -> i32 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut res = 1i32;
    while n % 2 == 0 {
        n /= 2;
        if d.rem_euclid(2) == 0 {
            return 0;
        }
        if matches!(d.rem_euclid(8), 3 | 5) {
            res = -res;
        }
    }
    if n == 1 {
        return res;
    }
    res * jacobi(d.rem_euclid(n as i64) as u64, n)
}

/// Jacobi symbol (a / n) for odd n.
pub fn jacobi(mut a: u64, mut n: u64) -> i32 {
    let mut res = 1;
    a %= n;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            res = -res;
        }
        a %= n;
    }
    if n == 1 {
        res
    } else {
        0
    }
}

/// Writes a discriminant-type integer D as D0·f² with D0 fundamental.
/// Returns `None` when D ≡ 2, 3 mod 4 (not a discriminant).
pub fn fundamental_discriminant(d: i64) -> Option<(i64, u64)> {
    if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return None;
    }
    let sign = d.signum();
    let mut f = 1u64;
    let mut core = 1i64;
    for (q, e) in factorize(d.unsigned_abs()) {
        f *= q.pow(e / 2);
        if e % 2 == 1 {
            core *= q as i64;
        }
    }
    let core = sign * core;
    if core.rem_euclid(4) == 1 {
        Some((core, f))
    } else {
        Some((4 * core, f / 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(45), 24);
        assert_eq!(mobius(30), -1);
        assert_eq!(primitive_root(5, 1), 2);
        assert_eq!(primitive_root(7, 1), 3);
        assert_eq!(primitive_root(3, 2), 2);
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
    }

    #[test]
    fn fundamental_parts() {
        assert_eq!(fundamental_discriminant(1), Some((1, 1)));
        assert_eq!(fundamental_discriminant(-4), Some((-4, 1)));
        assert_eq!(fundamental_discriminant(-12), Some((-3, 2)));
        assert_eq!(fundamental_discriminant(-16), Some((-4, 2)));
        assert_eq!(fundamental_discriminant(-32), Some((-8, 2)));
        assert_eq!(fundamental_discriminant(12), Some((12, 1)));
        assert_eq!(fundamental_discriminant(-7), Some((-7, 1)));
        assert_eq!(fundamental_discriminant(6), None);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for d in [-3i64, -4, -7, -8, 5, 8, 12, -20] {
            for n in [3u64, 5, 7, 11, 13, 17, 19, 23] {
                if d.rem_euclid(n as i64) == 0 {
                    continue;
                }
                let e = mod_pow(d.rem_euclid(n as i64) as u64, (n - 1) / 2, n);
                let want = if e == 1 { 1 } else { -1 };
                assert_eq!(kronecker(d, n), want, "d={d} n={n}");
            }
        }
    }
}

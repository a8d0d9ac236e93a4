//! Small integer helpers used throughout the crate.

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `n`, for `gcd(a, n) = 1`.
pub(crate) fn inv_mod(a: u64, n: u64) -> u64 {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {n}");
    t0.rem_euclid(n as i128) as u64
}

/// The residue mod `m * n` that is `a` mod `m` and `b` mod `n`, for
/// coprime `m`, `n`.
pub(crate) fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    assert_eq!(gcd(m, n), 1, "crt moduli must be coprime");
    let shift = ((b % n) as i128 - (a % n) as i128) * inv_mod(m % n, n) as i128;
    (a as i128 + m as i128 * shift).rem_euclid((m * n) as i128) as u64
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Smallest generator of the (cyclic) unit group mod an odd prime power.
pub(crate) fn primitive_root(modulus: u64) -> u64 {
    let phi: u64 = {
        let fs = factorize(modulus);
        assert_eq!(fs.len(), 1, "prime power expected");
        let (p, _) = fs[0];
        assert!(p % 2 == 1, "odd prime power expected");
        modulus / p * (p - 1).max(1)
    };
    let prime_parts: Vec<u64> = factorize(phi).into_iter().map(|(p, _)| p).collect();
    'next: for g in 2..modulus {
        if gcd(g, modulus) != 1 {
            continue;
        }
        for q in &prime_parts {
            if pow_mod(g, phi / q, modulus) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("no generator found for {modulus}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_lcm() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(lcm(4, 6), 12);
    }

    #[test]
    fn factor_divisors() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(valuation(48, 2), 4);
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn crt_and_inverse() {
        assert_eq!(crt(2, 9, 1, 4), 29);
        assert_eq!(crt(2, 3, 0, 1), 2);
        assert_eq!(crt(0, 1, 3, 5), 3);
        for n in [5u64, 12, 16] {
            for a in 1..n {
                if gcd(a, n) == 1 {
                    assert_eq!(a * inv_mod(a, n) % n, 1);
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(9), 2);
        assert_eq!(primitive_root(25), 2);
    }
}

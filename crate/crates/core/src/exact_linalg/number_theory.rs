//! Small-modulus number theory: Jacobi symbols, square roots modulo prime
//! powers, primality.

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
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
    (r0 == 1).then(|| s0.rem_euclid(m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `n` as `p^r` with `p` prime.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut m, mut r) = (n, 0);
    while m % p == 0 {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi_symbol(a: i64, n: i64) -> Result<i32> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("Jacobi symbol needs odd positive modulus, got {n}")));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// All `x` in `[0, p^k)` with `x^2 = a (mod p^k)`, sorted.
pub fn sqrt_mod_prime_power(a: i64, p: u64, k: u32) -> Result<Vec<u64>> {
    if !is_prime(p) || k == 0 {
        return Err(Error::InvalidArgument(format!("need prime p and k >= 1, got p={p}, k={k}")));
    }
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::InvalidArgument(format!("{a} is not coprime to {p}")));
    }
    let modulus = p.checked_pow(k).ok_or_else(|| Error::InvalidArgument("modulus overflows u64".into()))?;
    let target = |m: u64| a.rem_euclid(m as i64) as u64;
    let mut sols: Vec<u64> = if p == 2 {
        // Lift from mod 2 one bit at a time; every root mod 2^(j+1) reduces
        // to a root mod 2^j.
        let mut s = vec![1u64];
        let mut m = 2u64;
        for _ in 1..k {
            let next = m * 2;
            let t = target(next);
            let mut lifted: Vec<u64> = s
                .iter()
                .flat_map(|&x| [x, x + m])
                .filter(|&x| (x as u128 * x as u128 % next as u128) as u64 == t)
                .collect();
            lifted.sort_unstable();
            lifted.dedup();
            s = lifted;
            m = next;
        }
        s
    } else {
        let Some(x0) = sqrt_mod_prime(target(p), p) else {
            return Ok(Vec::new());
        };
        // Hensel: x <- x - (x^2 - a) / (2x) modulo the next power.
        let mut x = x0 as i128;
        let mut m = p as i128;
        for _ in 1..k {
            m *= p as i128;
            let fx = (x * x - a as i128).rem_euclid(m);
            let inv = mod_inv(2 * x, m).expect("2x invertible for odd p");
            x = (x - fx * inv).rem_euclid(m);
        }
        let x = x as u64;
        vec![x, modulus - x]
    };
    sols.sort_unstable();
    sols.dedup();
    Ok(sols)
}

/// Tonelli-Shanks for an odd prime.
fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)?;
    let mulm = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

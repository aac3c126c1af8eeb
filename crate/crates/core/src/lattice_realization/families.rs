use num_bigint::BigInt;

use super::lattice::Lattice;
use crate::error::{Error, Result};
use crate::exact_linalg::{is_prime, jacobi_symbol, sqrt_mod_prime_power, IntegerMatrix};

/// Largest auxiliary prime tried by [`k_double_prime`].
const AUX_PRIME_LIMIT: u64 = 100_000;

/// The auxiliary prime `p'` for `K''(p^r, p'+1, s)`.
pub fn auxiliary_prime(p: u64, r: u32, s: i32) -> Result<u64> {
    let pr = p.pow(r) as i64;
    (3..AUX_PRIME_LIMIT)
        .step_by(4)
        .filter(|&q| is_prime(q))
        .find(|&q| jacobi_symbol(2 * pr, q as i64) == Ok(1) && jacobi_symbol(2 * q as i64, p as i64) == Ok(s))
        .ok_or_else(|| Error::NoSolution(format!("no auxiliary prime below {AUX_PRIME_LIMIT} for ({p}, {r}, {s})")))
}

/// `K''(p^r, p'+1, s)` for `p = 1 mod 4`: an `A_{p'-1}` chain bordered by a
/// row and column carrying `(p' p^r + 1)/2`, `p^r` and `(2p^r + t(p'-t))/p'`,
/// with `t^2 = 2p^r mod p'`.
pub fn k_double_prime(p: u64, r: u32, s: i32) -> Result<Lattice> {
    if !is_prime(p) || p % 4 != 1 || r == 0 || (s != 1 && s != -1) {
        return Err(Error::InvalidArgument(format!("K'' needs prime p = 1 mod 4, r >= 1, s = +-1; got ({p}, {r}, {s})")));
    }
    let pr = p.checked_pow(r).filter(|&m| m < (1 << 40)).ok_or_else(|| Error::InvalidArgument("p^r too large".into()))?;
    let q = auxiliary_prime(p, r, s)?;
    let t = *sqrt_mod_prime_power((2 * pr % q) as i64, q, 1)?.first().expect("2p^r is a residue mod p'");
    let c = (q + 1) as usize;
    let corner = (2 * pr as u128 + t as u128 * (q - t) as u128) / q as u128;
    let mut g = IntegerMatrix::zeros(c, c);
    g[(0, 0)] = BigInt::from((q as u128 * pr as u128).div_ceil(2));
    g[(0, c - 1)] = BigInt::from(pr);
    g[(c - 1, 0)] = BigInt::from(pr);
    for i in 1..c - 1 {
        g[(i, i)] = BigInt::from(2);
        if i + 1 < c - 1 {
            g[(i, i + 1)] = BigInt::from(-1);
            g[(i + 1, i)] = BigInt::from(-1);
        }
    }
    // 1-indexed position (c - t, c).
    let row = c - t as usize - 1;
    g[(row, c - 1)] = BigInt::from(1);
    g[(c - 1, row)] = BigInt::from(1);
    g[(c - 1, c - 1)] = BigInt::from(corner);
    Lattice::new(g)
}

/// `K_e(r)` for even `r >= 2`.
pub fn k_e(r: u32) -> Result<Lattice> {
    if r < 2 || !r.is_multiple_of(2) || r > 40 {
        return Err(Error::InvalidArgument(format!("K_e needs even r >= 2, got {r}")));
    }
    let x = ((1i64 << r) + 2) / 3;
    Lattice::new(IntegerMatrix::from_rows(&[vec![x, 0, 1], vec![0, 2, -1], vec![1, -1, 2]]))
}

/// `K_o(r)` for odd `r >= 3`.
pub fn k_o(r: u32) -> Result<Lattice> {
    if r < 3 || r % 2 != 1 || r > 40 {
        return Err(Error::InvalidArgument(format!("K_o needs odd r >= 3, got {r}")));
    }
    let x = ((1i64 << r) + 4) / 3;
    Lattice::new(IntegerMatrix::from_rows(&[
        vec![x, 0, 1, 0, 0, 0, -1],
        vec![0, 2, -1, 0, 0, 0, 0],
        vec![1, -1, 2, -1, 0, 0, 0],
        vec![0, 0, -1, 2, -1, 0, -1],
        vec![0, 0, 0, -1, 2, -1, 0],
        vec![0, 0, 0, 0, -1, 2, 0],
        vec![-1, 0, 0, -1, 0, 0, 2],
    ]))
}

/// `[[m]]`, the rank-one lattice of norm `m`.
pub fn rank_one(m: u64) -> Result<Lattice> {
    if m == 0 {
        return Err(Error::Singular);
    }
    Lattice::new(IntegerMatrix::from_fn(1, 1, |_, _| BigInt::from(m)))
}

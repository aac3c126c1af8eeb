//! Even K-matrices with prescribed cyclic discriminant group via Wall's
//! even-remainder continued fractions, plus the direct E/F matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    determinant, gcd, mod_inv, prime_power, rational_inverse, smith_normal_form, IntegerMatrix, RationalMatrix,
};
use crate::metric_groups::{Family, PrimeFamilySpec};

/// Output of the Wall recurrence for `(n, p^r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallSequence {
    pub n: i128,
    pub modulus: i128,
    /// `d_1, ..., d_{k+1}`.
    pub d: Vec<i128>,
    /// `a_1, ..., a_k`.
    pub a: Vec<i128>,
    pub epsilon: i128,
}

impl WallSequence {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Re-checks the defining identities.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Verification(format!("Wall sequence ({}, {}): {m}", self.n, self.modulus)));
        let (d, a) = (&self.d, &self.a);
        if d.len() != a.len() + 1 || d.len() < 2 {
            return bad("length mismatch");
        }
        let d2 = if d.len() > 1 { d[1] } else { 0 };
        if self.n * d[0] - self.modulus * d2 != 1 {
            return bad("initial identity fails");
        }
        for j in 0..a.len() {
            let next = if j + 2 < d.len() { d[j + 2] } else { 0 };
            if a[j] * d[j + 1] - d[j] != next {
                return bad("recurrence fails");
            }
            if a[j] % 2 != 0 {
                return bad("odd partial quotient");
            }
        }
        if d.windows(2).any(|w| w[1].abs() >= w[0].abs()) {
            return bad("|d| not strictly decreasing");
        }
        if self.epsilon.abs() != 1 || *d.last().unwrap() != self.epsilon {
            return bad("terminal value is not +-1");
        }
        Ok(())
    }
}

/// Even integer `a` minimizing `|num - a den|`; ties go to smaller `|a|`, then positive.
fn closest_even(num: i128, den: i128) -> i128 {
    let base = 2 * Integer::div_floor(&num, &(2 * den));
    [base - 2, base, base + 2, base + 4]
        .into_iter()
        .min_by_key(|&c| ((num - c * den).abs(), c.abs(), -c))
        .unwrap()
}

/// Runs the recurrence `d_{j+2} = a_j d_{j+1} - d_j` from `1 = n d_1 - p^r d_2`.
///
/// `d_1` is the smallest positive solution that is even (odd `p`) or satisfies
/// `n d_1 = 1 (mod 2 p^r)` with `d_2 != 0` (`p = 2`).
pub fn wall_sequence(n: i64, modulus: u64) -> Result<WallSequence> {
    let (p, _) = prime_power(modulus)
        .ok_or_else(|| Error::InvalidArgument(format!("modulus {modulus} is not a prime power")))?;
    if n <= 0 || n as u64 >= modulus || gcd(n as u64, p) != 1 {
        return Err(Error::InvalidArgument(format!("need 0 < n < {modulus} coprime to {p}, got n = {n}")));
    }
    if p != 2 && n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("n must be even for odd p, got {n}")));
    }
    let (n, m) = (n as i128, modulus as i128);
    let d1 = if p == 2 {
        let mut d1 = mod_inv(n, 2 * m).expect("n odd");
        if n * d1 == 1 {
            d1 += 2 * m;
        }
        d1
    } else {
        let d1 = mod_inv(n, m).expect("n coprime to p");
        if d1 % 2 == 0 {
            d1
        } else {
            d1 + m
        }
    };
    let d2 = (n * d1 - 1) / m;
    let mut d = vec![d1, d2];
    let mut a = Vec::new();
    loop {
        let j = a.len();
        let aj = closest_even(d[j], d[j + 1]);
        let next = aj * d[j + 1] - d[j];
        a.push(aj);
        if next == 0 {
            break;
        }
        if next.abs() >= d[j + 1].abs() {
            return Err(Error::NoSolution(format!("Wall recurrence stalls for n = {n}, modulus = {m}")));
        }
        d.push(next);
    }
    let epsilon = *d.last().unwrap();
    let seq = WallSequence { n, modulus: m, d, a, epsilon };
    seq.validate()?;
    Ok(seq)
}

/// Tridiagonal `W` with diagonal `(n/p^r, a_1, ..., a_k)` and unit off-diagonal.
pub fn assemble_w(seq: &WallSequence) -> RationalMatrix {
    let size = seq.k() + 1;
    RationalMatrix::from_fn(size, size, |i, j| {
        if i == j {
            if i == 0 {
                BigRational::new(BigInt::from(seq.n), BigInt::from(seq.modulus))
            } else {
                BigRational::from_integer(BigInt::from(seq.a[i - 1]))
            }
        } else if i.abs_diff(j) == 1 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// `K = W^{-1}`, checked integral, even, `|det K| = p^r` and cokernel cyclic.
pub fn k_from_wall(n: i64, modulus: u64) -> Result<IntegerMatrix> {
    let seq = wall_sequence(n, modulus)?;
    let k = rational_inverse(&assemble_w(&seq))?
        .to_integer()
        .ok_or_else(|| Error::Verification("W^-1 is not integral".into()))?;
    verify_cokernel(&k, &[modulus])?;
    Ok(k)
}

/// Checks symmetric, even, and that the cokernel has exactly `factors` as invariant factors.
fn verify_cokernel(k: &IntegerMatrix, factors: &[u64]) -> Result<()> {
    if !k.is_symmetric() {
        return Err(Error::Verification("K is not symmetric".into()));
    }
    if let Some(i) = k.first_odd_diagonal() {
        return Err(Error::NotEven(i));
    }
    let det = determinant(k)?;
    let want: u64 = factors.iter().product();
    if det.abs() != BigInt::from(want) {
        return Err(Error::Verification(format!("|det K| = {} instead of {want}", det.abs())));
    }
    let snf = smith_normal_form(k);
    let got: Vec<u64> = snf.nontrivial_factors().iter().map(|x| x.to_u64().unwrap_or(0)).collect();
    if got != factors {
        return Err(Error::Verification(format!("cokernel factors {got:?} instead of {factors:?}")));
    }
    Ok(())
}

/// The `n` fed to the Wall recurrence for a cyclic family.
///
/// `A_3`, `B_2`, `B_4` and `C_4` have no admissible `n` and are answered by
/// [`Error::Routed`]; E and F are not cyclic.
pub fn choose_c_for_family(spec: &PrimeFamilySpec) -> Result<i64> {
    spec.validate()?;
    let (p, r) = (spec.p, spec.r);
    let routed = || Err(Error::Routed(format!("{spec} is realized by the lattice tables")));
    match spec.family {
        Family::A if p == 3 && r == 1 => routed(),
        Family::A if p != 2 => Ok(4),
        Family::B if p != 2 => match p % 8 {
            3 | 5 => Ok(2),
            7 => Ok(p as i64 - 1),
            _ => {
                let n = (1..p as i64)
                    .find(|&n| crate::exact_linalg::jacobi_symbol(2 * n, p as i64) == Ok(-1))
                    .expect("a non-residue exists");
                Ok(2 * n)
            }
        },
        Family::A => Ok(1),
        Family::B if r <= 2 => routed(),
        Family::B => Ok(7),
        Family::C if r == 2 => routed(),
        Family::C => Ok(5),
        Family::D => Ok(3),
        Family::E | Family::F => {
            Err(Error::InvalidFamily(format!("{spec} is not cyclic; use the direct E/F construction")))
        }
    }
}

/// Wall K-matrix for a cyclic family spec.
pub fn k_for_family(spec: &PrimeFamilySpec) -> Result<IntegerMatrix> {
    let n = choose_c_for_family(spec)?;
    k_from_wall(n, spec.modulus())
}

/// The direct K-matrices with cokernel `Z_{2^r} + Z_{2^r}`.
pub fn direct_ef_k(family: Family, r: u32) -> Result<IntegerMatrix> {
    if r == 0 || r > 40 {
        return Err(Error::InvalidArgument(format!("r = {r} out of range")));
    }
    let m = BigInt::from(1u64 << r);
    let k = match family {
        Family::E => IntegerMatrix::from_rows(&[vec![BigInt::zero(), m.clone()], vec![m, BigInt::zero()]]),
        Family::F => {
            let sign: i64 = if r.is_multiple_of(2) { 1 } else { -1 };
            let a = (BigInt::from(1u64 << r) - sign) / 3;
            let b = -sign;
            let inv_m = |num: i64| BigRational::new(BigInt::from(num), m.clone());
            let int = |x: BigInt| BigRational::from_integer(x);
            let z = BigRational::zero;
            let one = BigRational::one;
            let w = RationalMatrix::from_fn(4, 4, |i, j| match (i, j) {
                (0, 0) | (1, 1) => inv_m(2),
                (0, 1) | (1, 0) => inv_m(1),
                (1, 2) | (2, 1) | (2, 3) | (3, 2) => one(),
                (2, 2) => int(BigInt::from(2) * &a),
                (3, 3) => int(BigInt::from(2 * b)),
                _ => z(),
            });
            rational_inverse(&w)?.to_integer().ok_or_else(|| Error::Verification("F matrix not integral".into()))?
        }
        _ => return Err(Error::InvalidFamily(format!("direct construction exists only for E and F, got {family:?}"))),
    };
    verify_cokernel(&k, &[1 << r, 1 << r])?;
    Ok(k)
}

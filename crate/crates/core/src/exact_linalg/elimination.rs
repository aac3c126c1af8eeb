//! Determinant, inverse and inertia by exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntegerMatrix, RationalMatrix};
use crate::error::{Error, Result};

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, r);
            sign = -sign;
        }
        let piv = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&piv * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = piv;
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Exact inverse by Gauss-Jordan elimination over Q.
pub fn rational_inverse(m: &RationalMatrix) -> Result<RationalMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    for k in 0..n {
        let r = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(k, r);
        inv.swap(k, r);
        let piv = a[k][k].clone();
        for j in 0..n {
            a[k][j] = &a[k][j] / &piv;
            inv[k][j] = &inv[k][j] / &piv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                if !a[k][j].is_zero() {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
                if !inv[k][j].is_zero() {
                    let t = &f * &inv[k][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Ok(RationalMatrix::from_fn(n, n, |i, j| inv[i][j].clone()))
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }
}

/// Sylvester inertia by symmetric fraction-free elimination.
///
/// The active block always equals `prev * S` for `S` the Schur complement
/// of the pivots taken so far, so every division is exact. When the active
/// diagonal is zero but some `a_ij` is not, the congruence `x_i += x_j`
/// produces the nonzero diagonal entry `2 a_ij`.
pub fn inertia(m: &IntegerMatrix) -> Result<Inertia> {
    m.require_symmetric()?;
    let n = m.rows();
    let mut a = m.to_rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    let mut res = Inertia { positive: 0, negative: 0, zero: 0 };
    while !active.is_empty() {
        let pivot = active
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .min_by(|&x, &y| a[x][x].abs().cmp(&a[y][y].abs()).then(x.cmp(&y)));
        match pivot {
            Some(p) => {
                let piv = a[p][p].clone();
                if piv.is_positive() == prev.is_positive() {
                    res.positive += 1;
                } else {
                    res.negative += 1;
                }
                active.retain(|&i| i != p);
                for (ki, &k) in active.iter().enumerate() {
                    for &l in &active[ki..] {
                        let v = (&piv * &a[k][l] - &a[k][p] * &a[p][l]).div_floor(&prev);
                        debug_assert!((&v * &prev) == (&piv * &a[k][l] - &a[k][p] * &a[p][l]));
                        a[k][l] = v.clone();
                        a[l][k] = v;
                    }
                }
                prev = piv;
            }
            None => {
                let pair = active
                    .iter()
                    .enumerate()
                    .flat_map(|(x, &i)| active[x + 1..].iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = pair else {
                    res.zero += active.len();
                    break;
                };
                for &k in &active {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for &k in &active {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
            }
        }
    }
    Ok(res)
}

/// Leading principal minors `f(1), ..., f(n)` (used as a cross-check of the
/// sign-change rule for inertia).
pub fn leading_minors(m: &IntegerMatrix) -> Result<Vec<BigInt>> {
    m.require_square()?;
    (1..=m.rows())
        .map(|k| {
            let idx: Vec<usize> = (0..k).collect();
            determinant(&m.submatrix(&idx, &idx))
        })
        .collect()
}

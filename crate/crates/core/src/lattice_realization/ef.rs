use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::discriminant::discriminant_form;
use super::families::{k_e, k_o, rank_one};
use super::glue::conjugate_lattice;
use super::lattice::Lattice;
use crate::error::{Error, Result};
use crate::exact_linalg::{rational_inverse, IntegerMatrix};
use crate::metric_groups::Family;
use crate::Budget;

/// `w^T K^{-1} w`, exactly.
pub fn dual_norm(gram: &IntegerMatrix, w: &[BigInt]) -> Result<BigRational> {
    let inv = rational_inverse(&gram.to_rational())?;
    let n = w.len();
    if n != gram.rows() {
        return Err(Error::Dimension("glue vector length differs from the Gram size".into()));
    }
    let mut acc = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            if !w[i].is_zero() && !w[j].is_zero() {
                acc += &inv[(i, j)] * BigRational::from_integer(&w[i] * &w[j]);
            }
        }
    }
    Ok(acc)
}

fn to_int(x: BigRational, what: &str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::NoSolution(format!("{what} is not integral: {x}")));
    }
    Ok(x.to_integer())
}

fn pow2(r: u32) -> Result<BigInt> {
    if r == 0 || r > 40 {
        return Err(Error::InvalidArgument(format!("r must lie in 1..=40, got {r}")));
    }
    Ok(BigInt::one() << r)
}

/// Gram of the E-family gluing of two copies of `input` with a rank-2 block.
///
/// Basis: `x0, y, K, K`, where `y` has norm `2^r`, `x0 . y = 1` and `x0`
/// pairs with each copy through the dual vector `lambda = K^{-1} w`; the
/// norm of `x0` is `2/2^r + 2 lambda.lambda`.
pub fn ef_gram_e(input: &IntegerMatrix, w: &[BigInt], r: u32) -> Result<IntegerMatrix> {
    let m = input.rows();
    let two_r = pow2(r)?;
    let ll = dual_norm(input, w)?;
    let corner = BigRational::new(BigInt::from(2), two_r.clone()) + BigRational::from_integer(BigInt::from(2)) * ll;
    let corner = to_int(corner, "E corner")?;
    let n = 2 + 2 * m;
    let mut g = IntegerMatrix::zeros(n, n);
    g[(0, 0)] = corner;
    g[(0, 1)] = BigInt::one();
    g[(1, 0)] = BigInt::one();
    g[(1, 1)] = two_r;
    for copy in 0..2 {
        let off = 2 + copy * m;
        for i in 0..m {
            g[(0, off + i)] = w[i].clone();
            g[(off + i, 0)] = w[i].clone();
            for j in 0..m {
                g[(off + i, off + j)] = input[(i, j)].clone();
            }
        }
    }
    Ok(g)
}

/// Gram of the F-family gluing of `input` with a rank-3 block.
///
/// Basis: `x0, y1, y2, K`, where `y1`, `y2` have norm `2^r`, pair to one
/// with `x0` and to zero with each other; `x0` has norm `3/2^r + mu.mu`.
pub fn ef_gram_f(input: &IntegerMatrix, w: &[BigInt], r: u32) -> Result<IntegerMatrix> {
    let m = input.rows();
    let two_r = pow2(r)?;
    let mm = dual_norm(input, w)?;
    let corner = to_int(BigRational::new(BigInt::from(3), two_r.clone()) + mm, "F corner")?;
    let n = 3 + m;
    let mut g = IntegerMatrix::zeros(n, n);
    g[(0, 0)] = corner;
    for k in 1..3 {
        g[(0, k)] = BigInt::one();
        g[(k, 0)] = BigInt::one();
        g[(k, k)] = two_r.clone();
    }
    for i in 0..m {
        g[(0, 3 + i)] = w[i].clone();
        g[(3 + i, 0)] = w[i].clone();
        for j in 0..m {
            g[(3 + i, 3 + j)] = input[(i, j)].clone();
        }
    }
    Ok(g)
}

/// `u w` for the smallest odd `u` with `(u w)^T K^{-1} (u w) = target mod 2`,
/// `w` the first discriminant generator of a cyclic discriminant group.
pub fn find_glue_vector(input: &IntegerMatrix, target: &BigRational) -> Result<Vec<BigInt>> {
    let disc = discriminant_form(input)?;
    let [gen] = disc.generator_reps() else {
        return Err(Error::InvalidArgument("glue input must have a cyclic discriminant group".into()));
    };
    let n = disc.invariant_factors()[0];
    let two = BigRational::from_integer(BigInt::from(2));
    for u in (1..2 * n).step_by(2) {
        let w: Vec<BigInt> = gen.iter().map(|x| x * BigInt::from(u)).collect();
        let diff = disc.q2_of(&w) - target;
        if (&diff / &two).is_integer() {
            return Ok(w);
        }
    }
    Err(Error::NoSolution(format!("no odd multiple of the generator has norm {target} mod 2")))
}

/// Positive-definite input lattice for the E/F gluing.
pub fn ef_input(family: Family, r: u32, budget: &Budget) -> Result<Lattice> {
    match family {
        Family::E => conjugate_lattice(&rank_one(1 << r)?, budget),
        Family::F if r == 1 => rank_one(2),
        Family::F if r.is_multiple_of(2) => conjugate_lattice(&k_e(r)?, budget),
        Family::F => conjugate_lattice(&k_o(r)?, budget),
        _ => Err(Error::InvalidFamily(format!("{family:?} is not glued from generating data"))),
    }
}

/// Even positive-definite realization of `E_{2^r}` or `F_{2^r}`.
pub fn build_ef_positive(family: Family, r: u32, budget: &Budget) -> Result<Lattice> {
    if r == 0 || r > 20 {
        return Err(Error::InvalidArgument(format!("r must lie in 1..=20, got {r}")));
    }
    let input = ef_input(family, r, budget)?;
    let k = input.gram();
    let two_r = BigInt::one() << r;
    let gram = if family == Family::E {
        let w = find_glue_vector(k, &BigRational::new(BigInt::from(-1), two_r))?;
        ef_gram_e(k, &w, r)?
    } else {
        let w = find_glue_vector(k, &BigRational::new(BigInt::from(-3), two_r))?;
        ef_gram_f(k, &w, r)?
    };
    let lat = Lattice::new(gram)?;
    if !lat.is_even() || !lat.is_positive_definite() {
        return Err(Error::Verification("E/F gluing is not even positive definite".into()));
    }
    Ok(lat)
}

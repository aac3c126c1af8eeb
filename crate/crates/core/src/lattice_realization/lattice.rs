use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{determinant, inertia, IntegerMatrix, RationalMatrix};

/// Rows `numerators / denominator` in a fixed quadratic space with Gram `gram`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientBasis {
    pub numerators: IntegerMatrix,
    pub denominator: BigInt,
    pub gram: IntegerMatrix,
}

impl AmbientBasis {
    pub fn basis(&self) -> RationalMatrix {
        RationalMatrix::from_integer_over(&self.numerators, &self.denominator)
    }

    /// `B G B^T`, which must be integral.
    pub fn induced_gram(&self) -> Result<IntegerMatrix> {
        let b = &self.numerators;
        let prod = b.mul(&self.gram)?.mul(&b.transpose())?;
        let d2 = &self.denominator * &self.denominator;
        let mut out = IntegerMatrix::zeros(prod.rows(), prod.cols());
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let (q, r) = num_integer::Integer::div_rem(&prod[(i, j)], &d2);
                if !r.is_zero() {
                    return Err(Error::Verification("ambient basis induces a non-integral Gram matrix".into()));
                }
                out[(i, j)] = q;
            }
        }
        Ok(out)
    }
}

/// An integral lattice given by its Gram matrix, optionally with a basis in
/// an ambient quadratic space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: IntegerMatrix,
    ambient: Option<AmbientBasis>,
}

impl Lattice {
    pub fn new(gram: IntegerMatrix) -> Result<Self> {
        gram.require_symmetric()?;
        if gram.rows() > 0 && determinant(&gram)?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Lattice { gram, ambient: None })
    }

    /// Attaches an ambient basis after checking that it induces `gram`.
    pub fn with_ambient(gram: IntegerMatrix, ambient: AmbientBasis) -> Result<Self> {
        let lat = Lattice::new(gram)?;
        if ambient.induced_gram()? != lat.gram {
            return Err(Error::Verification("ambient basis does not induce the Gram matrix".into()));
        }
        Ok(Lattice { ambient: Some(ambient), ..lat })
    }

    pub(crate) fn with_ambient_unchecked(gram: IntegerMatrix, ambient: AmbientBasis) -> Self {
        Lattice { gram, ambient: Some(ambient) }
    }

    pub fn gram(&self) -> &IntegerMatrix {
        &self.gram
    }

    pub fn into_gram(self) -> IntegerMatrix {
        self.gram
    }

    pub fn ambient(&self) -> Option<&AmbientBasis> {
        self.ambient.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        self.gram.is_even()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gram).expect("square")
    }

    pub fn is_positive_definite(&self) -> bool {
        inertia(&self.gram).map(|i| i.is_positive_definite()).unwrap_or(false)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Coordinates (with respect to this lattice's basis) of ambient vectors,
    /// failing with [`Error::NotContained`] unless they are lattice vectors.
    pub fn sublattice_from_ambient(&self, vectors: &RationalMatrix) -> Result<Sublattice> {
        let amb = self.ambient.as_ref().ok_or_else(|| Error::InvalidArgument("lattice has no ambient basis".into()))?;
        let b = amb.basis();
        if vectors.cols() != b.cols() {
            return Err(Error::Dimension("vectors live in a different ambient space".into()));
        }
        let coords = solve_left(&b, vectors)?.to_integer().ok_or(Error::NotContained)?;
        Ok(Sublattice { coords })
    }
}

/// `X` with `X B = Y`, for `B` of full row rank.
fn solve_left(b: &RationalMatrix, y: &RationalMatrix) -> Result<RationalMatrix> {
    // Row-reduce [B^T | Y^T].
    let (n, m) = (b.rows(), b.cols());
    let k = y.rows();
    let mut a: Vec<Vec<BigRational>> =
        (0..m).map(|j| (0..n).map(|i| b[(i, j)].clone()).chain((0..k).map(|i| y[(i, j)].clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..n {
        let Some(p) = (row..m).find(|&r| !a[r][c].is_zero()) else {
            return Err(Error::Dimension("ambient basis is not of full rank".into()));
        };
        a.swap(row, p);
        let piv = a[row][c].clone();
        for v in a[row].iter_mut() {
            *v /= &piv;
        }
        for r in 0..m {
            if r != row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..n + k {
                    if !a[row][j].is_zero() {
                        let t = &f * &a[row][j];
                        a[r][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if a[row..].iter().any(|r| r[n..].iter().any(|x| !x.is_zero())) {
        return Err(Error::NotContained);
    }
    Ok(RationalMatrix::from_fn(k, n, |i, j| a[j][n + i].clone()))
}

/// A sublattice given by integer coordinates of its basis in a parent lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub coords: IntegerMatrix,
}

impl Sublattice {
    pub fn rank(&self) -> usize {
        self.coords.rows()
    }

    /// Gram matrix of the sublattice inside `parent`.
    pub fn gram_in(&self, parent: &Lattice) -> Result<IntegerMatrix> {
        self.coords.mul(parent.gram())?.mul(&self.coords.transpose())
    }

    /// Primitive iff the quotient is torsion-free, i.e. all invariant factors are one.
    pub fn is_primitive(&self) -> bool {
        let snf = crate::exact_linalg::smith_normal_form(&self.coords);
        snf.diagonal().iter().all(|x| x.is_one())
    }
}

/// `A_n` Cartan matrix (tridiagonal `2, -1`).
pub fn cartan_a(n: usize) -> Lattice {
    Lattice::new(tridiagonal(n)).expect("A_n is nondegenerate")
}

fn tridiagonal(n: usize) -> IntegerMatrix {
    IntegerMatrix::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::from(2)
        } else if i.abs_diff(j) == 1 {
            BigInt::from(-1)
        } else {
            BigInt::zero()
        }
    })
}

/// `D_n` Cartan matrix, `n >= 2`: a chain of `n - 1` nodes with the last node
/// attached to the second-to-last one of the chain.
pub fn cartan_d(n: usize) -> Result<Lattice> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("D_{n} needs n >= 2")));
    }
    if n == 2 {
        return Lattice::new(IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
    }
    let mut g = tridiagonal(n);
    g[(n - 1, n - 2)] = BigInt::zero();
    g[(n - 2, n - 1)] = BigInt::zero();
    g[(n - 1, n - 3)] = BigInt::from(-1);
    g[(n - 3, n - 1)] = BigInt::from(-1);
    Lattice::new(g)
}

/// `E_6`, `E_7`, `E_8` Cartan matrices: a chain of `n - 1` nodes with the
/// extra node attached to the third node of the chain.
pub fn cartan_e(n: usize) -> Result<Lattice> {
    if !(6..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("E_{n} needs 6 <= n <= 8")));
    }
    let mut g = tridiagonal(n);
    g[(n - 1, n - 2)] = BigInt::zero();
    g[(n - 2, n - 1)] = BigInt::zero();
    g[(n - 1, 2)] = BigInt::from(-1);
    g[(2, n - 1)] = BigInt::from(-1);
    Lattice::new(g)
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{smith_normal_form, IntegerMatrix};
use crate::metric_groups::MetricGroup;

/// The discriminant form `(Lambda^*/Lambda, q_2)` of an even lattice.
///
/// Dual vectors are written as `K^{-1} w` for integer `w`; with
/// `U K V = S`, the cokernel generators are the columns of `U^{-1}` whose
/// invariant factor exceeds one, and the coset of `w` has coordinates
/// `(U w)_i mod s_i`.
#[derive(Clone, Debug)]
pub struct DiscriminantData {
    invariant_factors: Vec<u64>,
    generator_reps: Vec<Vec<BigInt>>,
    q2: Vec<BigRational>,
    bilinear: Vec<Vec<BigRational>>,
    u: IntegerMatrix,
    v: IntegerMatrix,
    diag: Vec<BigInt>,
    nontrivial: Vec<usize>,
    group: MetricGroup,
}

fn mod_rat(x: BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let q = (&x / &m).floor();
    x - q * m
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl DiscriminantData {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Integer vectors `w` with `K^{-1} w` representing the generators.
    pub fn generator_reps(&self) -> &[Vec<BigInt>] {
        &self.generator_reps
    }

    /// `q_2` on the generators, in `[0, 2)`.
    pub fn q2_values(&self) -> &[BigRational] {
        &self.q2
    }

    /// `b` on generator pairs, in `[0, 1)`.
    pub fn bilinear_values(&self) -> &[Vec<BigRational>] {
        &self.bilinear
    }

    /// `(A, q_2 / 2 mod 1)` as a metric group, in generator coordinates.
    pub fn metric_group(&self) -> &MetricGroup {
        &self.group
    }

    /// Coset coordinates of the dual vector `K^{-1} w`.
    pub fn coset_of(&self, w: &[BigInt]) -> Vec<u64> {
        self.nontrivial
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&i, &s)| dot(self.u.row(i), w).mod_floor(&BigInt::from(s)).to_u64().unwrap())
            .collect()
    }

    /// An integer representative `w` of the coset with the given coordinates.
    pub fn representative(&self, x: &[u64]) -> Vec<BigInt> {
        let n = self.generator_reps.first().map_or(0, |g| g.len());
        let mut w = vec![BigInt::zero(); n];
        for (xi, g) in x.iter().zip(&self.generator_reps) {
            for (wj, gj) in w.iter_mut().zip(g) {
                *wj += gj * BigInt::from(*xi);
            }
        }
        w
    }

    /// `K^{-1} w`, exactly.
    pub fn dual_vector(&self, w: &[BigInt]) -> Vec<BigRational> {
        let n = w.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, s) in self.diag.iter().enumerate() {
            let c = BigRational::new(dot(self.u.row(i), w), s.clone());
            if c.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                *o += &c * BigRational::from_integer(self.v[(r, i)].clone());
            }
        }
        out
    }

    /// `w^T K^{-1} w mod 2`, evaluated directly.
    pub fn q2_of(&self, w: &[BigInt]) -> BigRational {
        let x = self.dual_vector(w);
        let norm: BigRational = w.iter().zip(&x).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum();
        mod_rat(norm, 2)
    }

    /// `q_2` of the coset with coordinates `x`, from the generator data.
    pub fn q2_of_coset(&self, x: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            for j in 0..x.len() {
                let f = BigRational::from_integer(BigInt::from(x[i]) * BigInt::from(x[j]));
                acc += f * if i == j { &self.q2[i] } else { &self.bilinear[i][j] };
            }
        }
        mod_rat(acc, 2)
    }
}

/// Discriminant group and form of an even nondegenerate Gram matrix.
pub fn discriminant_form(gram: &IntegerMatrix) -> Result<DiscriminantData> {
    gram.require_symmetric()?;
    if let Some(i) = gram.first_odd_diagonal() {
        return Err(Error::NotEven(i));
    }
    let n = gram.rows();
    let snf = smith_normal_form(gram);
    let diag = snf.diagonal();
    if diag.iter().any(|s| s.is_zero()) {
        return Err(Error::Singular);
    }
    let idx: Vec<usize> = (0..n).filter(|&i| diag[i] > BigInt::from(1)).collect();
    let mut factors = Vec::with_capacity(idx.len());
    for &i in &idx {
        let s = diag[i].to_u64().filter(|&s| s < (1 << 40)).ok_or(Error::BudgetExceeded {
            what: "invariant factor",
            needed: u64::MAX,
            budget: 1 << 40,
        })?;
        factors.push(s);
    }
    let gens: Vec<Vec<BigInt>> = idx.iter().map(|&i| (0..n).map(|r| snf.u_inv[(r, i)].clone()).collect()).collect();
    let vcols: Vec<Vec<BigInt>> = idx.iter().map(|&i| (0..n).map(|r| snf.v[(r, i)].clone()).collect()).collect();
    let k = idx.len();
    let q2: Vec<BigRational> =
        (0..k).map(|i| mod_rat(BigRational::new(dot(&gens[i], &vcols[i]), BigInt::from(factors[i])), 2)).collect();
    let bilinear: Vec<Vec<BigRational>> = (0..k)
        .map(|i| (0..k).map(|j| mod_rat(BigRational::new(dot(&gens[i], &vcols[j]), BigInt::from(factors[j])), 1)).collect())
        .collect();
    let level = 2 * factors.last().copied().unwrap_or(1);
    let over_level = |x: &BigRational, scale: u64| -> u64 {
        let v = x * BigRational::from_integer(BigInt::from(scale));
        debug_assert!(v.is_integer());
        v.to_integer().mod_floor(&BigInt::from(level)).to_u64().unwrap()
    };
    // q = q2 / 2, so its numerator over `level` is q2 * level / 2.
    let qn: Vec<u64> = q2.iter().map(|x| over_level(x, level / 2)).collect();
    let bn: Vec<Vec<u64>> = bilinear.iter().map(|r| r.iter().map(|x| over_level(x, level)).collect()).collect();
    let group = MetricGroup::from_generators(&factors, level, &qn, &bn)?;
    debug_assert_eq!(group.factors(), &factors[..]);
    if !group.is_nondegenerate() {
        return Err(Error::Verification("discriminant form is degenerate".into()));
    }
    let data = DiscriminantData {
        invariant_factors: factors,
        generator_reps: gens,
        q2,
        bilinear,
        u: snf.u,
        v: snf.v,
        diag,
        nontrivial: idx,
        group,
    };
    debug_assert!(data.q2.iter().all(|x| !x.is_negative()));
    Ok(data)
}

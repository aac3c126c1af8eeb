use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::discriminant::discriminant_form;
use crate::error::{Error, Result};
use crate::exact_linalg::{inertia, IntegerMatrix};
use crate::Budget;

/// Minimal weight of one dual coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetWeight {
    /// Coset coordinates in the discriminant generators.
    pub coset: Vec<u64>,
    /// `min (x.x)/2` over the coset.
    pub h: BigRational,
    /// A minimizer, as `K^{-1} w` with `w` integral.
    pub w: Vec<BigInt>,
}

/// `K = U^T D U`, `U` unit upper triangular.
struct Decomposition {
    d: Vec<BigRational>,
    u: Vec<Vec<BigRational>>,
}

fn decompose(k: &IntegerMatrix) -> Decomposition {
    let n = k.rows();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(k[(i, j)].clone())).collect()).collect();
    let mut d = Vec::with_capacity(n);
    let mut u = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let di = a[i][i].clone();
        for j in i + 1..n {
            u[i][j] = &a[i][j] / &di;
        }
        for j in i + 1..n {
            if u[i][j].is_zero() {
                continue;
            }
            for l in i + 1..n {
                let t = &u[i][j] * &u[i][l] * &di;
                a[j][l] -= t;
            }
        }
        d.push(di);
    }
    Decomposition { d, u }
}

struct Search<'a> {
    dec: &'a Decomposition,
    center: Vec<BigRational>,
    z: Vec<BigRational>,
    best: BigRational,
    best_z: Vec<BigRational>,
}

impl Search<'_> {
    fn offset(&self, i: usize) -> BigRational {
        let mut t = self.center[i].clone();
        for j in i + 1..self.z.len() {
            if !self.dec.u[i][j].is_zero() {
                t += &self.dec.u[i][j] * &self.z[j];
            }
        }
        t
    }

    /// Nearest-plane descent, giving the initial bound.
    fn babai(&mut self) {
        let n = self.z.len();
        let mut total = BigRational::zero();
        for i in (0..n).rev() {
            let t = self.offset(i);
            let k = (-&t).round();
            let y = &t + &k;
            total += &self.dec.d[i] * &y * &y;
            self.z[i] = &self.center[i] + k;
        }
        self.best = total;
        self.best_z = self.z.clone();
    }

    fn descend(&mut self, i: usize, partial: BigRational) {
        let t = self.offset(i);
        let room = (&self.best - &partial) / &self.dec.d[i];
        let radius = room.to_f64().unwrap_or(f64::MAX).max(0.0).sqrt() + 1.0;
        let mid = -t.to_f64().unwrap_or(0.0);
        let lo = (mid - radius).floor() as i64;
        let hi = (mid + radius).ceil() as i64;
        let mut cands: Vec<(BigRational, BigInt)> = (lo..=hi)
            .map(|k| {
                let y = &t + BigRational::from_integer(BigInt::from(k));
                (&y * &y, BigInt::from(k))
            })
            .collect();
        cands.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        for (y2, k) in cands {
            let s = &partial + &self.dec.d[i] * y2;
            if s.cmp(&self.best) != Ordering::Less {
                break;
            }
            self.z[i] = &self.center[i] + BigRational::from_integer(k);
            if i == 0 {
                self.best = s;
                self.best_z = self.z.clone();
            } else {
                self.descend(i - 1, s);
            }
        }
    }
}

/// Minimal norm over `c + Z^n` in the form `K`, and a minimizer.
fn closest(dec: &Decomposition, center: Vec<BigRational>) -> (BigRational, Vec<BigRational>) {
    let n = center.len();
    let mut s = Search { dec, center, z: vec![BigRational::zero(); n], best: BigRational::zero(), best_z: Vec::new() };
    s.babai();
    if n > 0 {
        s.descend(n - 1, BigRational::zero());
    }
    (s.best, s.best_z)
}

fn check_input(gram: &IntegerMatrix, budget: &Budget) -> Result<()> {
    if gram.rows() > budget.rank {
        return Err(Error::BudgetExceeded { what: "rank", needed: gram.rows() as u64, budget: budget.rank as u64 });
    }
    if !inertia(gram)?.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(())
}

/// Minimal conformal weight `h_a` of every dual coset, in element order.
///
/// A dual vector in coset `a` is `K^{-1}(w_a + K z) = c + z`; the norm
/// `(c+z)^T K (c+z)` is minimized by Fincke-Pohst enumeration in the
/// rational decomposition `K = U^T D U`, seeded with the nearest-plane point.
pub fn coset_minima(gram: &IntegerMatrix, budget: &Budget) -> Result<Vec<CosetWeight>> {
    check_input(gram, budget)?;
    let disc = discriminant_form(gram)?;
    let group = disc.metric_group();
    if group.order() > budget.group {
        return Err(Error::BudgetExceeded { what: "discriminant group", needed: group.order(), budget: budget.group });
    }
    let dec = decompose(gram);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut out = Vec::with_capacity(group.order() as usize);
    for x in group.elements() {
        let w = disc.representative(&x);
        let center = disc.dual_vector(&w);
        let (norm, z) = closest(&dec, center);
        let h = &norm * &half;
        let q2 = disc.q2_of(&w);
        if !(&h - &q2 * &half).is_integer() {
            return Err(Error::Verification(format!("h = {h} disagrees with q2 = {q2}")));
        }
        // Back to integer coordinates: w_min = K z.
        let wmin: Vec<BigInt> = (0..z.len())
            .map(|i| {
                let s: BigRational =
                    (0..z.len()).map(|j| BigRational::from_integer(gram[(i, j)].clone()) * &z[j]).sum();
                s.to_integer()
            })
            .collect();
        out.push(CosetWeight { coset: x, h, w: wmin });
    }
    Ok(out)
}

/// `r c/4 + r(r-1)/2 - 6 sum h_a` with `r = |A|` and `c` the rank.
pub fn extremality_score(gram: &IntegerMatrix, budget: &Budget) -> Result<BigRational> {
    let weights = coset_minima(gram, budget)?;
    let r = BigInt::from(weights.len());
    let c = BigInt::from(gram.rows());
    let sum: BigRational = weights.iter().map(|w| w.h.clone()).sum();
    Ok(BigRational::new(&r * c, BigInt::from(4)) + BigRational::new(&r * (&r - 1), BigInt::from(2))
        - sum * BigRational::from_integer(BigInt::from(6)))
}

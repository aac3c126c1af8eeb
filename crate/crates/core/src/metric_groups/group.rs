use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::family::{Family, PrimeFamilySpec};
use crate::error::{Error, Result};
use crate::exact_linalg::{gcd, lcm, smith_normal_form, IntegerMatrix};

/// A finite abelian group `A = Z_{n_1} + ... + Z_{n_k}` (invariant factors,
/// `n_i | n_{i+1}`, all `> 1`) with a quadratic form `q: A -> Q/Z`.
///
/// The form is stored through its values on generators: `q(e_i) = q_i / N`
/// and the associated bilinear form `b(e_i, e_j) = b_ij / N`, all modulo 1,
/// with `N` (the level) the least common denominator. Then
/// `q(x) = sum x_i^2 q_i + sum_{i<j} x_i x_j b_ij  (mod N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MetricGroup {
    factors: Vec<u64>,
    level: u64,
    q: Vec<u64>,
    b: Vec<Vec<u64>>,
}

impl MetricGroup {
    pub fn trivial() -> Self {
        MetricGroup { factors: Vec::new(), level: 1, q: Vec::new(), b: Vec::new() }
    }

    /// Builds a metric group from arbitrary generator orders and form data
    /// over a common denominator `level`. `b[i][i]` must equal `2 q[i]`.
    /// The result is put in invariant-factor form.
    pub fn from_generators(orders: &[u64], level: u64, q: &[u64], b: &[Vec<u64>]) -> Result<Self> {
        let k = orders.len();
        if q.len() != k || b.len() != k || b.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension("generator data has inconsistent sizes".into()));
        }
        if level == 0 || orders.contains(&0) {
            return Err(Error::InvalidArgument("orders and level must be positive".into()));
        }
        let n = level as u128;
        let q: Vec<u64> = q.iter().map(|&x| x % level).collect();
        let b: Vec<Vec<u64>> = b.iter().map(|r| r.iter().map(|&x| x % level).collect()).collect();
        for i in 0..k {
            let ni = orders[i] as u128;
            if b[i][i] as u128 != 2 * q[i] as u128 % n {
                return Err(Error::InvalidArgument(format!("b(e{i},e{i}) is not 2 q(e{i})")));
            }
            if !(ni * ni % n * q[i] as u128).is_multiple_of(n) || !(2 * ni * q[i] as u128).is_multiple_of(n) {
                return Err(Error::InvalidArgument(format!("q is not well defined on generator {i}")));
            }
            for j in 0..k {
                if b[i][j] != b[j][i] {
                    return Err(Error::InvalidArgument("b is not symmetric".into()));
                }
                if !(ni * b[i][j] as u128).is_multiple_of(n) {
                    return Err(Error::InvalidArgument(format!("b(e{i},e{j}) is not well defined")));
                }
            }
        }
        let raw = MetricGroup { factors: orders.to_vec(), level, q, b };
        Ok(raw.canonical())
    }

    /// Re-expresses the group in invariant-factor form and reduces the level.
    fn canonical(self) -> Self {
        let k = self.factors.len();
        let already = self.factors.iter().all(|&n| n > 1) && self.factors.windows(2).all(|w| w[1] % w[0] == 0);
        let mut g = if already {
            self
        } else {
            let d = IntegerMatrix::from_fn(k, k, |i, j| if i == j { BigInt::from(self.factors[i]) } else { BigInt::zero() });
            let snf = smith_normal_form(&d);
            let diag = snf.diagonal();
            let mut factors = Vec::new();
            let mut gens = Vec::new();
            for (i, s) in diag.iter().enumerate() {
                let s = s.to_u64().expect("invariant factor fits");
                if s > 1 {
                    factors.push(s);
                    let col: Vec<u64> = (0..k)
                        .map(|j| {
                            let nj = BigInt::from(self.factors[j]);
                            let v = ((&snf.u_inv[(j, i)] % &nj) + &nj) % &nj;
                            v.to_u64().unwrap()
                        })
                        .collect();
                    gens.push(col);
                }
            }
            let q: Vec<u64> = gens.iter().map(|x| self.q_num(x)).collect();
            let b: Vec<Vec<u64>> = gens.iter().map(|x| gens.iter().map(|y| self.b_num(x, y)).collect()).collect();
            MetricGroup { factors, level: self.level, q, b }
        };
        let mut d = g.level;
        for &x in g.q.iter().chain(g.b.iter().flatten()) {
            d = gcd(d, x);
        }
        if d > 1 {
            g.level /= d;
            g.q.iter_mut().for_each(|x| *x /= d);
            g.b.iter_mut().flatten().for_each(|x| *x /= d);
        }
        g
    }

    pub fn build_prime(spec: &PrimeFamilySpec) -> Result<Self> {
        spec.validate()?;
        let pr = spec.modulus();
        let cyclic = |level: u64, num: u64| {
            let num = num % level;
            MetricGroup::from_generators(&[pr], level, &[num], &[vec![2 * num % level]])
        };
        let g = match spec.family {
            Family::A | Family::B if spec.p != 2 => cyclic(pr, spec.odd_numerator().expect("odd family"))?,
            Family::A => cyclic(2 * pr, 1)?,
            Family::B => cyclic(2 * pr, 2 * pr - 1)?,
            Family::C => cyclic(2 * pr, 5)?,
            Family::D => cyclic(2 * pr, 2 * pr - 5)?,
            Family::E => MetricGroup::from_generators(&[pr, pr], pr, &[0, 0], &[vec![0, 1], vec![1, 0]])?,
            Family::F => {
                MetricGroup::from_generators(&[pr, pr], pr, &[1 % pr, 1 % pr], &[vec![2 % pr, 1], vec![1, 2 % pr]])?
            }
        };
        if !g.is_nondegenerate() {
            return Err(Error::Verification(format!("{spec} produced a degenerate form")));
        }
        Ok(g)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Numerators of `q` on the generators (over [`MetricGroup::level`]).
    pub fn generator_q(&self) -> &[u64] {
        &self.q
    }

    pub fn generator_b(&self) -> &[Vec<u64>] {
        &self.b
    }

    /// `q(x) * level mod level`, for `x` in generator coordinates.
    pub fn q_num(&self, x: &[u64]) -> u64 {
        let n = self.level as u128;
        let mut acc: u128 = 0;
        for i in 0..x.len() {
            let xi = x[i] as u128 % n;
            acc = (acc + xi * xi % n * self.q[i] as u128) % n;
            for j in i + 1..x.len() {
                acc = (acc + xi * (x[j] as u128 % n) % n * self.b[i][j] as u128) % n;
            }
        }
        acc as u64
    }

    /// `b(x, y) * level mod level`.
    pub fn b_num(&self, x: &[u64], y: &[u64]) -> u64 {
        let n = self.level as u128;
        let mut acc: u128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                acc = (acc + (x[i] as u128 % n) * (y[j] as u128 % n) % n * self.b[i][j] as u128) % n;
            }
        }
        acc as u64
    }

    /// `q(x)` as a rational in `[0, 1)`.
    pub fn q(&self, x: &[u64]) -> BigRational {
        BigRational::new(BigInt::from(self.q_num(x)), BigInt::from(self.level))
    }

    pub fn b(&self, x: &[u64], y: &[u64]) -> BigRational {
        BigRational::new(BigInt::from(self.b_num(x, y)), BigInt::from(self.level))
    }

    /// Coordinates of the element with lexicographic index `idx`.
    pub fn element(&self, mut idx: u64) -> Vec<u64> {
        let mut x = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            x[i] = idx % self.factors[i];
            idx /= self.factors[i];
        }
        x
    }

    pub fn index_of(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.factors).fold(0, |acc, (&xi, &n)| acc * n + xi % n)
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.factors).map(|((a, b), n)| (a + b) % n).collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.factors).map(|(a, n)| ((k as u128 * *a as u128) % *n as u128) as u64).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.factors).fold(1, |acc, (&a, &n)| lcm(acc, n / gcd(a, n)))
    }

    /// Dense table of `q` numerators indexed by element index.
    pub fn q_table(&self, budget: u64) -> Result<Vec<u64>> {
        let n = self.order();
        if n > budget {
            return Err(Error::BudgetExceeded { what: "q table", needed: n, budget });
        }
        Ok(self.elements().map(|x| self.q_num(&x)).collect())
    }

    /// Same group and form expressed over a multiple of the level.
    pub(crate) fn q_at_level(&self, x: &[u64], level: u64) -> u64 {
        debug_assert_eq!(level % self.level, 0);
        self.q_num(x) * (level / self.level)
    }

    pub(crate) fn b_at_level(&self, x: &[u64], y: &[u64], level: u64) -> u64 {
        self.b_num(x, y) * (level / self.level)
    }

    /// Orthogonal sum.
    pub fn direct_sum(&self, other: &MetricGroup) -> MetricGroup {
        let level = lcm(self.level, other.level);
        let (s1, s2) = (level / self.level, level / other.level);
        let k1 = self.rank();
        let k = k1 + other.rank();
        let mut orders = self.factors.clone();
        orders.extend(&other.factors);
        let mut q: Vec<u64> = self.q.iter().map(|x| x * s1).collect();
        q.extend(other.q.iter().map(|x| x * s2));
        let mut b = vec![vec![0; k]; k];
        for i in 0..k1 {
            for j in 0..k1 {
                b[i][j] = self.b[i][j] * s1;
            }
        }
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                b[k1 + i][k1 + j] = other.b[i][j] * s2;
            }
        }
        MetricGroup::from_generators(&orders, level, &q, &b).expect("orthogonal sum of valid forms")
    }

    /// `(A, -q)`.
    pub fn conjugate(&self) -> MetricGroup {
        let n = self.level;
        MetricGroup {
            factors: self.factors.clone(),
            level: n,
            q: self.q.iter().map(|&x| (n - x) % n).collect(),
            b: self.b.iter().map(|r| r.iter().map(|&x| (n - x) % n).collect()).collect(),
        }
    }

    /// True when `x -> b(x, .)` is injective: the subgroup
    /// `{x in Z^k : B x = 0 mod N}` must be exactly `diag(n) Z^k`, which is
    /// read off the Smith form of the integer matrix `B`.
    pub fn is_nondegenerate(&self) -> bool {
        let k = self.rank();
        let bm = IntegerMatrix::from_fn(k, k, |i, j| BigInt::from(self.b[i][j]));
        let snf = smith_normal_form(&bm);
        let nn = BigInt::from(self.level);
        let mut index = BigInt::from(1);
        for s in snf.diagonal() {
            let g = num_integer::Integer::gcd(&s, &nn);
            index *= &nn / g;
        }
        index == BigInt::from(self.order())
    }
}

impl fmt::Debug for MetricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MetricGroup{{factors: {:?}, level: {}, q: {:?}, b: {:?}}}", self.factors, self.level, self.q, self.b)
    }
}

impl fmt::Display for MetricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("+"))?;
        let qs: Vec<String> = (0..self.rank())
            .map(|i| {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                self.q(&e).to_string()
            })
            .collect();
        write!(f, " q(gens)=[{}]", qs.join(", "))
    }
}

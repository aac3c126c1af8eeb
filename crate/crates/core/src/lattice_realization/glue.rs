use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::discriminant::{discriminant_form, DiscriminantData};
use super::lattice::{AmbientBasis, Lattice, Sublattice};
use crate::error::{Error, Result};
use crate::exact_linalg::{hermite_normal_form, inertia, left_kernel, rational_inverse, IntegerMatrix};
use crate::Budget;

const COPIES: usize = 8;

/// An isotropic subgroup of `D^8`, `D` the discriminant group of the base.
#[derive(Clone, Debug)]
pub struct GlueGroup {
    /// Each generator as eight blocks of coset coordinates in `D`.
    pub generators: Vec<Vec<Vec<u64>>>,
    /// `|D|^4`.
    pub order: BigInt,
}

impl GlueGroup {
    /// `q = 0` on generators and `b = 0` on generator pairs, hence on all of the group.
    pub fn is_totally_isotropic(&self, disc: &DiscriminantData) -> bool {
        let g = disc.metric_group();
        let q = |x: &[Vec<u64>]| x.iter().map(|s| g.q_num(s)).sum::<u64>() % g.level();
        let b = |x: &[Vec<u64>], y: &[Vec<u64>]| x.iter().zip(y).map(|(s, t)| g.b_num(s, t)).sum::<u64>() % g.level();
        self.generators.iter().all(|x| q(x) == 0)
            && self.generators.iter().all(|x| self.generators.iter().all(|y| b(x, y) == 0))
    }
}

/// Result of [`glue_selfdual_8`].
#[derive(Clone, Debug)]
pub struct GluedLattice {
    pub lattice: Lattice,
    /// The first summand of `base^8`, in coordinates of `lattice`.
    pub copy: Sublattice,
    pub glue: GlueGroup,
}

/// Lexicographically first `(a, b, c, d)` with `a^2 + b^2 + c^2 + d^2 = n`.
pub fn four_squares(n: u64) -> (u64, u64, u64, u64) {
    let isqrt = |x: u64| {
        let mut r = (x as f64).sqrt() as u64;
        while r * r > x {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= x {
            r += 1;
        }
        r
    };
    for a in 0..=isqrt(n) {
        let ra = n - a * a;
        for b in 0..=isqrt(ra) {
            let rb = ra - b * b;
            for c in 0..=isqrt(rb) {
                let rc = rb - c * c;
                let d = isqrt(rc);
                if d * d == rc {
                    return (a, b, c, d);
                }
            }
        }
    }
    unreachable!("every natural number is a sum of four squares")
}

/// Left-regular quaternion matrix of `a + bi + cj + dk`; `M^T M = (a^2+b^2+c^2+d^2) I`.
fn quaternion_matrix((a, b, c, d): (u64, u64, u64, u64)) -> [[i64; 4]; 4] {
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
}

/// Embeds `base` primitively into an even unimodular lattice of rank `8 rank(base)`.
///
/// The overlattice of `base^8` is cut out by the glue group
/// `H = {(x, M x) : x in D^4}`, where `M` is the quaternion matrix of a
/// decomposition `m - 1 = a^2 + b^2 + c^2 + d^2` and `m` is the level of the
/// discriminant form. Then `q(x, Mx) = m q(x) = 0`, `|H| = |D|^4`, and `H`
/// meets the first summand trivially. Everything is carried out in dual
/// coordinates `w`, where `x = K^{-1} w`.
pub fn glue_selfdual_8(base: &Lattice, budget: &Budget) -> Result<GluedLattice> {
    let k = base.gram();
    if !base.is_even() {
        return Err(Error::NotEven(k.first_odd_diagonal().unwrap_or(0)));
    }
    if !inertia(k)?.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let disc = discriminant_form(k)?;
    let order = disc.order();
    if order > budget.glue {
        return Err(Error::BudgetExceeded { what: "glue discriminant group", needed: order, budget: budget.glue });
    }
    let n = base.rank();
    let total = COPIES * n;
    let level = disc.metric_group().level();
    let quat = quaternion_matrix(four_squares(level - 1));

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for s in 0..COPIES {
        for i in 0..n {
            let mut r = vec![BigInt::zero(); total];
            for j in 0..n {
                r[s * n + j] = k[(i, j)].clone();
            }
            rows.push(r);
        }
    }
    let t = disc.invariant_factors().len();
    let mut generators = Vec::new();
    for (gi, w) in disc.generator_reps().iter().enumerate() {
        for j in 0..4 {
            let mut r = vec![BigInt::zero(); total];
            r[j * n..(j + 1) * n].clone_from_slice(w);
            let mut blocks = vec![vec![0u64; t]; COPIES];
            blocks[j][gi] = 1;
            for (i, qrow) in quat.iter().enumerate() {
                let f = BigInt::from(qrow[j]);
                for c in 0..n {
                    r[(4 + i) * n + c] = &f * &w[c];
                }
                let fac = disc.invariant_factors()[gi] as i64;
                blocks[4 + i][gi] = qrow[j].rem_euclid(fac) as u64;
            }
            rows.push(r);
            generators.push(blocks);
        }
    }
    let glue = GlueGroup { generators, order: BigInt::from(order).pow(4) };
    if !glue.is_totally_isotropic(&disc) {
        return Err(Error::Verification("glue group is not isotropic".into()));
    }
    let gens = IntegerMatrix::try_from_rows(rows)?;
    let h = hermite_normal_form(&gens);
    let idx: Vec<usize> = (0..total).collect();
    let wb = h.submatrix(&idx, &idx);

    let e = BigInt::from(disc.invariant_factors().last().copied().unwrap_or(1));
    let (num, den) = rational_inverse(&k.to_rational())?.common_denominator();
    debug_assert!(e.is_multiple_of(&den));
    let kinv_e = num.scale(&(&e / den));
    let mut kinv8 = IntegerMatrix::zeros(0, 0);
    let mut k8 = IntegerMatrix::zeros(0, 0);
    for _ in 0..COPIES {
        kinv8 = kinv8.direct_sum(&kinv_e);
        k8 = k8.direct_sum(k);
    }
    let numerators = wb.mul(&kinv8)?;
    let scaled = numerators.mul(&wb.transpose())?;
    let mut gram = IntegerMatrix::zeros(total, total);
    for i in 0..total {
        for j in 0..total {
            let (q, r) = scaled[(i, j)].div_rem(&e);
            if !r.is_zero() {
                return Err(Error::Verification("glued Gram matrix is not integral".into()));
            }
            gram[(i, j)] = q;
        }
    }
    let lattice = Lattice::with_ambient_unchecked(gram, AmbientBasis { numerators, denominator: e, gram: k8 });
    if !lattice.is_even() || !lattice.is_unimodular() {
        return Err(Error::Verification("glued lattice is not even unimodular".into()));
    }

    let mut target = IntegerMatrix::zeros(n, total);
    for i in 0..n {
        for j in 0..n {
            target[(i, j)] = k[(i, j)].clone();
        }
    }
    let coords = solve_upper_integral(&wb, &target).ok_or(Error::NotContained)?;
    let copy = Sublattice { coords };
    if !copy.is_primitive() || copy.gram_in(&lattice)? != *k {
        return Err(Error::Verification("first summand is not embedded primitively".into()));
    }
    Ok(GluedLattice { lattice, copy, glue })
}

/// Integer `X` with `X U = Y` for upper-triangular `U` with nonzero diagonal.
fn solve_upper_integral(u: &IntegerMatrix, y: &IntegerMatrix) -> Option<IntegerMatrix> {
    let n = u.rows();
    let mut x = IntegerMatrix::zeros(y.rows(), n);
    for r in 0..y.rows() {
        for j in 0..n {
            let mut acc = y[(r, j)].clone();
            for i in 0..j {
                if !x[(r, i)].is_zero() && !u[(i, j)].is_zero() {
                    acc -= &x[(r, i)] * &u[(i, j)];
                }
            }
            let (q, rem) = acc.div_rem(&u[(j, j)]);
            if !rem.is_zero() {
                return None;
            }
            x[(r, j)] = q;
        }
    }
    Some(x)
}

/// `{x in ambient : x . sub = 0}`, saturated; inherits the ambient basis.
pub fn orthogonal_complement(ambient: &Lattice, sub: &Sublattice) -> Result<Lattice> {
    if sub.coords.cols() != ambient.rank() {
        return Err(Error::NotContained);
    }
    let g = ambient.gram();
    let pairing = g.mul(&sub.coords.transpose())?;
    let y = left_kernel(&pairing);
    let gram = y.mul(g)?.mul(&y.transpose())?;
    if y.rows() == 0 {
        return Lattice::new(gram);
    }
    match ambient.ambient() {
        Some(amb) => {
            let basis = AmbientBasis {
                numerators: y.mul(&amb.numerators)?,
                denominator: amb.denominator.clone(),
                gram: amb.gram.clone(),
            };
            Ok(Lattice::with_ambient_unchecked(gram, basis))
        }
        None => Lattice::new(gram),
    }
}

/// `L^perp` inside the self-dual gluing of `L`: a lattice with the conjugate form.
pub fn conjugate_lattice(base: &Lattice, budget: &Budget) -> Result<Lattice> {
    let glued = glue_selfdual_8(base, budget)?;
    let comp = orthogonal_complement(&glued.lattice, &glued.copy)?;
    if comp.rank() != 7 * base.rank() || !comp.is_even() || comp.determinant().abs() != base.determinant().abs() {
        return Err(Error::Verification("complement fails its rank/even/determinant contract".into()));
    }
    Ok(comp)
}


//! Smith and Hermite normal forms over Z.
//!
//! Pivots are always the entry of smallest absolute value, ties going to the
//! lowest row and then the lowest column, so outputs are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal, its
/// nonnegative diagonal forming a divisibility chain. `u_inv` is the exact
/// inverse of `u`; its columns are the cokernel generators.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub s: IntegerMatrix,
    pub u_inv: IntegerMatrix,
}

impl SnfResult {
    /// Diagonal of `s` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Invariant factors different from one (zeros included, they signal a
    /// free part of the cokernel).
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_one()).collect()
    }
}

struct Tracker {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

fn smallest_nonzero<'a>(it: impl Iterator<Item = ((usize, usize), &'a BigInt)>) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (pos, x) in it {
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().is_none_or(|(_, b)| ax < *b) {
            best = Some((pos, ax));
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut t = Tracker {
        a: m.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
    };
    for k in 0..rows.min(cols) {
        let region = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = smallest_nonzero(region.map(|p| (p, &t.a[p]))) else {
            break;
        };
        t.swap_rows(k, pi);
        t.swap_cols(k, pj);
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if t.a[(i, k)].is_zero() {
                    continue;
                }
                let q = t.a[(i, k)].div_floor(&t.a[(k, k)]);
                t.add_row(i, k, &-q);
                if !t.a[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if t.a[(k, j)].is_zero() {
                    continue;
                }
                let q = t.a[(k, j)].div_floor(&t.a[(k, k)]);
                t.add_col(j, k, &-q);
                if !t.a[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let cross = (k..rows).map(|i| (i, k)).chain((k + 1..cols).map(|j| (k, j)));
                let (pi, pj) = smallest_nonzero(cross.map(|p| (p, &t.a[p]))).expect("pivot row/col nonzero");
                t.swap_rows(k, pi);
                t.swap_cols(k, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder.
            let piv = t.a[(k, k)].clone();
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !t.a[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => t.add_row(k, i, &BigInt::one()),
                None => break,
            }
        }
        if t.a[(k, k)].is_negative() {
            t.negate_row(k);
        }
    }
    SnfResult { u: t.u, v: t.v, s: t.a, u_inv: t.u_inv }
}

/// Row-style Hermite normal form together with the unimodular transform.
#[derive(Clone, Debug)]
pub struct HnfResult {
    /// Echelon form; nonzero rows first, pivots positive, entries above a
    /// pivot reduced into `[0, pivot)`.
    pub h: IntegerMatrix,
    /// `transform * input == h`.
    pub transform: IntegerMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
    /// Column of each pivot, one per nonzero row.
    pub pivots: Vec<usize>,
}

pub fn hermite_with_transform(m: &IntegerMatrix) -> HnfResult {
    hnf_impl(m, true)
}

/// Row-style HNF (the transform is not tracked).
pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    hnf_impl(m, false).h
}

/// Like [`hermite_normal_form`] but returns only the nonzero rows.
pub fn row_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let r = hnf_impl(m, false);
    let idx: Vec<usize> = (0..r.rank).collect();
    let cols: Vec<usize> = (0..m.cols()).collect();
    r.h.submatrix(&idx, &cols)
}

fn hnf_impl(m: &IntegerMatrix, track: bool) -> HnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut t = if track { IntegerMatrix::identity(rows) } else { IntegerMatrix::zeros(0, 0) };
    let mut p = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if p == rows {
            break;
        }
        let mut found = false;
        while let Some((pi, _)) = smallest_nonzero((p..rows).map(|i| ((i, c), &a[(i, c)]))) {
            found = true;
            a.swap_rows(p, pi);
            if track {
                t.swap_rows(p, pi);
            }
            let mut clean = true;
            for i in p + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -a[(i, c)].div_floor(&a[(p, c)]);
                a.add_row_multiple(i, p, &q);
                if track {
                    t.add_row_multiple(i, p, &q);
                }
                if !a[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[(p, c)].is_negative() {
            a.negate_row(p);
            if track {
                t.negate_row(p);
            }
        }
        for i in 0..p {
            let q = -a[(i, c)].div_floor(&a[(p, c)]);
            a.add_row_multiple(i, p, &q);
            if track {
                t.add_row_multiple(i, p, &q);
            }
        }
        pivots.push(c);
        p += 1;
    }
    HnfResult { h: a, transform: t, rank: p, pivots }
}

/// Integer left kernel: rows `y` with `y * m == 0`, returned as a saturated
/// basis (rows of a unimodular transform).
pub fn left_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let r = hermite_with_transform(m);
    let idx: Vec<usize> = (r.rank..m.rows()).collect();
    let cols: Vec<usize> = (0..m.rows()).collect();
    r.transform.submatrix(&idx, &cols)
}

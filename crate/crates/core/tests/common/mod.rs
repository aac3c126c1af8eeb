//! Matrices transcribed from the literature, shared by the regression tests
//! and the acceptance runner.
#![allow(dead_code)]

pub mod props;

use anyon_kit::exact_linalg::{rational_inverse, RationalMatrix};
use anyon_kit::lattice_realization::{cartan_a, cartan_d, cartan_e};
use anyon_kit::metric_groups::{Family, MetricGroup, PrimeFamilySpec};
use anyon_kit::IntegerMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Tridiagonal `W` with diagonal `c/m, a1, chain...` and ones beside it.
pub fn tridiagonal_w(c: i64, m: i64, a1: BigRational, chain: &[i64]) -> RationalMatrix {
    let n = 2 + chain.len();
    RationalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            match i {
                0 => q(c, m),
                1 => a1.clone(),
                k => q(chain[k - 2], 1),
            }
        } else if i.abs_diff(j) == 1 {
            q(1, 1)
        } else {
            q(0, 1)
        }
    })
}

pub fn spec(f: Family, p: u64, r: u32) -> PrimeFamilySpec {
    PrimeFamilySpec::new(f, p, r).unwrap()
}

pub fn group(f: Family, p: u64, r: u32) -> MetricGroup {
    MetricGroup::build_prime(&spec(f, p, r)).unwrap()
}

/// `W^{-1}` when integral.
pub fn invert(w: &RationalMatrix) -> Option<IntegerMatrix> {
    rational_inverse(w).ok()?.to_integer()
}

/// One printed Wall matrix at concrete parameters.
pub struct WallCase {
    pub branch: &'static str,
    pub spec: PrimeFamilySpec,
    pub printed: RationalMatrix,
    /// The matrix that actually realizes the model when the printed one does not.
    pub corrected: Option<RationalMatrix>,
    /// Whether the (corrected) matrix is what `k_for_family` returns.
    pub matches_wall: bool,
}

pub fn wall_cases() -> Vec<WallCase> {
    let mut out = Vec::new();
    let mut push = |branch, s: PrimeFamilySpec, printed, corrected, matches_wall| {
        out.push(WallCase { branch, spec: s, printed, corrected, matches_wall })
    };
    let pw = |p: u64, r: u32| (p as i64).pow(r);
    for (p, r) in [(3, 2), (5, 2), (7, 2)] {
        let m = pw(p, r);
        push("A, r even", spec(Family::A, p, r), tridiagonal_w(4, m, q(m - 1, 4), &[-4, -2]), None, true);
    }
    for (p, r) in [(17, 1), (41, 1)] {
        let m = pw(p, r);
        push("A, r odd, p = 1 mod 8", spec(Family::A, p, r), tridiagonal_w(4, m, q(m - 1, 4), &[-4, -2]), None, true);
    }
    for (p, r) in [(5, 1), (13, 1), (5, 3)] {
        let m = pw(p, r);
        push("A, r odd, p = 5 mod 8", spec(Family::A, p, r), tridiagonal_w(4, m, q(m + 3, 4), &[2, 2]), None, true);
    }
    for (p, r) in [(7, 1), (23, 1), (7, 3)] {
        let m = pw(p, r);
        push("A, r odd, p = 7 mod 8", spec(Family::A, p, r), tridiagonal_w(4, m, q(m + 1, 4), &[]), None, true);
    }
    for (p, r) in [(11, 1), (19, 1), (3, 3)] {
        let m = pw(p, r);
        // Valid, but the closest-even rule picks a different second remainder.
        push("A, r odd, p = 3 mod 8", spec(Family::A, p, r), tridiagonal_w(4, m, q(m - 3, 4), &[-2, -2]), None, false);
    }
    for (branch, cases) in [
        ("B, r even, p = 5 mod 8", [(5, 2), (13, 2)]),
        ("B, r even, p = 3 mod 8", [(3, 2), (11, 2)]),
        ("B, r odd, p = 5 mod 8", [(5, 1), (13, 1)]),
    ] {
        for (p, r) in cases {
            let m = pw(p, r);
            push(branch, spec(Family::B, p, r), tridiagonal_w(2, m, q(m - 1, 2), &[-2, -2]), None, true);
        }
    }
    for (p, r) in [(7, 2), (23, 2)] {
        let m = pw(p, r);
        let c = p as i64 - 1;
        push(
            "B, r even, p = 7 mod 8",
            spec(Family::B, p, r),
            tridiagonal_w(c, m, q(m - 1, c), &[-2, -2]),
            Some(tridiagonal_w(c, m, q(m - 1, c), &[-c, -2])),
            true,
        );
    }
    for (p, r) in [(7, 1), (23, 1), (7, 3)] {
        let m = pw(p, r);
        let c = p as i64 - 1;
        let chain = vec![2; p as usize - 3];
        push("B, r odd, p = 7 mod 8", spec(Family::B, p, r), tridiagonal_w(c, m, q(m - 1, c) + q(1, 1), &chain), None, true);
    }
    for (p, r) in [(3, 1), (11, 1), (3, 3)] {
        let m = pw(p, r);
        push("B, r odd, p = 3 mod 8", spec(Family::B, p, r), tridiagonal_w(2, m, q(m + 1, 2), &[]), None, true);
    }
    for r in 1..=5 {
        let m = 1 << r;
        push("A_{2^r}", spec(Family::A, 2, r), tridiagonal_w(1, m, q(m, 1), &[-2]), None, true);
    }
    for r in [2, 4, 6] {
        let m = 1 << r;
        push("D, r even", spec(Family::D, 2, r), tridiagonal_w(3, m, q(m + 2, 3), &[2]), None, true);
    }
    for r in [3, 5, 7] {
        let m = 1 << r;
        push("D, r odd", spec(Family::D, 2, r), tridiagonal_w(3, m, q(m - 2, 3), &[-2, -2, -2]), None, true);
    }
    for r in [5, 9] {
        let m = 1 << r;
        push("C, r = 1 mod 4", spec(Family::C, 2, r), tridiagonal_w(5, m, q(m - 2, 5), &[-2]), None, true);
    }
    for r in [3, 7] {
        let m = 1 << r;
        push(
            "C, r = 3 mod 4",
            spec(Family::C, 2, r),
            tridiagonal_w(5, m, q(m + 2, 3), &[2, -2, -2]),
            Some(tridiagonal_w(5, m, q(m + 2, 5), &[2, -2, -2])),
            true,
        );
    }
    for r in [6, 10] {
        let m = 1 << r;
        push(
            "C, r = 2 mod 4",
            spec(Family::C, 2, r),
            tridiagonal_w(5, m, q(m - 4, 3), &[-2; 5]),
            Some(tridiagonal_w(5, m, q(m - 4, 5), &[-2; 5])),
            true,
        );
    }
    for r in [4, 8] {
        let m = 1 << r;
        push(
            "C, r = 0 mod 4",
            spec(Family::C, 2, r),
            tridiagonal_w(5, m, q(m + 4, 3), &[2, 2, 2]),
            Some(tridiagonal_w(5, m, q(m + 4, 5), &[2, 2, 2])),
            true,
        );
    }
    for r in [4, 7] {
        let m = 1 << r;
        push(
            "B_{2^r}, r = 1 mod 3",
            spec(Family::B, 2, r),
            tridiagonal_w(7, m, q(m + 6, 3), &[2; 5]),
            Some(tridiagonal_w(7, m, q(m - 2, 7), &[-4, -2, -2])),
            true,
        );
    }
    for r in [5, 8] {
        let m = 1 << r;
        push(
            "B_{2^r}, r = 2 mod 3",
            spec(Family::B, 2, r),
            tridiagonal_w(7, m, q(m - 4, 3), &[-2, -4, -2]),
            Some(tridiagonal_w(7, m, q(m - 4, 7), &[-2, -4, -2])),
            true,
        );
    }
    for r in [3, 6] {
        let m = 1 << r;
        push(
            "B_{2^r}, r = 0 mod 3",
            spec(Family::B, 2, r),
            tridiagonal_w(7, m, q(m + 6, 3), &[2; 5]),
            Some(tridiagonal_w(7, m, q(m + 6, 7), &[2; 5])),
            true,
        );
    }
    out
}

/// The printed F-family closed form `K_{F_{2^r}}` for odd or even `r`.
pub fn f_closed_form(r: u32) -> IntegerMatrix {
    let t = 1i64 << r;
    let rows = if r % 2 == 1 {
        vec![
            vec![2 * t * (1 + t) / 3, -t * (1 + 4 * t) / 3, 2 * t, -t],
            vec![-t * (1 + 4 * t) / 3, 2 * t * (1 + 4 * t) / 3, -4 * t, 2 * t],
            vec![2 * t, -4 * t, 6, -3],
            vec![-t, 2 * t, -3, 2],
        ]
    } else {
        vec![
            vec![2 * t * (t - 1) / 3, t * (4 * t - 1) / 3, -2 * t, -t],
            vec![t * (4 * t - 1) / 3, -2 * t * (4 * t - 1) / 3, 4 * t, 2 * t],
            vec![-2 * t, 4 * t, -6, -3],
            vec![-t, 2 * t, -3, -2],
        ]
    };
    IntegerMatrix::from_rows(&rows)
}

/// The F-family `W` matrix, whose inverse is the K-matrix.
pub fn f_w(r: u32) -> RationalMatrix {
    let t = 1i64 << r;
    let sign = if r.is_multiple_of(2) { 1 } else { -1 };
    let a = (t - sign) / 3;
    let b = -sign;
    let rows = [
        [q(2, t), q(1, t), q(0, 1), q(0, 1)],
        [q(1, t), q(2, t), q(1, 1), q(0, 1)],
        [q(0, 1), q(1, 1), q(2 * a, 1), q(1, 1)],
        [q(0, 1), q(0, 1), q(1, 1), q(2 * b, 1)],
    ];
    RationalMatrix::from_fn(4, 4, |i, j| rows[i][j].clone())
}

/// The printed F_4 example (same as the even closed form at r = 2).
pub fn f4_printed() -> IntegerMatrix {
    IntegerMatrix::from_rows(&[vec![8, 20, -8, -4], vec![20, -40, 16, 8], vec![-8, 16, -6, -3], vec![-4, 8, -3, -2]])
}

/// The printed c = 4 realization of `Z_5`.
pub fn z5_c4() -> IntegerMatrix {
    IntegerMatrix::from_rows(&[vec![20, -15, 10, -5], vec![-15, 12, -8, 4], vec![10, -8, 6, -3], vec![-5, 4, -3, 2]])
}

/// The printed c = 8 realization of `Z_5`, as printed (not symmetric).
pub fn z5_c8_printed() -> IntegerMatrix {
    IntegerMatrix::from_rows(&[
        vec![2, -1, 0, 0, 0, 0, 0, 0],
        vec![-1, 2, 1, 0, 0, 0, 0, 0],
        vec![0, -1, 2, -1, 0, 0, 0, 0],
        vec![0, 0, -1, 2, -1, 0, -1, 0],
        vec![0, 0, 0, -1, 2, -1, 0, 0],
        vec![0, 0, 0, 0, -1, 2, 0, -1],
        vec![0, 0, 0, -1, 0, 0, 2, 1],
        vec![0, 0, 0, 0, 0, -1, 1, 4],
    ])
}

/// The printed 16 x 16 realization of `E_4`.
pub fn e4_printed() -> IntegerMatrix {
    let mut g = vec![vec![0i64; 16]; 16];
    g[0][0] = 4;
    g[1][1] = 4;
    g[0][1] = 1;
    g[1][0] = 1;
    for off in [2, 9] {
        g[0][off] = -1;
        g[off][0] = -1;
        for i in 0..7 {
            g[off + i][off + i] = 2;
        }
        // D7: first two nodes both attached to the third, then a chain.
        let edges = [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)];
        for (a, b) in edges {
            g[off + a][off + b] = -1;
            g[off + b][off + a] = -1;
        }
    }
    IntegerMatrix::from_rows(&g)
}

/// `(label, gram, target)` for the ADE table.
pub fn ade_cases() -> Vec<(&'static str, IntegerMatrix, MetricGroup)> {
    vec![
        ("A2", cartan_a(2).into_gram(), group(Family::B, 3, 1)),
        ("D7", cartan_d(7).unwrap().into_gram(), group(Family::B, 2, 2)),
        ("E6", cartan_e(6).unwrap().into_gram(), group(Family::A, 3, 1)),
        ("E7", cartan_e(7).unwrap().into_gram(), group(Family::B, 2, 1)),
        ("E8", cartan_e(8).unwrap().into_gram(), MetricGroup::trivial()),
    ]
}

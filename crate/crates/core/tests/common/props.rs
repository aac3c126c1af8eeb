//! Randomized invariant checks, runnable from `#[test]`s and from the
//! acceptance runner with explicit case counts.

use anyon_kit::exact_linalg::{determinant, inertia, rational_inverse, smith_normal_form};
use anyon_kit::lattice_realization::{coset_minima, discriminant_form, glue_selfdual_8, orthogonal_complement, Lattice};
use anyon_kit::metric_groups::{central_charge_closed, central_charge_gauss};
use anyon_kit::{Budget, Family, IntegerMatrix, MetricGroup, PrimeFamilySpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Symmetric `n x n` matrix with entries in `[-bound, bound]`; even diagonal if `even`.
pub fn symmetric(n: usize, bound: i64, even: bool) -> impl Strategy<Value = IntegerMatrix> {
    proptest::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |v| {
        let mut it = v.into_iter();
        let mut g = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut x = it.next().unwrap();
                if i == j && even {
                    x *= 2;
                }
                g[(i, j)] = BigInt::from(x);
                g[(j, i)] = BigInt::from(x);
            }
        }
        g
    })
}

fn square(n: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    proptest::collection::vec(-bound..=bound, n * n)
        .prop_map(move |v| IntegerMatrix::from_rows(&v.chunks(n).map(<[i64]>::to_vec).collect::<Vec<_>>()))
}

/// Unimodular matrix from a word of elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntegerMatrix> {
    proptest::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut p = IntegerMatrix::identity(n);
        for (i, j, k, swap) in ops {
            if swap {
                for c in 0..n {
                    let t = p[(i, c)].clone();
                    p[(i, c)] = p[(j, c)].clone();
                    p[(j, c)] = t;
                }
            } else if i != j {
                for c in 0..n {
                    let t = &p[(j, c)] * k;
                    p[(i, c)] += t;
                }
            }
        }
        p
    })
}

/// Every prime spec with group order at most `max_order`.
pub fn prime_specs(max_order: u64) -> Vec<PrimeFamilySpec> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
        for r in 1..=12 {
            if p.pow(r) > max_order {
                break;
            }
            for f in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F] {
                if let Some(s) = PrimeFamilySpec::new(f, p, r).ok().filter(|s| s.order() <= max_order) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn spec_strategy(max_order: u64) -> impl Strategy<Value = PrimeFamilySpec> {
    proptest::sample::select(prime_specs(max_order))
}

fn nonsingular_even(n: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    symmetric(n, bound, true).prop_filter("singular", |g| !determinant(g).unwrap().is_zero())
}

/// `q2(w) = q2(w + K z)` and the coset is unchanged, for random even `K`.
pub fn q2_well_defined(cases: u32) -> Result<(), String> {
    let strat = (1usize..=4).prop_flat_map(|n| {
        (nonsingular_even(n, 12), proptest::collection::vec(-50i64..=50, n), proptest::collection::vec(-5i64..=5, n), any::<u64>())
    });
    finish(runner(cases).run(&strat, |(k, w0, z, pick)| {
        let d = discriminant_form(&k).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let n = k.rows();
        let w: Vec<BigInt> = w0.iter().map(|&x| BigInt::from(x)).collect();
        let kz = k.mul_vec(&z.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let shifted: Vec<BigInt> = (0..n).map(|i| &w[i] + &kz[i]).collect();
        prop_assert_eq!(d.q2_of(&w), d.q2_of(&shifted));
        prop_assert_eq!(d.coset_of(&w), d.coset_of(&shifted));
        // The canonical representative of a random coset has the tabulated value.
        let g = d.metric_group();
        let x = g.element(pick % g.order());
        let rep = d.representative(&x);
        prop_assert_eq!(d.coset_of(&rep), x.clone());
        prop_assert_eq!(d.q2_of(&rep), d.q2_of_coset(&x));
        // q(x) = q2/2 mod 1.
        let half = d.q2_of(&rep) / BigRational::from_integer(BigInt::from(2));
        prop_assert!((half - g.q(&x)).is_integer());
        Ok(())
    }))
}

/// SNF, inverse and inertia on random matrices with entries up to `10^3`.
pub fn linalg_exact(cases: u32) -> Result<(), String> {
    let strat = (1usize..=5).prop_flat_map(|n| (square(n, 1000), symmetric(n, 1000, false), unimodular(n)));
    finish(runner(cases).run(&strat, |(m, s, p)| {
        let n = m.rows();
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).unwrap().mul(&snf.v).unwrap(), snf.s.clone());
        prop_assert_eq!(snf.u.mul(&snf.u_inv).unwrap(), IntegerMatrix::identity(n));
        prop_assert!(determinant(&snf.u).unwrap().abs().is_one() && determinant(&snf.v).unwrap().abs().is_one());
        let diag = snf.diagonal();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert!(snf.s[(i, j)].is_zero());
                }
            }
            prop_assert!(!diag[i].is_negative());
            if i + 1 < n && !diag[i].is_zero() {
                prop_assert!((&diag[i + 1] % &diag[i]).is_zero());
            }
        }
        let det = determinant(&m).unwrap();
        prop_assert_eq!(diag.iter().product::<BigInt>(), det.abs());
        if !det.is_zero() {
            let inv = rational_inverse(&m.to_rational()).unwrap();
            prop_assert_eq!(m.to_rational().mul(&inv).unwrap(), anyon_kit::RationalMatrix::identity(n));
        } else {
            prop_assert!(rational_inverse(&m.to_rational()).is_err());
        }
        // Sylvester: inertia is a congruence invariant, and matches det and rank.
        let i1 = inertia(&s).unwrap();
        let i2 = inertia(&p.transpose().mul(&s).unwrap().mul(&p).unwrap()).unwrap();
        prop_assert_eq!(i1, i2);
        prop_assert_eq!(i1.positive + i1.negative + i1.zero, n);
        let rank = smith_normal_form(&s).diagonal().iter().filter(|x| !x.is_zero()).count();
        prop_assert_eq!(i1.zero, n - rank);
        let ds = determinant(&s).unwrap();
        if !ds.is_zero() {
            prop_assert_eq!(ds.is_negative(), i1.negative % 2 == 1);
        }
        Ok(())
    }))
}

/// `c(A + B) = c(A) + c(B)`, `c(conj A) = -c(A)` and closed form = Gauss sum.
pub fn gauss_additive(cases: u32) -> Result<(), String> {
    let strat = (spec_strategy(512), spec_strategy(512));
    let budget = Budget::default().gauss;
    finish(runner(cases).run(&strat, |(s1, s2)| {
        let g1 = MetricGroup::build_prime(&s1).unwrap();
        let g2 = MetricGroup::build_prime(&s2).unwrap();
        let c1 = central_charge_gauss(&g1, budget).unwrap();
        let c2 = central_charge_gauss(&g2, budget).unwrap();
        prop_assert_eq!(c1, central_charge_closed(&s1).unwrap());
        let c12 = central_charge_gauss(&g1.direct_sum(&g2), budget).unwrap();
        prop_assert_eq!(c12, (c1 + c2) % 8);
        let cc = central_charge_gauss(&g1.conjugate(), budget).unwrap();
        prop_assert_eq!(cc, (8 - c1) % 8);
        prop_assert_eq!(central_charge_closed(&s1.conjugate()).unwrap(), cc);
        Ok(())
    }))
}

fn small_positive_even() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=3).prop_flat_map(|n| symmetric(n, 3, true)).prop_filter("not positive definite", |g| {
        inertia(g).unwrap().is_positive_definite() && determinant(g).unwrap() <= BigInt::from(24)
    })
}

/// Gluing eight copies is even unimodular, and the complement has the
/// conjugate discriminant form with rank `7 n`.
pub fn glue_and_complement(cases: u32) -> Result<(), String> {
    let budget = Budget::default();
    finish(runner(cases).run(&small_positive_even(), |k| {
        let base = Lattice::new(k.clone()).unwrap();
        let glued = glue_selfdual_8(&base, &budget).unwrap();
        prop_assert!(glued.lattice.is_even() && glued.lattice.is_unimodular());
        prop_assert!(glued.lattice.is_positive_definite());
        prop_assert_eq!(glued.copy.gram_in(&glued.lattice).unwrap(), k.clone());
        let comp = orthogonal_complement(&glued.lattice, &glued.copy).unwrap();
        prop_assert_eq!(comp.rank(), 7 * k.rows());
        prop_assert!(comp.is_even() && comp.is_positive_definite());
        let d = discriminant_form(&k).unwrap();
        let dc = discriminant_form(comp.gram()).unwrap();
        let iso = anyon_kit::metric_groups::is_isomorphic(dc.metric_group(), &d.metric_group().conjugate(), budget.group).unwrap();
        prop_assert!(iso.is_some());
        Ok(())
    }))
}

/// Each coset minimum is `q2/2 mod 1`, no smaller than zero, and attained.
pub fn coset_minima_consistent(cases: u32) -> Result<(), String> {
    let budget = Budget::default();
    let strat = (1usize..=4).prop_flat_map(|n| symmetric(n, 6, true)).prop_filter("not positive definite", |g| {
        inertia(g).unwrap().is_positive_definite() && determinant(g).unwrap() <= BigInt::from(200)
    });
    finish(runner(cases).run(&strat, |k| {
        let d = discriminant_form(&k).unwrap();
        let weights = coset_minima(&k, &budget).unwrap();
        prop_assert_eq!(weights.len() as u64, d.order());
        let two = BigRational::from_integer(BigInt::from(2));
        let inv = rational_inverse(&k.to_rational()).unwrap();
        for cw in &weights {
            prop_assert!((&cw.h - d.q2_of_coset(&cw.coset) / &two).is_integer());
            prop_assert_eq!(d.coset_of(&cw.w), cw.coset.clone());
            // Norm of the minimizer K^{-1} w is 2h.
            let n = k.rows();
            let mut norm = BigRational::zero();
            for i in 0..n {
                for j in 0..n {
                    norm += &inv[(i, j)] * BigRational::from_integer(&cw.w[i] * &cw.w[j]);
                }
            }
            prop_assert_eq!(norm, &cw.h * &two);
            if cw.coset.iter().all(|&c| c == 0) {
                prop_assert!(cw.h.is_zero());
            } else {
                prop_assert!(cw.h.is_positive());
            }
            // No shift by a standard basis dual vector lowers the norm.
            for i in 0..n {
                for s in [-1i64, 1] {
                    let mut w2 = cw.w.clone();
                    for r in 0..n {
                        w2[r] += &k[(r, i)] * s;
                    }
                    let mut n2 = BigRational::zero();
                    for a in 0..n {
                        for b in 0..n {
                            n2 += &inv[(a, b)] * BigRational::from_integer(&w2[a] * &w2[b]);
                        }
                    }
                    prop_assert!(n2 >= &cw.h * &two);
                }
            }
        }
        Ok(())
    }))
}

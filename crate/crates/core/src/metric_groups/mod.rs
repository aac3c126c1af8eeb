//! Metric groups `(A, q)`, the prime families, central charges and isometry
//! testing.

mod family;
mod gauss;
mod group;
mod iso;

pub use family::{central_charge_closed, Family, PrimeFamilySpec};
pub use gauss::central_charge_gauss;
pub use group::MetricGroup;
pub use iso::{is_isomorphic, Isometry};
pub(crate) use iso::search_isometries;

use crate::error::Result;

/// `FPdim` of the center of the gauged category: `|Aut|^4 |A|^2`.
pub fn gauged_center_fpdim(spec: &PrimeFamilySpec) -> Result<u128> {
    let (aut, _) = crate::symmetry::aut_order_closed(spec)?;
    let a = spec.order() as u128;
    (aut as u128)
        .checked_pow(4)
        .and_then(|g| g.checked_mul(a * a))
        .ok_or_else(|| crate::Error::InvalidArgument(format!("FPdim of {spec} overflows")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn spec(f: Family, p: u64, r: u32) -> PrimeFamilySpec {
        PrimeFamilySpec::new(f, p, r).unwrap()
    }

    fn q_multiset(g: &MetricGroup) -> Vec<BigRational> {
        let mut v: Vec<_> = g.elements().map(|x| g.q(&x)).collect();
        v.sort();
        v
    }

    fn rats(v: &[(i64, i64)]) -> Vec<BigRational> {
        let mut v: Vec<_> = v.iter().map(|&(a, b)| crate::exact_linalg::rat(a, b)).collect();
        v.sort();
        v
    }

    #[test]
    fn build_prime_examples() {
        let b3 = MetricGroup::build_prime(&spec(Family::B, 3, 1)).unwrap();
        assert_eq!(b3.factors(), &[3]);
        assert_eq!(b3.q(&[1]), crate::exact_linalg::rat(1, 3));
        let e2 = MetricGroup::build_prime(&spec(Family::E, 2, 1)).unwrap();
        assert_eq!(q_multiset(&e2), rats(&[(0, 1), (0, 1), (0, 1), (1, 2)]));
        let a2 = MetricGroup::build_prime(&spec(Family::A, 2, 1)).unwrap();
        assert_eq!(a2.q(&[1]), crate::exact_linalg::rat(1, 4));
    }

    #[test]
    fn invalid_specs() {
        assert!(PrimeFamilySpec::new(Family::C, 2, 1).is_err());
        assert!(PrimeFamilySpec::new(Family::E, 3, 1).is_err());
        assert!(PrimeFamilySpec::new(Family::A, 4, 1).is_err());
        assert!(PrimeFamilySpec::with_param(Family::A, 3, 1, 1).is_err());
        assert!(PrimeFamilySpec::with_param(Family::A, 3, 1, 2).is_ok());
    }

    #[test]
    fn direct_sum_and_conjugate() {
        let semion = MetricGroup::build_prime(&spec(Family::A, 2, 1)).unwrap();
        let t = MetricGroup::trivial();
        assert_eq!(semion.direct_sum(&t), semion);
        let ss = semion.direct_sum(&semion);
        assert_eq!(ss.factors(), &[2, 2]);
        assert_eq!(q_multiset(&ss), rats(&[(0, 1), (1, 4), (1, 4), (1, 2)]));
        let anti = semion.conjugate();
        assert_eq!(anti.q(&[1]), crate::exact_linalg::rat(3, 4));
        assert_eq!(anti.conjugate(), semion);
        let e2 = MetricGroup::build_prime(&spec(Family::E, 2, 1)).unwrap();
        assert!(is_isomorphic(&e2.conjugate(), &e2, 4096).unwrap().is_some());
        let both = e2.direct_sum(&semion);
        assert_eq!(central_charge_gauss(&both, 1 << 20).unwrap(), 1);
    }

    #[test]
    fn nondegeneracy() {
        let semion = MetricGroup::build_prime(&spec(Family::A, 2, 1)).unwrap();
        assert!(semion.is_nondegenerate());
        let zero = MetricGroup::from_generators(&[2], 2, &[0], &[vec![0]]).unwrap();
        assert!(!zero.is_nondegenerate());
        assert!(MetricGroup::build_prime(&spec(Family::F, 2, 1)).unwrap().is_nondegenerate());
    }

    #[test]
    fn central_charges() {
        assert_eq!(central_charge_closed(&spec(Family::B, 3, 1)).unwrap(), 2);
        assert_eq!(central_charge_closed(&spec(Family::F, 2, 1)).unwrap(), 4);
        assert_eq!(central_charge_closed(&spec(Family::A, 7, 2)).unwrap(), 0);
        assert_eq!(central_charge_gauss(&MetricGroup::trivial(), 10).unwrap(), 0);
        let b3 = MetricGroup::build_prime(&spec(Family::B, 3, 1)).unwrap();
        assert_eq!(central_charge_gauss(&b3, 10).unwrap(), 2);
        let f2 = MetricGroup::build_prime(&spec(Family::F, 2, 1)).unwrap();
        assert_eq!(central_charge_gauss(&f2, 10).unwrap(), 4);
        assert!(central_charge_gauss(&f2, 3).is_err());
    }

    #[test]
    fn degenerate_form_has_no_phase() {
        let zero = MetricGroup::from_generators(&[2], 2, &[0], &[vec![0]]).unwrap();
        assert!(central_charge_gauss(&zero, 10).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let semion = MetricGroup::build_prime(&spec(Family::A, 2, 1)).unwrap();
        let iso = is_isomorphic(&semion, &semion, 4096).unwrap().unwrap();
        assert_eq!(iso.images, vec![vec![1]]);
        assert!(is_isomorphic(&semion, &semion.conjugate(), 4096).unwrap().is_none());
        let e2 = MetricGroup::build_prime(&spec(Family::E, 2, 1)).unwrap();
        let f2 = MetricGroup::build_prime(&spec(Family::F, 2, 1)).unwrap();
        assert!(is_isomorphic(&e2, &f2, 4096).unwrap().is_none());
    }

    #[test]
    fn canonical_form_from_non_chain_orders() {
        // Z2 + Z3 with q = 1/4 on the first and 1/3 on the second summand.
        let g = MetricGroup::from_generators(&[2, 3], 12, &[3, 4], &[vec![6, 0], vec![0, 8]]).unwrap();
        assert_eq!(g.factors(), &[6]);
        assert_eq!(g.order(), 6);
        let a2 = MetricGroup::build_prime(&spec(Family::A, 2, 1)).unwrap();
        let b3 = MetricGroup::build_prime(&spec(Family::B, 3, 1)).unwrap();
        assert!(is_isomorphic(&g, &a2.direct_sum(&b3), 4096).unwrap().is_some());
    }

    #[test]
    fn fpdim_examples() {
        assert_eq!(gauged_center_fpdim(&spec(Family::A, 3, 1)).unwrap(), 144);
        assert_eq!(gauged_center_fpdim(&spec(Family::A, 2, 1)).unwrap(), 4);
        assert_eq!(gauged_center_fpdim(&spec(Family::F, 2, 1)).unwrap(), 20736);
        assert_eq!(gauged_center_fpdim(&spec(Family::C, 2, 2)).unwrap(), 1 << 8);
        assert_eq!(gauged_center_fpdim(&spec(Family::D, 2, 3)).unwrap(), 1 << 10);
    }

    #[test]
    fn display() {
        assert_eq!(spec(Family::A, 5, 3).to_string(), "A[5^3]");
        assert_eq!(spec(Family::E, 2, 2).to_string(), "E[4]");
        assert_eq!(spec(Family::B, 3, 1).to_string(), "B[3]");
    }
}

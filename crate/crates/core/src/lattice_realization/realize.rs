use super::ef::build_ef_positive;
use super::families::{k_double_prime, k_e, k_o, rank_one};
use super::glue::conjugate_lattice;
use super::lattice::{cartan_a, Lattice};
use crate::error::{Error, Result};
use crate::metric_groups::{Family, PrimeFamilySpec};
use crate::Budget;

/// Even positive-definite realization of a prime family.
///
/// | family | lattice |
/// |---|---|
/// | `A_{p^r}`, `p = 1 mod 4` | `K''(p^r, p'+1, +1)` |
/// | `A_{p^r}`, `p = 3 mod 4` | `A_{p^r-1}` complement |
/// | `B_{p^r}`, `p = 1 mod 4` | `K''(p^r, p'+1, -1)` |
/// | `B_{p^r}`, `p = 3 mod 4` | `A_{p^r-1}` |
/// | `A_{2^r}` / `B_{2^r}` | `[2^r]` / its complement |
/// | `D_{2^r}` / `C_{2^r}` | `K_e`, `K_o` / their complements |
/// | `E`, `F` | generating-data gluing |
///
/// Complements come from [`conjugate_lattice`] and have rank `7n`.
pub fn positive_definite_realization(spec: &PrimeFamilySpec, budget: &Budget) -> Result<Lattice> {
    spec.validate()?;
    if spec.param.is_some() {
        return Err(Error::InvalidArgument("explicit numerators are only supported by the Wall route".into()));
    }
    let (p, r) = (spec.p, spec.r);
    let pr = spec.modulus();
    let lat = match spec.family {
        Family::A | Family::B if p == 2 => {
            let base = rank_one(1 << r)?;
            if spec.family == Family::A { base } else { conjugate_lattice(&base, budget)? }
        }
        Family::A if p % 4 == 1 => k_double_prime(p, r, 1)?,
        Family::B if p % 4 == 1 => k_double_prime(p, r, -1)?,
        Family::A => {
            if pr > budget.glue {
                return Err(Error::BudgetExceeded { what: "glue discriminant group", needed: pr, budget: budget.glue });
            }
            conjugate_lattice(&cartan_a(pr as usize - 1), budget)?
        }
        Family::B => {
            if pr > budget.group {
                return Err(Error::BudgetExceeded { what: "Cartan rank", needed: pr - 1, budget: budget.group - 1 });
            }
            cartan_a(pr as usize - 1)
        }
        Family::C | Family::D => {
            let base = if r % 2 == 0 { k_e(r)? } else { k_o(r)? };
            if spec.family == Family::D { base } else { conjugate_lattice(&base, budget)? }
        }
        Family::E | Family::F => build_ef_positive(spec.family, r, budget)?,
    };
    Ok(lat)
}

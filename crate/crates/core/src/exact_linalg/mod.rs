//! Exact integer and rational linear algebra plus the number-theoretic
//! helpers the rest of the crate leans on.

mod elimination;
mod matrix;
mod normal_form;
mod number_theory;

pub use elimination::{determinant, inertia, leading_minors, rational_inverse, Inertia};
pub use matrix::{rat, IntegerMatrix, RationalMatrix};
pub use normal_form::{
    hermite_normal_form, hermite_with_transform, left_kernel, row_basis, smith_normal_form, HnfResult, SnfResult,
};
pub use number_theory::{
    gcd, is_prime, jacobi_symbol, lcm, mod_inv, mod_pow, prime_factors, prime_power, sqrt_mod_prime_power,
};

//! Positive-definite lattice realizations.
//!
//! [`discriminant_form`] is the verification oracle: every constructor here
//! and in [`crate::wall_synthesis`] is checked by extracting the
//! discriminant form of its output and searching for an isometry with the
//! intended model ([`verify_realization`]).

mod discriminant;
mod ef;
mod families;
mod glue;
mod lattice;
mod realize;
mod verify;
mod weights;

pub use discriminant::{discriminant_form, DiscriminantData};
pub use ef::{build_ef_positive, dual_norm, ef_gram_e, ef_gram_f, ef_input, find_glue_vector};
pub use families::{auxiliary_prime, k_double_prime, k_e, k_o, rank_one};
pub use glue::{conjugate_lattice, four_squares, glue_selfdual_8, orthogonal_complement, GlueGroup, GluedLattice};
pub use lattice::{cartan_a, cartan_d, cartan_e, AmbientBasis, Lattice, Sublattice};
pub use realize::positive_definite_realization;
pub use verify::{verify_realization, Check, RealizationReport};
pub use weights::{coset_minima, extremality_score, CosetWeight};

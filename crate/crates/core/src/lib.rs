//! Exact construction and verification of abelian anyon models.
//!
//! An abelian anyon model is a finite abelian group `A` with a non-degenerate
//! quadratic form `q: A -> Q/Z` (a *metric group*). This crate builds the
//! prime families, computes central charges and symmetry groups, synthesizes
//! even K-matrices with Wall's continued-fraction algorithm, and constructs
//! positive-definite lattice realizations through self-dual gluing and
//! orthogonal complements. Every construction can be checked independently
//! by extracting the discriminant form of a Gram matrix and testing it for
//! isometry against the target model.
//!
//! All arithmetic is exact (`num-bigint` integers and rationals). The only
//! floating point lives in the Gauss-sum oracle, which uses 128-bit
//! correctly rounded arithmetic and only has to pick one of eight phases.

// Index loops read better than zipped iterators in the matrix kernels.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod exact_linalg;
pub mod lattice_realization;
pub mod metric_groups;
pub mod symmetry;
pub mod wall_synthesis;

pub use error::{Error, Result};
pub use exact_linalg::{IntegerMatrix, RationalMatrix};
pub use metric_groups::{Family, MetricGroup, PrimeFamilySpec};

/// Enumeration limits shared by the brute-force routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest group order for isometry search and automorphism enumeration.
    pub group: u64,
    /// Largest group order for the Gauss-sum oracle.
    pub gauss: u64,
    /// Largest discriminant group accepted by the self-dual gluing.
    pub glue: u64,
    /// Largest rank accepted by the coset-minimum enumeration.
    pub rank: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { group: 4096, gauss: 1_000_000, glue: 64, rank: 20 }
    }
}

impl Budget {
    pub fn with_group(mut self, group: u64) -> Self {
        self.group = group;
        self
    }
}

//! Exact cluster-algebra seeds and mutation.
//!
//! Cluster variables are kept as Laurent polynomials in the initial cluster.
//! A mutation multiplies and adds such fractions (all denominators are
//! monomials) and then divides exactly by the old variable's numerator;
//! failure of that division is reported as `NonLaurentResult`.

mod explore;
mod laurent;
mod matrix;
pub mod poly;
mod seed;

use thiserror::Error;

pub use explore::{
    enumerate_seeds, mutation_tree, mutation_tree_with_budget, MutationTree, SeedCount, TreeVertex,
    DEFAULT_TREE_BUDGET, MAX_TREE_DEPTH,
};
pub use laurent::LaurentFraction;
pub use matrix::{mutate_matrix, ExchangeMatrix};
pub use seed::{
    laurent_check, laurent_report, mutate_seed, once_punctured_torus_matrix, polygon_seed, surface_seed,
    CanonicalSeed, LaurentReport, Seed, SurfaceSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("DirectionOutOfRange: direction {direction} not in 1..={rank}")]
    DirectionOutOfRange { direction: usize, rank: usize },
    #[error("NonLaurentResult: mutation in direction {direction} left a non-monomial denominator")]
    NonLaurentResult { direction: usize },
    #[error("NotSkewSymmetric: {0}")]
    NotSkewSymmetric(String),
    #[error("RankMismatch: {variables} variables for a rank {matrix} matrix")]
    RankMismatch { variables: usize, matrix: usize },
    #[error("TooSmall: a {0}-gon has no diagonals")]
    TooSmall(usize),
    #[error("UnsupportedSurface: no exchange matrix for S_{{{genus},{cusps}}}")]
    UnsupportedSurface { genus: u32, cusps: u32 },
    #[error("BudgetExceeded: {0}")]
    BudgetExceeded(String),
}

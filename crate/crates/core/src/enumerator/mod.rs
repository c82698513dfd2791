//! Coset enumeration and everything downstream of a coset table: low-index
//! subgroup search, subgroup presentations by rewriting, and finite
//! permutation images.

pub mod low_index;
pub mod perm;
pub mod rewrite;
pub mod table;
pub mod todd_coxeter;

pub use low_index::{low_index_subgroups, low_index_subgroups_partial, low_index_subgroups_split};
pub use perm::{closure_of, Perm, PermError, PermGroup};
pub use rewrite::{
    action_matrices, commutator_subgroup_table, is_normal, normal_core_quotient,
    reidemeister_schreier, schreier_generator_words, schreier_transversal, subgroup_table,
    QuotientRecord,
};
pub use table::{letter_col, CosetTable, TableError};
pub use todd_coxeter::todd_coxeter;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumeratorError {
    #[error("coset budget must be positive")]
    ZeroBudget,
    #[error("word uses generator index {index}, presentation has {n_gens}")]
    UndeclaredGenerator { index: usize, n_gens: usize },
    #[error("search exceeded node budget of {max_nodes}")]
    NodeBudgetExceeded { max_nodes: usize },
    #[error("operation needs a complete coset table")]
    IncompleteTable,
    #[error("subgroup is not normal: conjugating generator {gen} moves coset {coset}")]
    NotNormal { gen: usize, coset: usize },
    #[error("abelianization is infinite, no finite coset table exists")]
    InfiniteAbelianization,
    #[error("abelianization has order {order}, over the cap of {cap}")]
    AbelianizationTooLarge { order: String, cap: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Table(#[from] TableError),
}

//! Reference implementations used only to check the subtraction-free
//! algorithms. They work over signed exact rationals and may subtract freely;
//! nothing here is called from the algorithm side.

use thiserror::Error;

pub mod matrix;
pub mod tableaux;
pub mod trees;

pub use matrix::{bialternant_oracle, double_schur_det, flag_minor_matrix_oracle, jacobi_trudi_oracle, ExactMatrix};
pub use tableaux::{
    double_schur_oracle, double_schur_tableau, skew_ssyt_oracle, ssyt_schur_oracle, super_schur_oracle, Tableau,
};
pub use trees::{
    arborescences_enumerate, cayley_prufer_check, directed_matrix_tree_oracle, matrix_tree_oracle,
    min_arborescence_oracle, spanning_trees_enumerate, Arc, Edge,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("oracle routes disagree: {0}")]
    Disagree(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

//! Matrices over the exterior algebra, scalar linear algebra and binary forms.

mod forms;
mod matrix;
mod scalar;

pub use forms::{form_gcd, BinaryForm, PolyMultivector};
pub use matrix::{
    coords_matrix, degenerate_combinations, degenerate_generalized_columns, Axis, Degeneracy, ExtMatrix,
    ExtMatrixJson,
};
pub use scalar::{sparse_rank, sparse_rank_mod_p, ScalarMatrix, SparseVec};

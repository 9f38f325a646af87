//! Exact linear algebra over prime fields and the rationals.
//!
//! Everything downstream (homology ranks, spectral sequence pages, subspace
//! comparisons) reduces to the primitives here: canonical rref, kernels,
//! subspace sums/intersections, and coefficient extraction modulo a
//! subspace. All arithmetic is exact; there is no floating point anywhere.

mod bits;
mod dense;
mod matrix;
mod subspace;

pub use bits::{BitMatrix, GfEchelon};
pub use matrix::{complement_row_indices, solve_rowspace, FieldSpec, MatrixF, Scalar};
pub use subspace::{express_modulo, CombineMode, Subspace};

pub(crate) use matrix::{scalar_add, scalar_inv, scalar_mul, scalar_mul_i64, scalar_neg};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("characteristic must be 0 or a prime below 2^16, got {0}")]
    BadCharacteristic(u32),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
}

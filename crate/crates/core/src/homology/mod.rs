//! Group homology via normalised bar resolutions and the charged graded
//! algebra of a family, with table ingestion for larger groups.

mod algebra;
mod bar;
mod table;

pub use algebra::{
    algebra_build, in_span, stabilization_kernel, unit_vector, AlgebraError, ChargedGradedAlgebra,
    NamedClass,
};
pub use bar::{
    bar_complex, bar_dim, check_guard, cross_shuffle, group_homology, index_word, word_index,
    BarChain, GroupHomology, HomologyError, DEFAULT_BAR_GUARD,
};
pub use table::{load_algebra, save_algebra, TableError};

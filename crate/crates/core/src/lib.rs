//! Exact verification workbench for families of groups with multiplication.
//!
//! The crate builds, at desk scale, the combinatorial and homological
//! objects attached to a family of finite groups carrying associative,
//! injective product maps `G_p x G_q -> G_{p+q}`: splitting posets and
//! splitting complexes with their nerves, group homology over prime fields
//! via normalised bar resolutions, the charge-graded homology algebra with
//! its bar-type complexes `B_n` and stabilisation complexes `S_n`, the
//! standard filtration relating them, and the spectral sequence of that
//! filtration. On top of these it runs mechanical checks of the stability,
//! kernel, realisation and decomposability statements for concrete
//! families (symmetric groups and `GL_n(F_p)`).
//!
//! All linear algebra is exact: bit-packed GF(2), canonical residues mod p,
//! or arbitrary-precision rationals.

pub mod linalg;

pub mod group;

pub mod family;

pub mod complex;

pub mod splitting;

pub mod homology;

pub mod barstab;

pub mod specseq;

pub mod report;

pub mod acceptance;

pub use linalg::{FieldSpec, MatrixF, Scalar, Subspace};

//! Subspaces of F^n with canonical reduced-row-echelon bases.
//!
//! The rref basis makes subspace equality a plain data comparison, so
//! every downstream image/kernel statement is decided deterministically.

use super::matrix::{solve_rowspace, MatrixF, Scalar};
use super::{FieldSpec, LinalgError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: MatrixF, // rref, no zero rows
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CombineMode {
    Sum,
    Intersect,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: MatrixF::zero(field, 0, ambient),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: MatrixF::identity(field, ambient),
        }
    }

    /// Span of the rows of `m`, canonicalised.
    pub fn from_rows(m: &MatrixF) -> Self {
        let (r, pivots) = m.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            ambient: m.cols(),
            basis: r.submatrix_rows(&keep),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixF {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains_row(&self, v: &MatrixF) -> bool {
        assert_eq!(v.cols(), self.ambient, "ambient mismatch");
        solve_rowspace(&self.basis, v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.dim() == 0 || solve_rowspace(&self.basis, &other.basis).is_some()
    }

    pub fn combine(&self, other: &Subspace, mode: CombineMode) -> Result<Subspace, LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(match mode {
            CombineMode::Sum => Subspace::from_rows(&self.basis.vstack(&other.basis)),
            CombineMode::Intersect => {
                // Zassenhaus-style: kernel of [U; V] stacked columnwise gives
                // the coefficient pairs (c, d) with c*U = d*V; read off c*U.
                if self.is_zero() || other.is_zero() {
                    return Ok(Subspace::zero(self.field(), self.ambient));
                }
                let stacked = self.basis.vstack(&other.basis);
                let ker = stacked.transpose().kernel(); // rows (c | d) with c*U + d*V = 0
                let c = take_cols(&ker, 0, self.dim());
                Subspace::from_rows(&c.mul(&self.basis))
            }
        })
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.combine(other, CombineMode::Sum)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.combine(other, CombineMode::Intersect)
    }

    /// Image of the subspace under the linear map with matrix `m`
    /// (vectors act as rows: x maps to x * m^T given m: target x source).
    pub fn image_under(&self, m: &MatrixF) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map source dimension mismatch");
        Subspace::from_rows(&self.basis.mul(&m.transpose()))
    }
}

fn take_cols(m: &MatrixF, from: usize, len: usize) -> MatrixF {
    let mut out = MatrixF::zero(m.field(), m.rows(), len);
    for i in 0..m.rows() {
        for j in 0..len {
            out.set(i, j, m.get(i, from + j));
        }
    }
    out
}

/// Express `v` over the basis of `u` modulo `w`: coefficients `c` with
/// `v - sum c_i u_i` in `w`, or `None` when `v` lies outside `u + w`.
pub fn express_modulo(v: &MatrixF, u: &Subspace, w: &Subspace) -> Option<Vec<Scalar>> {
    assert_eq!(v.rows(), 1, "express_modulo takes a single row vector");
    assert_eq!(v.cols(), u.ambient_dim(), "ambient mismatch");
    assert_eq!(u.ambient_dim(), w.ambient_dim(), "ambient mismatch");
    assert_eq!(u.field(), w.field(), "field mismatch");
    let stacked = u.basis().vstack(w.basis());
    let sol = solve_rowspace(&stacked, v)?;
    Some((0..u.dim()).map(|j| sol.get(0, j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn axes_intersect_to_zero_and_sum_to_plane() {
        let x = Subspace::from_rows(&MatrixF::from_rows(f2(), 2, &[vec![1, 0]]));
        let y = Subspace::from_rows(&MatrixF::from_rows(f2(), 2, &[vec![0, 1]]));
        assert!(x.intersect(&y).unwrap().is_zero());
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(f2(), 2));
    }

    #[test]
    fn intersection_idempotent() {
        let u = Subspace::from_rows(&MatrixF::from_rows(f2(), 3, &[vec![1, 1, 0], vec![0, 1, 1]]));
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let u = Subspace::zero(f2(), 2);
        let v = Subspace::zero(f2(), 3);
        assert!(matches!(u.sum(&v), Err(LinalgError::AmbientMismatch { .. })));
    }

    #[test]
    fn express_modulo_basic() {
        let f5 = FieldSpec::prime(5).unwrap();
        let u = Subspace::from_rows(&MatrixF::from_rows(f5, 3, &[vec![1, 0, 0], vec![0, 1, 0]]));
        let w = Subspace::from_rows(&MatrixF::from_rows(f5, 3, &[vec![0, 0, 1]]));
        // v = u_1 with w = 0 ambient part -> coeffs (1, 0)
        let v = MatrixF::from_rows(f5, 3, &[vec![1, 0, 0]]);
        assert_eq!(express_modulo(&v, &u, &w).unwrap(), vec![Scalar::Mod(1), Scalar::Mod(0)]);
        // v in w -> all-zero coefficients
        let v = MatrixF::from_rows(f5, 3, &[vec![0, 0, 3]]);
        assert_eq!(express_modulo(&v, &u, &w).unwrap(), vec![Scalar::Mod(0), Scalar::Mod(0)]);
        // outside u + w -> NotInSpan
        let u2 = Subspace::from_rows(&MatrixF::from_rows(f5, 3, &[vec![1, 0, 0]]));
        let w2 = Subspace::zero(f5, 3);
        let v = MatrixF::from_rows(f5, 3, &[vec![0, 1, 0]]);
        assert!(express_modulo(&v, &u2, &w2).is_none());
    }
}

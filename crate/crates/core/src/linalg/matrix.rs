//! Field-tagged exact matrices.
//!
//! [`MatrixF`] dispatches between the bit-packed GF(2) store, canonical
//! residues mod an odd prime, and arbitrary-precision rationals. Every
//! matrix carries its [`FieldSpec`]; mixing fields is rejected.

use num::rational::BigRational;
use num::BigInt;

use super::bits::BitMatrix;
use super::dense::{FieldOps, MatG, ModField, RatField};
use super::LinalgError;

/// Coefficient field: characteristic 0 (rationals) or a prime below 2^16.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn prime(p: u32) -> Result<Self, LinalgError> {
        if p < 2 || p >= 1 << 16 || !is_prime(p) {
            return Err(LinalgError::BadCharacteristic(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    /// 0 for the rationals, else the prime.
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_char_two(&self) -> bool {
        self.characteristic == 2
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A scalar in some [`FieldSpec`]; `Mod` values are canonical residues.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Mod(u32),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => num::Zero::is_zero(r),
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Store {
    Bits(BitMatrix),
    Mod(MatG<ModField>),
    Rat(MatG<RatField>),
}

/// Exact matrix over a fixed field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixF {
    field: FieldSpec,
    store: Store,
}

impl MatrixF {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let store = match field.characteristic() {
            0 => Store::Rat(MatG::zero(&RatField, rows, cols)),
            2 => Store::Bits(BitMatrix::zero(rows, cols)),
            p => Store::Mod(MatG::zero(&ModField { p }, rows, cols)),
        };
        MatrixF { field, store }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let store = match field.characteristic() {
            0 => Store::Rat(MatG::identity(&RatField, n)),
            2 => Store::Bits(BitMatrix::identity(n)),
            p => Store::Mod(MatG::identity(&ModField { p }, n)),
        };
        MatrixF { field, store }
    }

    /// Build from integer entries, reduced into the field.
    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let store = match field.characteristic() {
            0 => Store::Rat(MatG::from_fn(&RatField, rows, cols, f)),
            2 => Store::Bits(BitMatrix::from_fn(rows, cols, |i, j| f(i, j).rem_euclid(2) == 1)),
            p => Store::Mod(MatG::from_fn(&ModField { p }, rows, cols, f)),
        };
        MatrixF { field, store }
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_fn(field, rows.len(), cols, |i, j| rows[i][j])
    }

    pub fn from_bits(field: FieldSpec, bits: BitMatrix) -> Self {
        assert!(field.is_char_two());
        MatrixF { field, store: Store::Bits(bits) }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        match &self.store {
            Store::Bits(m) => m.rows(),
            Store::Mod(m) => m.rows,
            Store::Rat(m) => m.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match &self.store {
            Store::Bits(m) => m.cols(),
            Store::Mod(m) => m.cols,
            Store::Rat(m) => m.cols,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match &self.store {
            Store::Bits(m) => Scalar::Mod(m.get(i, j) as u32),
            Store::Mod(m) => Scalar::Mod(*m.get(i, j)),
            Store::Rat(m) => Scalar::Rat(m.get(i, j).clone()),
        }
    }

    pub fn set_i64(&mut self, i: usize, j: usize, v: i64) {
        match &mut self.store {
            Store::Bits(m) => m.set(i, j, v.rem_euclid(2) == 1),
            Store::Mod(m) => {
                let p = self.field.characteristic();
                m.set(i, j, v.rem_euclid(p as i64) as u32)
            }
            Store::Rat(m) => m.set(i, j, RatField.from_i64(v)),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        match (&mut self.store, v) {
            (Store::Bits(m), Scalar::Mod(v)) => m.set(i, j, v % 2 == 1),
            (Store::Mod(m), Scalar::Mod(v)) => {
                let p = self.field.characteristic();
                m.set(i, j, v % p)
            }
            (Store::Rat(m), Scalar::Rat(v)) => m.set(i, j, v),
            _ => panic!("scalar kind does not match matrix field"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Bits(m) => (0..m.rows()).all(|i| m.row_is_zero(i)),
            Store::Mod(m) => m.is_zero(&ModField { p: self.field.characteristic() }),
            Store::Rat(m) => m.is_zero(&RatField),
        }
    }

    /// Reduced row-echelon form, with pivot columns.
    pub fn rref(&self) -> (MatrixF, Vec<usize>) {
        let mut out = self.clone();
        let pivots = out.rref_in_place();
        (out, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        match &mut self.store {
            Store::Bits(m) => m.rref_in_place(),
            Store::Mod(m) => m.rref_in_place(&ModField { p: self.field.characteristic() }),
            Store::Rat(m) => m.rref_in_place(&RatField),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            Store::Bits(m) => m.rank(),
            Store::Mod(m) => m.rank(&ModField { p: self.field.characteristic() }),
            Store::Rat(m) => m.rank(&RatField),
        }
    }

    pub fn transpose(&self) -> MatrixF {
        let store = match &self.store {
            Store::Bits(m) => Store::Bits(m.transpose()),
            Store::Mod(m) => Store::Mod(m.transpose(&ModField { p: self.field.characteristic() })),
            Store::Rat(m) => Store::Rat(m.transpose(&RatField)),
        };
        MatrixF { field: self.field, store }
    }

    pub fn mul(&self, rhs: &MatrixF) -> MatrixF {
        assert_eq!(self.field, rhs.field, "field mismatch in matrix product");
        let store = match (&self.store, &rhs.store) {
            (Store::Bits(a), Store::Bits(b)) => Store::Bits(a.mul(b)),
            (Store::Mod(a), Store::Mod(b)) => Store::Mod(a.mul(&ModField { p: self.field.characteristic() }, b)),
            (Store::Rat(a), Store::Rat(b)) => Store::Rat(a.mul(&RatField, b)),
            _ => unreachable!("stores agree when fields agree"),
        };
        MatrixF { field: self.field, store }
    }

    pub fn vstack(&self, other: &MatrixF) -> MatrixF {
        assert_eq!(self.field, other.field, "field mismatch in vstack");
        let store = match (&self.store, &other.store) {
            (Store::Bits(a), Store::Bits(b)) => Store::Bits(a.vstack(b)),
            (Store::Mod(a), Store::Mod(b)) => Store::Mod(a.vstack(b)),
            (Store::Rat(a), Store::Rat(b)) => Store::Rat(a.vstack(b)),
            _ => unreachable!(),
        };
        MatrixF { field: self.field, store }
    }

    pub fn hstack(&self, other: &MatrixF) -> MatrixF {
        assert_eq!(self.field, other.field, "field mismatch in hstack");
        let store = match (&self.store, &other.store) {
            (Store::Bits(a), Store::Bits(b)) => Store::Bits(a.hstack(b)),
            (Store::Mod(a), Store::Mod(b)) => Store::Mod(a.hstack(b)),
            (Store::Rat(a), Store::Rat(b)) => Store::Rat(a.hstack(b)),
            _ => unreachable!(),
        };
        MatrixF { field: self.field, store }
    }

    pub fn submatrix_rows(&self, keep: &[usize]) -> MatrixF {
        let store = match &self.store {
            Store::Bits(m) => Store::Bits(m.submatrix_rows(keep)),
            Store::Mod(m) => Store::Mod(m.submatrix_rows(keep)),
            Store::Rat(m) => Store::Rat(m.submatrix_rows(keep)),
        };
        MatrixF { field: self.field, store }
    }

    pub fn row_matrix(&self, i: usize) -> MatrixF {
        self.submatrix_rows(&[i])
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        (0..self.cols()).all(|j| self.get(i, j).is_zero())
    }

    pub fn scale_i64(&self, k: i64) -> MatrixF {
        let mut out = MatrixF::zero(self.field, self.rows(), self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, scalar_mul_i64(self.field, &self.get(i, j), k));
            }
        }
        out
    }

    pub fn add(&self, rhs: &MatrixF) -> MatrixF {
        assert_eq!(self.field, rhs.field);
        assert_eq!((self.rows(), self.cols()), (rhs.rows(), rhs.cols()));
        let mut out = MatrixF::zero(self.field, self.rows(), self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, scalar_add(self.field, &self.get(i, j), &rhs.get(i, j)));
            }
        }
        out
    }

    pub fn sub(&self, rhs: &MatrixF) -> MatrixF {
        self.add(&rhs.scale_i64(-1))
    }

    /// Basis of the right kernel `{x : self * x = 0}`, as canonical rref rows.
    pub fn kernel(&self) -> MatrixF {
        let (r, pivots) = self.rref();
        let n = self.cols();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = MatrixF::zero(self.field, free.len(), n);
        for (k, &fcol) in free.iter().enumerate() {
            basis.set_i64(k, fcol, 1);
            for (prow, &pcol) in pivots.iter().enumerate() {
                let v = r.get(prow, fcol);
                if !v.is_zero() {
                    basis.set(k, pcol, scalar_neg(self.field, &v));
                }
            }
        }
        basis.rref_in_place();
        basis
    }
}

pub(crate) fn scalar_add(field: FieldSpec, a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Mod(x), Scalar::Mod(y)) => {
            let p = field.characteristic() as u64;
            Scalar::Mod(((*x as u64 + *y as u64) % p) as u32)
        }
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
        _ => panic!("scalar kind mismatch"),
    }
}

pub(crate) fn scalar_mul(field: FieldSpec, a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Mod(x), Scalar::Mod(y)) => {
            let p = field.characteristic() as u64;
            Scalar::Mod(((*x as u64 * *y as u64) % p) as u32)
        }
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
        _ => panic!("scalar kind mismatch"),
    }
}

pub(crate) fn scalar_neg(field: FieldSpec, a: &Scalar) -> Scalar {
    match a {
        Scalar::Mod(x) => {
            let p = field.characteristic();
            Scalar::Mod(if *x == 0 { 0 } else { p - x })
        }
        Scalar::Rat(x) => Scalar::Rat(-x),
    }
}

pub(crate) fn scalar_mul_i64(field: FieldSpec, a: &Scalar, k: i64) -> Scalar {
    match a {
        Scalar::Mod(x) => {
            let p = field.characteristic() as i64;
            let kk = k.rem_euclid(p) as u64;
            Scalar::Mod(((*x as u64 * kk) % p as u64) as u32)
        }
        Scalar::Rat(x) => Scalar::Rat(x * BigRational::from_integer(BigInt::from(k))),
    }
}

/// Indices of rows of `candidates` forming a basis of its row space modulo
/// the row space of `base`; greedy in row order, so the choice is
/// deterministic. Uses the incremental GF(2) echelon for characteristic 2
/// and an entry-wise echelon otherwise.
pub fn complement_row_indices(candidates: &MatrixF, base: &MatrixF) -> Vec<usize> {
    assert_eq!(candidates.field(), base.field());
    assert_eq!(candidates.cols(), base.cols());
    let field = candidates.field();
    let n = candidates.cols();
    if field.is_char_two() {
        let mut ech = super::bits::GfEchelon::new(n);
        if let (Store::Bits(b), Store::Bits(c)) = (&base.store, &candidates.store) {
            for i in 0..base.rows() {
                ech.insert(b.row(i).to_vec());
            }
            let mut picked = Vec::new();
            for i in 0..candidates.rows() {
                if ech.insert(c.row(i).to_vec()) {
                    picked.push(i);
                }
            }
            return picked;
        }
        unreachable!("char-2 matrices use the bit store");
    }
    // generic echelon accumulator: (pivot column, normalised row)
    let mut rows: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let mut reduce_insert = |mut v: Vec<Scalar>| -> bool {
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                return false;
            };
            match rows.iter().find(|(p, _)| *p == lead) {
                Some((_, pivot_row)) => {
                    let f = v[lead].clone();
                    for (x, p) in v.iter_mut().zip(pivot_row) {
                        *x = scalar_add(field, x, &scalar_neg(field, &scalar_mul(field, &f, p)));
                    }
                }
                None => {
                    let inv = scalar_inv(field, &v[lead]);
                    for x in v.iter_mut() {
                        *x = scalar_mul(field, x, &inv);
                    }
                    rows.push((lead, v));
                    return true;
                }
            }
        }
    };
    let grab = |m: &MatrixF, i: usize| -> Vec<Scalar> { (0..n).map(|j| m.get(i, j)).collect() };
    for i in 0..base.rows() {
        reduce_insert(grab(base, i));
    }
    let mut picked = Vec::new();
    for i in 0..candidates.rows() {
        if reduce_insert(grab(candidates, i)) {
            picked.push(i);
        }
    }
    picked
}

pub(crate) fn scalar_inv(field: FieldSpec, a: &Scalar) -> Scalar {
    match a {
        Scalar::Mod(x) => {
            let p = field.characteristic();
            assert!(*x != 0);
            let mut base = *x as u64;
            let mut e = p as u64 - 2;
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p as u64;
                }
                base = base * base % p as u64;
                e >>= 1;
            }
            Scalar::Mod(acc as u32)
        }
        Scalar::Rat(x) => {
            use num::Zero;
            assert!(!x.is_zero());
            Scalar::Rat(x.recip())
        }
    }
}

/// Solve `x * a = b` row-wise: find `x` (rows_b x rows_a) with each row of
/// `b` a combination of the rows of `a`. Returns `None` when inconsistent.
pub fn solve_rowspace(a: &MatrixF, b: &MatrixF) -> Option<MatrixF> {
    assert_eq!(a.field(), b.field(), "field mismatch in solve");
    assert_eq!(a.cols(), b.cols(), "ambient mismatch in solve");
    let k = a.rows();
    // Augment a^T with b^T and eliminate: a^T x^T = b^T.
    let at = a.transpose();
    let bt = b.transpose();
    let mut aug = at.hstack(&bt);
    let pivots = aug.rref_in_place();
    if pivots.iter().any(|&c| c >= k) {
        return None; // a pivot in the augmented block: inconsistent
    }
    let mut x = MatrixF::zero(a.field(), b.rows(), k);
    for (prow, &pcol) in pivots.iter().enumerate() {
        for r in 0..b.rows() {
            x.set(r, pcol, aug.get(prow, k + r));
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_fixed_by_rref() {
        for field in [FieldSpec::prime(5).unwrap(), FieldSpec::rationals()] {
            let id = MatrixF::identity(field, 3);
            let (r, pivots) = id.rref();
            assert_eq!(r, id);
            assert_eq!(pivots, vec![0, 1, 2]);
        }
    }

    #[test]
    fn kernel_of_ones_row_f2() {
        // [1,1] over F_2 -> kernel spanned by (1,1)
        let f2 = FieldSpec::prime(2).unwrap();
        let m = MatrixF::from_rows(f2, 2, &[vec![1, 1]]);
        let k = m.kernel();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.get(0, 0), Scalar::Mod(1));
        assert_eq!(k.get(0, 1), Scalar::Mod(1));
    }

    #[test]
    fn kernel_dimensions() {
        let f5 = FieldSpec::prime(5).unwrap();
        // identity -> zero kernel; zero 2x3 -> full 3-space
        assert_eq!(MatrixF::identity(f5, 4).kernel().rows(), 0);
        let z = MatrixF::zero(f5, 2, 3);
        let k = z.kernel();
        assert_eq!(k.rows(), 3);
        assert_eq!(k, MatrixF::identity(f5, 3));
    }

    #[test]
    fn solve_rowspace_roundtrip() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = MatrixF::from_rows(f7, 3, &[vec![1, 2, 3], vec![0, 1, 4]]);
        let x = MatrixF::from_rows(f7, 2, &[vec![2, 5]]);
        let b = x.mul(&a);
        let sol = solve_rowspace(&a, &b).unwrap();
        assert_eq!(sol.mul(&a), b);
        let outside = MatrixF::from_rows(f7, 3, &[vec![0, 0, 1]]);
        assert!(solve_rowspace(&a, &outside).is_none());
    }
}

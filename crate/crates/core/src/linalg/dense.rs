//! Generic dense matrices over odd prime fields and the rationals.
//!
//! The prime-field path keeps entries as canonical residues in `u32`
//! (moduli are below 2^16, so products fit in `u64` without overflow);
//! the rational path uses arbitrary-precision fractions. Both share one
//! elimination routine through the [`FieldOps`] context trait.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

pub trait FieldOps {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, k: i64) -> Self::Elem;
}

/// Arithmetic modulo an odd prime `p < 2^16`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ModField {
    pub p: u32,
}

impl FieldOps for ModField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "division by zero mod {}", self.p);
        // Fermat: a^(p-2) mod p
        let mut base = *a as u64;
        let mut e = self.p as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }
    fn from_i64(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }
}

/// Exact rational arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RatField;

impl FieldOps for RatField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "division by zero");
        a.recip()
    }
    fn from_i64(&self, k: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(k))
    }
}

pub fn rat_is_canonical(a: &BigRational) -> bool {
    // num keeps fractions reduced with positive denominators
    a.denom().is_positive()
}

/// Row-major dense matrix over the field described by `F`.
#[derive(Debug)]
pub struct MatG<F: FieldOps> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F::Elem>,
}

impl<F: FieldOps> Clone for MatG<F> {
    fn clone(&self) -> Self {
        MatG {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }
}

impl<F: FieldOps> PartialEq for MatG<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: FieldOps> Eq for MatG<F> where F::Elem: Eq {}

impl<F: FieldOps> MatG<F> {
    pub fn zero(f: &F, rows: usize, cols: usize) -> Self {
        MatG {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Self::zero(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn from_fn(f: &F, rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zero(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f.from_i64(g(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row-echelon form with unit pivots.
    pub fn rref_in_place(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.get(i, c)) {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), &f.mul(self.get(r, j), &factor));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &F) -> usize {
        let mut m = self.clone();
        m.rref_in_place(f).len()
    }

    pub fn transpose(&self, _f: &F) -> Self {
        let mut m = MatG {
            rows: self.cols,
            cols: self.rows,
            data: Vec::with_capacity(self.data.len()),
        };
        for j in 0..self.cols {
            for i in 0..self.rows {
                m.data.push(self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, f: &F, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatG {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        MatG {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn submatrix_rows(&self, keep: &[usize]) -> Self {
        let mut data = Vec::with_capacity(keep.len() * self.cols);
        for &r in keep {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        MatG {
            rows: keep.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inverse() {
        let f = ModField { p: 65521 }; // largest prime below 2^16
        for a in [1u32, 2, 3, 12345, 65520] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn rational_rref_proportional_rows() {
        // [[2,4],[1,2]] -> [[1,2],[0,0]], pivots [0]
        let f = RatField;
        let mut m = MatG::from_fn(&f, 2, 2, |i, j| [[2, 4], [1, 2]][i][j]);
        let pivots = m.rref_in_place(&f);
        assert_eq!(pivots, vec![0]);
        assert_eq!(*m.get(0, 0), f.from_i64(1));
        assert_eq!(*m.get(0, 1), f.from_i64(2));
        assert!(f.is_zero(m.get(1, 0)) && f.is_zero(m.get(1, 1)));
    }
}

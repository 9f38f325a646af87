//! Bit-packed matrices over GF(2).
//!
//! Rows are stored as contiguous `u64` words; elimination is word-wise XOR.
//! This is the fast path behind [`MatrixF`](super::MatrixF) for
//! characteristic 2, where the bulk of the rank work happens.

/// Dense matrix over GF(2), one bit per entry, row-major in 64-bit words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            stride,
            words: vec![0u64; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.words[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.words[i * self.stride + j / 64];
        if v {
            *w |= 1u64 << (j % 64);
        } else {
            *w &= !(1u64 << (j % 64));
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn xor_row_into(&mut self, from: usize, to: usize) {
        debug_assert_ne!(from, to);
        let (a, b) = if from < to {
            let (lo, hi) = self.words.split_at_mut(to * self.stride);
            (&lo[from * self.stride..from * self.stride + self.stride], &mut hi[..self.stride])
        } else {
            let (lo, hi) = self.words.split_at_mut(from * self.stride);
            (&hi[..self.stride], &mut lo[to * self.stride..to * self.stride + self.stride])
        };
        for (x, y) in b.iter_mut().zip(a) {
            *x ^= *y;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.words.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|&w| w == 0)
    }

    /// Is row `sub` bitwise contained in row `sup`?
    pub fn row_contains(&self, sup: usize, sub: usize) -> bool {
        self.row(sup)
            .iter()
            .zip(self.row(sub))
            .all(|(&a, &b)| b & !a == 0)
    }

    /// Leading (lowest-index) nonzero column of row `i`, if any.
    pub fn leading_col(&self, i: usize) -> Option<usize> {
        for (k, &w) in self.row(i).iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// In-place reduced row-echelon form. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank via forward elimination; does not compute the full rref.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in r + 1..m.rows {
                if m.get(i, c) {
                    m.xor_row_into(r, i);
                }
            }
            r += 1;
        }
        r
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for (k, &w) in self.row(i).iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let j = k * 64 + bits.trailing_zeros() as usize;
                    t.set(j, i, true);
                    bits &= bits - 1;
                }
            }
        }
        t
    }

    /// Matrix product over GF(2); rows of `self` against rows of `rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in GF(2) product");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for (k, &w) in self.row(i).iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let j = k * 64 + bits.trailing_zeros() as usize;
                    let (dst, src) = (i * out.stride, j * rhs.stride);
                    for t in 0..out.stride {
                        out.words[dst + t] ^= rhs.words[src + t];
                    }
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zero(self.rows + other.rows, self.cols);
        m.words[..self.rows * self.stride].copy_from_slice(&self.words);
        m.words[self.rows * self.stride..].copy_from_slice(&other.words);
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn submatrix_rows(&self, keep: &[usize]) -> Self {
        let mut m = Self::zero(keep.len(), self.cols);
        for (i, &r) in keep.iter().enumerate() {
            let dst = i * m.stride;
            m.words[dst..dst + self.stride].copy_from_slice(self.row(r));
        }
        m
    }
}

/// Incremental GF(2) row-space accumulator.
///
/// Feeds rows one at a time into an echelon basis, so a row space can be
/// computed without ever materialising the full matrix. Used for boundary
/// subspaces of bar differentials, whose column counts can be in the
/// millions while the ambient dimension stays small.
pub struct GfEchelon {
    cols: usize,
    /// pivot column -> row index in `rows`
    pivot_of: Vec<Option<u32>>,
    rows: Vec<Vec<u64>>,
}

impl GfEchelon {
    pub fn new(cols: usize) -> Self {
        GfEchelon {
            cols,
            pivot_of: vec![None; cols],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the basis; insert the remainder if nonzero.
    /// Returns true when the row enlarged the span.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let stride = self.cols.div_ceil(64);
        debug_assert_eq!(row.len(), stride);
        loop {
            let lead = row.iter().enumerate().find_map(|(k, &w)| {
                (w != 0).then(|| k * 64 + w.trailing_zeros() as usize)
            });
            let Some(c) = lead else {
                return false;
            };
            match self.pivot_of[c] {
                Some(r) => {
                    let basis = &self.rows[r as usize];
                    for (x, y) in row.iter_mut().zip(basis) {
                        *x ^= *y;
                    }
                }
                None => {
                    self.pivot_of[c] = Some(self.rows.len() as u32);
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }

    pub fn insert_sparse(&mut self, support: &[usize]) -> bool {
        let stride = self.cols.div_ceil(64);
        let mut row = vec![0u64; stride];
        for &j in support {
            row[j / 64] ^= 1u64 << (j % 64);
        }
        self.insert(row)
    }

    /// Finish into a fully reduced echelon matrix (canonical rref).
    pub fn into_matrix(self) -> BitMatrix {
        let stride = self.cols.div_ceil(64);
        let mut m = BitMatrix::zero(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            m.words[i * stride..(i + 1) * stride].copy_from_slice(row);
        }
        m.rref_in_place();
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_canonical_on_equal_rows() {
        // [[1,1],[1,1]] has rank 1 with pivot column 0
        let mut m = BitMatrix::from_fn(2, 2, |_, _| true);
        let pivots = m.rref_in_place();
        assert_eq!(pivots, vec![0]);
        assert!(m.get(0, 0) && m.get(0, 1));
        assert!(m.row_is_zero(1));
    }

    #[test]
    fn transpose_involutive() {
        let m = BitMatrix::from_fn(5, 130, |i, j| (i * 31 + j * 7) % 5 == 0);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn echelon_matches_batch_rank() {
        let m = BitMatrix::from_fn(40, 70, |i, j| (i * j + i + 3 * j) % 7 < 3);
        let mut ech = GfEchelon::new(70);
        for i in 0..40 {
            ech.insert(m.row(i).to_vec());
        }
        assert_eq!(ech.rank(), m.rank());
    }
}

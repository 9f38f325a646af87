//! Normalised bar resolutions and group homology with representatives.
//!
//! `C_k(G)` is free on words `[g_1|...|g_k]` with every `g_i != e`,
//! ordered lexicographically by element index; a word acquiring an
//! identity letter is degenerate and collapses to zero. With trivial
//! field coefficients the boundary is
//!
//! `∂[g_1|..|g_k] = [g_2|..|g_k] + Σ (-1)^i [g_1|..|g_i g_{i+1}|..|g_k]
//!                + (-1)^k [g_1|..|g_{k-1}]`.
//!
//! Kernels are taken from dense differentials; boundary subspaces are
//! accumulated row by row, so the top differential (which may have
//! millions of columns) is never materialised.

use itertools::Itertools;

use crate::complex::{BigradedChainComplex, HomologySummand};
use crate::group::{FiniteGroup, Homomorphism};
use crate::linalg::{complement_row_indices, FieldSpec, GfEchelon, MatrixF, Scalar, Subspace};

/// Default guard on the number of bar words per degree.
pub const DEFAULT_BAR_GUARD: u64 = 2_000_000;

/// Hard cap on entries of any dense differential (memory protection).
const DENSE_ENTRY_LIMIT: u128 = 1 << 28;

#[derive(Debug, Clone, thiserror::Error)]
pub enum HomologyError {
    #[error(
        "bar resolution of {group} needs {needed} words at degree {degree}, over the guard {guard}; \
         compute the algebra offline and ingest it as a table instead"
    )]
    GuardExceeded {
        group: String,
        degree: usize,
        needed: u128,
        guard: u64,
    },
    #[error(
        "dense differential for {group} at degree {degree} needs {entries} entries, over the memory cap; \
         compute the algebra offline and ingest it as a table instead"
    )]
    MemoryCap {
        group: String,
        degree: usize,
        entries: u128,
    },
}

fn pow_u128(m: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, _| acc.saturating_mul(m as u128))
}

/// Number of normalised bar words of degree `k`.
pub fn bar_dim(group: &FiniteGroup, k: usize) -> usize {
    pow_u128(group.order() - 1, k) as usize
}

/// Word -> column index (lexicographic, big-endian digits `g_i - 1`).
pub fn word_index(group: &FiniteGroup, word: &[u32]) -> usize {
    let m = group.order() - 1;
    word.iter().fold(0usize, |acc, &g| {
        debug_assert!(g != 0);
        acc * m + (g as usize - 1)
    })
}

/// Column index -> word.
pub fn index_word(group: &FiniteGroup, k: usize, mut idx: usize) -> Vec<u32> {
    let m = group.order() - 1;
    let mut word = vec![0u32; k];
    for slot in word.iter_mut().rev() {
        *slot = (idx % m) as u32 + 1;
        idx /= m;
    }
    word
}

/// Boundary terms of a single word: (target word, sign), unnormalised
/// (degenerate targets already dropped, duplicates not combined).
fn boundary_terms(group: &FiniteGroup, word: &[u32]) -> Vec<(Vec<u32>, i64)> {
    let k = word.len();
    let mut out = Vec::with_capacity(k + 1);
    if k == 0 {
        return out;
    }
    out.push((word[1..].to_vec(), 1));
    for i in 1..k {
        let merged = group.mul(word[i - 1], word[i]);
        if merged != 0 {
            let mut w = Vec::with_capacity(k - 1);
            w.extend_from_slice(&word[..i - 1]);
            w.push(merged);
            w.extend_from_slice(&word[i + 1..]);
            out.push((w, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    out.push((word[..k - 1].to_vec(), if k % 2 == 0 { 1 } else { -1 }));
    out
}

/// Iterate all normalised words of degree `k` in index order.
fn for_each_word(group: &FiniteGroup, k: usize, mut f: impl FnMut(usize, &[u32])) {
    let m = group.order() - 1;
    if m == 0 {
        if k == 0 {
            f(0, &[]);
        }
        return;
    }
    let total = pow_u128(m, k);
    let mut word: Vec<u32> = vec![1; k];
    let mut idx = 0usize;
    loop {
        f(idx, &word);
        idx += 1;
        if idx as u128 >= total {
            break;
        }
        let mut pos = k;
        loop {
            pos -= 1;
            word[pos] += 1;
            if word[pos] as usize <= m {
                break;
            }
            word[pos] = 1;
        }
    }
}

/// Dense differential `∂_k : C_k -> C_{k-1}`.
fn dense_diff(group: &FiniteGroup, field: FieldSpec, k: usize) -> Result<MatrixF, HomologyError> {
    assert!(k >= 1);
    let rows = bar_dim(group, k - 1);
    let cols = bar_dim(group, k);
    if (rows as u128) * (cols as u128) > DENSE_ENTRY_LIMIT {
        return Err(HomologyError::MemoryCap {
            group: group.label().to_string(),
            degree: k,
            entries: rows as u128 * cols as u128,
        });
    }
    let mut m = MatrixF::zero(field, rows, cols);
    for_each_word(group, k, |col, word| {
        for (target, sign) in boundary_terms(group, word) {
            let row = word_index(group, &target);
            let cur = m.get(row, col);
            let add = crate::linalg::scalar_mul_i64(field, &one(field), sign);
            m.set(row, col, crate::linalg::scalar_add(field, &cur, &add));
        }
    });
    Ok(m)
}

fn one(field: FieldSpec) -> Scalar {
    match field.characteristic() {
        0 => Scalar::Rat(num::One::one()),
        _ => Scalar::Mod(1),
    }
}

/// Boundary subspace of `C_k` accumulated from the `(k+1)`-words without
/// materialising `∂_{k+1}`.
fn streamed_boundaries(group: &FiniteGroup, field: FieldSpec, k: usize) -> Subspace {
    let dim = bar_dim(group, k);
    if field.is_char_two() {
        let mut ech = GfEchelon::new(dim);
        for_each_word(group, k + 1, |_, word| {
            let mut support: Vec<usize> = boundary_terms(group, word)
                .into_iter()
                .map(|(t, _)| word_index(group, &t))
                .collect();
            support.sort_unstable();
            // XOR semantics: repeated indices cancel in pairs
            let mut reduced = Vec::with_capacity(support.len());
            let mut i = 0;
            while i < support.len() {
                if i + 1 < support.len() && support[i] == support[i + 1] {
                    i += 2;
                } else {
                    reduced.push(support[i]);
                    i += 1;
                }
            }
            if !reduced.is_empty() {
                ech.insert_sparse(&reduced);
            }
        });
        Subspace::from_rows(&MatrixF::from_bits(field, ech.into_matrix()))
    } else {
        let mut rows: Vec<MatrixF> = Vec::new();
        let mut acc: Option<MatrixF> = None;
        for_each_word(group, k + 1, |_, word| {
            let mut v = MatrixF::zero(field, 1, dim);
            for (target, sign) in boundary_terms(group, word) {
                let col = word_index(group, &target);
                let cur = v.get(0, col);
                let add = crate::linalg::scalar_mul_i64(field, &one(field), sign);
                v.set(0, col, crate::linalg::scalar_add(field, &cur, &add));
            }
            rows.push(v);
            if rows.len() == 512 {
                let block = rows
                    .drain(..)
                    .reduce(|a, b| a.vstack(&b))
                    .expect("block is nonempty");
                acc = Some(match acc.take() {
                    None => Subspace::from_rows(&block).basis().clone(),
                    Some(prev) => {
                        let (r, p) = prev.vstack(&block).rref();
                        r.submatrix_rows(&(0..p.len()).collect::<Vec<_>>())
                    }
                });
            }
        });
        let mut all = acc.unwrap_or_else(|| MatrixF::zero(field, 0, dim));
        for r in rows {
            all = all.vstack(&r);
        }
        Subspace::from_rows(&all)
    }
}

/// The normalised bar complex as a bigraded complex (topological degree 0
/// column, homological degree = bar degree), with `C_k` for `k <= dmax+1`.
pub fn bar_complex(
    group: &FiniteGroup,
    field: FieldSpec,
    dmax: usize,
    guard: u64,
) -> Result<BigradedChainComplex, HomologyError> {
    check_guard(group, dmax, guard)?;
    let mut cc = BigradedChainComplex::new(field);
    for k in 0..=dmax + 1 {
        cc.set_term(k, 0, bar_dim(group, k), None);
    }
    for k in 1..=dmax + 1 {
        if bar_dim(group, k) == 0 {
            continue;
        }
        cc.set_diff(k, 0, dense_diff(group, field, k)?);
    }
    Ok(cc)
}

pub fn check_guard(group: &FiniteGroup, dmax: usize, guard: u64) -> Result<(), HomologyError> {
    for k in 0..=dmax + 1 {
        let needed = pow_u128(group.order() - 1, k);
        if needed > guard as u128 {
            return Err(HomologyError::GuardExceeded {
                group: group.label().to_string(),
                degree: k,
                needed,
                guard,
            });
        }
    }
    Ok(())
}

/// Group homology `H_d(G; F)` for `d <= dmax` with canonical
/// representative cycles in bar-word coordinates.
#[derive(Debug)]
pub struct GroupHomology {
    pub group: FiniteGroup,
    pub field: FieldSpec,
    pub dmax: usize,
    pub summands: Vec<HomologySummand>,
}

impl GroupHomology {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim).collect()
    }
}

pub fn group_homology(
    group: &FiniteGroup,
    field: FieldSpec,
    dmax: usize,
    guard: u64,
) -> Result<GroupHomology, HomologyError> {
    check_guard(group, dmax, guard)?;
    let mut summands = Vec::with_capacity(dmax + 1);
    for k in 0..=dmax {
        let dim = bar_dim(group, k);
        let cycles = if k == 0 {
            Subspace::full(field, dim)
        } else if dim == 0 {
            Subspace::zero(field, 0)
        } else {
            Subspace::from_rows(&dense_diff(group, field, k)?.kernel())
        };
        let boundaries = streamed_boundaries(group, field, k);
        let picked = complement_row_indices(cycles.basis(), boundaries.basis());
        let reps = cycles.basis().submatrix_rows(&picked);
        summands.push(HomologySummand {
            dim: picked.len(),
            reps,
            cycles,
            boundaries,
        });
    }
    Ok(GroupHomology {
        group: group.clone(),
        field,
        dmax,
        summands,
    })
}

/// A formal sum of normalised bar words with field coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BarChain {
    pub degree: usize,
    /// sorted by word, no zero coefficients, no identity letters
    pub terms: Vec<(Vec<u32>, Scalar)>,
}

impl BarChain {
    pub fn zero(degree: usize) -> Self {
        BarChain { degree, terms: Vec::new() }
    }

    pub fn single(word: Vec<u32>, coeff: Scalar) -> Self {
        assert!(word.iter().all(|&g| g != 0), "bar words exclude the identity");
        BarChain { degree: word.len(), terms: vec![(word, coeff)] }
    }

    fn normalise(field: FieldSpec, degree: usize, mut terms: Vec<(Vec<u32>, Scalar)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Vec<u32>, Scalar)> = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            match out.last_mut() {
                Some((lw, lc)) if *lw == w => {
                    *lc = crate::linalg::scalar_add(field, lc, &c);
                }
                _ => out.push((w, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        BarChain { degree, terms: out }
    }

    /// Coordinates in the bar basis of `C_degree(group)`.
    pub fn to_vector(&self, group: &FiniteGroup, field: FieldSpec) -> MatrixF {
        let mut v = MatrixF::zero(field, 1, bar_dim(group, self.degree));
        for (w, c) in &self.terms {
            let idx = word_index(group, w);
            let cur = v.get(0, idx);
            v.set(0, idx, crate::linalg::scalar_add(field, &cur, c));
        }
        v
    }

    pub fn from_vector(group: &FiniteGroup, degree: usize, v: &MatrixF) -> Self {
        let mut terms = Vec::new();
        for j in 0..v.cols() {
            let c = v.get(0, j);
            if !c.is_zero() {
                terms.push((index_word(group, degree, j), c));
            }
        }
        BarChain { degree, terms }
    }

    /// Bar boundary of the chain.
    pub fn boundary(&self, group: &FiniteGroup, field: FieldSpec) -> BarChain {
        let mut terms = Vec::new();
        for (w, c) in &self.terms {
            for (target, sign) in boundary_terms(group, w) {
                terms.push((target, crate::linalg::scalar_mul_i64(field, c, sign)));
            }
        }
        BarChain::normalise(field, self.degree.saturating_sub(1), terms)
    }

    /// Push along a homomorphism, letter by letter; words that acquire an
    /// identity letter are degenerate and disappear.
    pub fn push_along(&self, hom: &Homomorphism, field: FieldSpec) -> BarChain {
        let mut terms = Vec::new();
        'outer: for (w, c) in &self.terms {
            let mut img = Vec::with_capacity(w.len());
            for &g in w {
                let h = hom.apply(g);
                if h == 0 {
                    continue 'outer;
                }
                img.push(h);
            }
            terms.push((img, c.clone()));
        }
        BarChain::normalise(field, self.degree, terms)
    }
}

/// Eilenberg-Zilber shuffle product: chains on `G` and `H` produce a chain
/// on `G x H` (indexing `(g, h) -> g * |H| + h`), summing interleavings
/// with the shuffle sign.
pub fn cross_shuffle(
    x: &BarChain,
    y: &BarChain,
    right_order: usize,
    field: FieldSpec,
) -> BarChain {
    let (k, l) = (x.degree, y.degree);
    let rn = right_order as u32;
    let mut terms = Vec::new();
    for (wx, cx) in &x.terms {
        for (wy, cy) in &y.terms {
            let coeff = crate::linalg::scalar_mul(field, cx, cy);
            if k == 0 || l == 0 {
                // single interleaving, sign +1
                let mut word: Vec<u32> = Vec::with_capacity(k + l);
                word.extend(wx.iter().map(|&g| g * rn));
                word.extend(wy.iter().copied());
                terms.push((word, coeff));
                continue;
            }
            for positions in (0..k + l).combinations(k) {
                // sign: (-1)^(number of (x-letter, y-letter) inversions)
                let inversions: usize = positions.iter().enumerate().map(|(i, &s)| s - i).sum();
                let sign: i64 = if inversions % 2 == 0 { 1 } else { -1 };
                let mut word = vec![0u32; k + l];
                for (i, &s) in positions.iter().enumerate() {
                    word[s] = wx[i] * rn;
                }
                let mut yi = 0;
                for slot in word.iter_mut() {
                    if *slot == 0 {
                        *slot = wy[yi];
                        yi += 1;
                    }
                }
                terms.push((word, crate::linalg::scalar_mul_i64(field, &coeff, sign)));
            }
        }
    }
    BarChain::normalise(field, k + l, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn bar_dims_z2() {
        // |G| - 1 = 1: one word per degree
        let z2 = FiniteGroup::cyclic(2);
        let cc = bar_complex(&z2, f2(), 3, DEFAULT_BAR_GUARD).unwrap();
        for k in 0..=4 {
            assert_eq!(cc.dim(k, 0), 1);
        }
        cc.validate().unwrap();
    }

    #[test]
    fn bar_dims_s3_and_trivial() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(bar_dim(&s3, 2), 25);
        let triv = FiniteGroup::symmetric(0).unwrap();
        assert_eq!(bar_dim(&triv, 0), 1);
        assert_eq!(bar_dim(&triv, 1), 0);
        let h = group_homology(&triv, f2(), 3, DEFAULT_BAR_GUARD).unwrap();
        assert_eq!(h.dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn homology_z2_and_z3() {
        let z2 = FiniteGroup::cyclic(2);
        let h = group_homology(&z2, f2(), 3, DEFAULT_BAR_GUARD).unwrap();
        assert_eq!(h.dims(), vec![1, 1, 1, 1]);
        let z3 = FiniteGroup::cyclic(3);
        let h = group_homology(&z3, f2(), 2, DEFAULT_BAR_GUARD).unwrap();
        assert_eq!(h.dims(), vec![1, 0, 0]);
        // |G| invertible in F: higher homology dies; over F_3 it survives
        let f3 = FieldSpec::prime(3).unwrap();
        let h = group_homology(&z3, f3, 2, DEFAULT_BAR_GUARD).unwrap();
        assert_eq!(h.dims(), vec![1, 1, 1]);
    }

    #[test]
    fn bar_squares_to_zero() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for field in [f2(), FieldSpec::prime(3).unwrap(), FieldSpec::rationals()] {
            let cc = bar_complex(&s3, field, 1, DEFAULT_BAR_GUARD).unwrap();
            cc.validate().unwrap();
        }
    }

    #[test]
    fn guard_rejects() {
        let g = FiniteGroup::general_linear(3, 2).unwrap();
        let err = group_homology(&g, f2(), 2, DEFAULT_BAR_GUARD).unwrap_err();
        assert!(matches!(err, HomologyError::GuardExceeded { .. }));
        assert!(err.to_string().contains("table"));
    }

    #[test]
    fn h1_equals_abelianisation_rank() {
        let groups = vec![
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::cyclic(6),
            FiniteGroup::general_linear(2, 2).unwrap(),
            FiniteGroup::general_linear(2, 3).unwrap(),
        ];
        for g in groups {
            for p in [2u32, 3, 5] {
                let field = FieldSpec::prime(p).unwrap();
                let h = group_homology(&g, field, 1, DEFAULT_BAR_GUARD).unwrap();
                assert_eq!(
                    h.dims()[1],
                    g.abelianization_rank_mod(p),
                    "H_1({}; F_{p})",
                    g.label()
                );
            }
        }
    }

    #[test]
    fn shuffle_two_letters() {
        // [g] x [h] = [(g,e)|(e,h)] - [(e,h)|(g,e)]
        let x = BarChain::single(vec![1], Scalar::Rat(num::One::one()));
        let y = BarChain::single(vec![2], Scalar::Rat(num::One::one()));
        let out = cross_shuffle(&x, &y, 5, FieldSpec::rationals());
        assert_eq!(out.terms.len(), 2);
        // words over the product: (1*5, 2) and (2, 1*5)
        let w1 = vec![5u32, 2];
        let w2 = vec![2u32, 5];
        let c1 = out.terms.iter().find(|(w, _)| *w == w1).unwrap();
        let c2 = out.terms.iter().find(|(w, _)| *w == w2).unwrap();
        assert_eq!(c1.1, Scalar::Rat(num::One::one()));
        assert_eq!(c2.1, Scalar::Rat(-num::rational::BigRational::from_integer(1.into())));
    }

    #[test]
    fn shuffle_with_empty_word() {
        let x = BarChain::single(vec![3], Scalar::Mod(1));
        let empty = BarChain::single(vec![], Scalar::Mod(1));
        // [g] x [] -> [(g,e)]
        let out = cross_shuffle(&x, &empty, 4, f2());
        assert_eq!(out.terms, vec![(vec![12u32], Scalar::Mod(1))]);
        // [] x y -> y embedded
        let out = cross_shuffle(&empty, &x, 4, f2());
        assert_eq!(out.terms, vec![(vec![3u32], Scalar::Mod(1))]);
    }

    #[test]
    fn shuffle_is_chain_map() {
        // ∂(x × y) = ∂x × y + (-1)^k x × ∂y, exactly, over Q
        let field = FieldSpec::rationals();
        let g = FiniteGroup::symmetric(3).unwrap();
        let h = FiniteGroup::cyclic(2);
        let prod = FiniteGroup::direct_product(&g, &h);
        let one = || Scalar::Rat(num::One::one());
        let x = BarChain::normalise(
            field,
            2,
            vec![(vec![1, 2], one()), (vec![3, 3], one())],
        );
        let y = BarChain::single(vec![1], one());
        let lhs = cross_shuffle(&x, &y, h.order(), field).boundary(&prod, field);
        let dx_y = cross_shuffle(&x.boundary(&g, field), &y, h.order(), field);
        let x_dy = cross_shuffle(&x, &y.boundary(&h, field), h.order(), field);
        // (-1)^k with k = 2: plus
        let mut rhs_terms = dx_y.terms.clone();
        rhs_terms.extend(x_dy.terms.clone());
        let rhs = BarChain::normalise(field, 2, rhs_terms);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kuenneth_z2_z2() {
        let z2 = FiniteGroup::cyclic(2);
        let v4 = FiniteGroup::direct_product(&z2, &z2);
        let h = group_homology(&v4, f2(), 2, DEFAULT_BAR_GUARD).unwrap();
        assert_eq!(h.dims(), vec![1, 2, 3]);
    }
}

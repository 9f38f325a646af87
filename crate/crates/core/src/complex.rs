//! Bigraded chain complexes of finite-dimensional vector spaces.
//!
//! Terms are indexed by bidegrees `(b, d)`: the homological grading `b` is
//! lowered by the differential, the topological grading `d` is preserved.
//! Support is stored sparsely. Homology comes with canonical
//! representatives (echelon lifts of a complement basis), so downstream
//! maps between homology groups have reproducible coordinates.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::linalg::{express_modulo, FieldSpec, MatrixF, Scalar, Subspace};

#[derive(Debug, Clone, thiserror::Error)]
pub enum ComplexError {
    #[error("differential at ({b},{d}) has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    DiffShape {
        b: usize,
        d: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("d∘d != 0 at bidegree ({b},{d})")]
    SquareNotZero { b: usize, d: usize },
    #[error("stage {stage} is not closed under the differential at bidegree ({b},{d})")]
    StageNotClosed { stage: usize, b: usize, d: usize },
    #[error("stage {stage} does not contain stage {prev} at bidegree ({b},{d})")]
    StagesNotNested { stage: usize, prev: usize, b: usize, d: usize },
    #[error("last filtration stage differs from the total complex at bidegree ({b},{d})")]
    LastStageNotTotal { b: usize, d: usize },
    #[error("field mismatch")]
    FieldMismatch,
}

#[derive(Clone, Debug, Default)]
pub struct Term {
    pub dim: usize,
    pub labels: Option<Vec<String>>,
}

/// Chain complex of vector spaces graded by `(b, d)`, differential of
/// bidegree `(-1, 0)`.
#[derive(Clone, Debug)]
pub struct BigradedChainComplex {
    field: FieldSpec,
    terms: BTreeMap<(usize, usize), Term>,
    diffs: BTreeMap<(usize, usize), MatrixF>,
}

impl BigradedChainComplex {
    pub fn new(field: FieldSpec) -> Self {
        BigradedChainComplex {
            field,
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn set_term(&mut self, b: usize, d: usize, dim: usize, labels: Option<Vec<String>>) {
        if dim == 0 {
            return;
        }
        if let Some(l) = &labels {
            assert_eq!(l.len(), dim);
        }
        self.terms.insert((b, d), Term { dim, labels });
    }

    /// Install the differential from `(b, d)` to `(b-1, d)`;
    /// shape `dim(b-1,d) x dim(b,d)`.
    pub fn set_diff(&mut self, b: usize, d: usize, m: MatrixF) {
        assert!(b >= 1);
        assert_eq!(m.field(), self.field);
        if m.rows() == 0 || m.cols() == 0 {
            return;
        }
        self.diffs.insert((b, d), m);
    }

    pub fn dim(&self, b: usize, d: usize) -> usize {
        self.terms.get(&(b, d)).map_or(0, |t| t.dim)
    }

    pub fn labels(&self, b: usize, d: usize) -> Option<&[String]> {
        self.terms.get(&(b, d)).and_then(|t| t.labels.as_deref())
    }

    /// Differential out of `(b, d)`, materialising zeros when absent.
    pub fn diff(&self, b: usize, d: usize) -> MatrixF {
        if b == 0 {
            return MatrixF::zero(self.field, 0, self.dim(0, d));
        }
        match self.diffs.get(&(b, d)) {
            Some(m) => m.clone(),
            None => MatrixF::zero(self.field, self.dim(b - 1, d), self.dim(b, d)),
        }
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms.keys().copied()
    }

    pub fn max_b(&self) -> usize {
        self.terms.keys().map(|&(b, _)| b).max().unwrap_or(0)
    }

    pub fn max_d(&self) -> usize {
        self.terms.keys().map(|&(_, d)| d).max().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.terms.values().map(|t| t.dim).sum()
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        for (&(b, d), m) in &self.diffs {
            let want_rows = self.dim(b - 1, d);
            let want_cols = self.dim(b, d);
            if m.rows() != want_rows || m.cols() != want_cols {
                return Err(ComplexError::DiffShape {
                    b,
                    d,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        for &(b, d) in self.diffs.keys() {
            if b >= 2 && self.diffs.contains_key(&(b - 1, d)) {
                let square = self.diff(b - 1, d).mul(&self.diff(b, d));
                if !square.is_zero() {
                    return Err(ComplexError::SquareNotZero { b, d });
                }
            }
        }
        Ok(())
    }

    /// Homology at one bidegree with canonical representatives.
    pub fn homology_at(&self, b: usize, d: usize) -> HomologySummand {
        let cycles = if b == 0 {
            Subspace::full(self.field, self.dim(0, d))
        } else {
            Subspace::from_rows(&self.diff(b, d).kernel())
        };
        let boundaries = Subspace::from_rows(&self.diff(b + 1, d).transpose());
        let picked = crate::linalg::complement_row_indices(cycles.basis(), boundaries.basis());
        let reps = cycles.basis().submatrix_rows(&picked);
        HomologySummand {
            dim: picked.len(),
            reps,
            cycles,
            boundaries,
        }
    }

    /// Homology dimension only, via ranks; avoids building kernel bases,
    /// which matters for the large order-complex boundary matrices.
    pub fn homology_dim_at(&self, b: usize, d: usize) -> usize {
        let dim = self.dim(b, d);
        if dim == 0 {
            return 0;
        }
        let rank_out = if b == 0 { 0 } else { self.diff(b, d).rank() };
        let rank_in = self.diff(b + 1, d).rank();
        dim - rank_out - rank_in
    }

    /// Homology at every supported bidegree (parallel, deterministic).
    pub fn homology(&self) -> BTreeMap<(usize, usize), HomologySummand> {
        let keys: Vec<(usize, usize)> = self.terms.keys().copied().collect();
        keys.par_iter()
            .map(|&(b, d)| ((b, d), self.homology_at(b, d)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }

    /// Tensor product with Koszul signs on the homological grading:
    /// `d(x ⊗ y) = dx ⊗ y + (-1)^{b_1} x ⊗ dy`.
    pub fn tensor(&self, other: &BigradedChainComplex) -> (BigradedChainComplex, TensorIndex) {
        assert_eq!(self.field, other.field, "field mismatch in tensor product");
        let mut out = BigradedChainComplex::new(self.field);
        let mut index = TensorIndex { summands: BTreeMap::new() };

        // collect summand layout per (b, d)
        let mut layout: BTreeMap<(usize, usize), Vec<TensorSummand>> = BTreeMap::new();
        for (b1, d1) in self.bidegrees() {
            for (b2, d2) in other.bidegrees() {
                let (b, d) = (b1 + b2, d1 + d2);
                layout.entry((b, d)).or_default().push(TensorSummand {
                    left: (b1, d1),
                    right: (b2, d2),
                    offset: 0,
                    dim: self.dim(b1, d1) * other.dim(b2, d2),
                });
            }
        }
        for summands in layout.values_mut() {
            summands.sort_by_key(|s| (s.left, s.right));
            let mut off = 0;
            for s in summands.iter_mut() {
                s.offset = off;
                off += s.dim;
            }
        }
        for (&(b, d), summands) in &layout {
            let dim: usize = summands.iter().map(|s| s.dim).sum();
            let labels = self.build_tensor_labels(other, summands);
            out.set_term(b, d, dim, labels);
        }
        // differentials
        for (&(b, d), summands) in &layout {
            if b == 0 {
                continue;
            }
            let rows = layout.get(&(b - 1, d)).map_or(0, |s| s.iter().map(|x| x.dim).sum());
            let cols: usize = summands.iter().map(|s| s.dim).sum();
            if rows == 0 || cols == 0 {
                continue;
            }
            let target = &layout[&(b - 1, d)];
            let mut m = MatrixF::zero(self.field, rows, cols);
            for s in summands {
                let (b1, d1) = s.left;
                let (b2, d2) = s.right;
                let (dim_l, dim_r) = (self.dim(b1, d1), other.dim(b2, d2));
                // dx ⊗ y
                if b1 >= 1 && self.dim(b1 - 1, d1) > 0 {
                    if let Some(t) = target.iter().find(|t| t.left == (b1 - 1, d1) && t.right == (b2, d2)) {
                        let dl = self.diff(b1, d1);
                        for i in 0..dim_l {
                            for j in 0..dim_r {
                                for i2 in 0..self.dim(b1 - 1, d1) {
                                    let v = dl.get(i2, i);
                                    if !v.is_zero() {
                                        m.set(t.offset + i2 * dim_r + j, s.offset + i * dim_r + j, v);
                                    }
                                }
                            }
                        }
                    }
                }
                // (-1)^{b1} x ⊗ dy
                if b2 >= 1 && other.dim(b2 - 1, d2) > 0 {
                    if let Some(t) = target.iter().find(|t| t.left == (b1, d1) && t.right == (b2 - 1, d2)) {
                        let dr = other.diff(b2, d2);
                        let sign: i64 = if b1 % 2 == 0 { 1 } else { -1 };
                        let dim_r2 = other.dim(b2 - 1, d2);
                        for i in 0..dim_l {
                            for j in 0..dim_r {
                                for j2 in 0..dim_r2 {
                                    let v = dr.get(j2, j);
                                    if !v.is_zero() {
                                        let signed = crate::linalg::scalar_mul_i64(self.field, &v, sign);
                                        m.set(t.offset + i * dim_r2 + j2, s.offset + i * dim_r + j, signed);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            out.set_diff(b, d, m);
        }
        index.summands = layout;
        (out, index)
    }

    fn build_tensor_labels(
        &self,
        other: &BigradedChainComplex,
        summands: &[TensorSummand],
    ) -> Option<Vec<String>> {
        let mut labels = Vec::new();
        for s in summands {
            let (b1, d1) = s.left;
            let (b2, d2) = s.right;
            let ll = self.labels(b1, d1);
            let rl = other.labels(b2, d2);
            for i in 0..self.dim(b1, d1) {
                for j in 0..other.dim(b2, d2) {
                    let l = ll.map_or_else(|| format!("{b1},{d1}:{i}"), |v| v[i].clone());
                    let r = rl.map_or_else(|| format!("{b2},{d2}:{j}"), |v| v[j].clone());
                    labels.push(format!("{l}(x){r}"));
                }
            }
        }
        Some(labels)
    }

    /// Homological suspension: shift `b` by one, same differentials.
    pub fn suspend(&self) -> BigradedChainComplex {
        let mut out = BigradedChainComplex::new(self.field);
        for (&(b, d), t) in &self.terms {
            out.set_term(b + 1, d, t.dim, t.labels.clone());
        }
        for (&(b, d), m) in &self.diffs {
            out.set_diff(b + 1, d, m.clone());
        }
        out
    }

    /// The part of the complex in one topological degree, as plain arrays
    /// indexed by homological degree.
    pub fn degree_slice(&self, d: usize) -> DegreeSlice {
        let bmax = self
            .terms
            .keys()
            .filter(|&&(_, td)| td == d)
            .map(|&(b, _)| b)
            .max();
        let bmax = match bmax {
            Some(b) => b,
            None => {
                return DegreeSlice { dims: vec![], diffs: vec![] };
            }
        };
        let dims: Vec<usize> = (0..=bmax).map(|b| self.dim(b, d)).collect();
        let diffs: Vec<MatrixF> = (0..=bmax).map(|b| self.diff(b, d)).collect();
        DegreeSlice { dims, diffs }
    }
}

/// One topological degree of a bigraded complex: `dims[b]` and the maps
/// `diffs[b]: C_b -> C_{b-1}` (with `diffs[0]` the zero map out of `C_0`).
pub struct DegreeSlice {
    pub dims: Vec<usize>,
    pub diffs: Vec<MatrixF>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSummand {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub offset: usize,
    pub dim: usize,
}

/// Layout of a tensor product: which `(left, right)` bidegree pair each
/// block of coordinates came from.
pub struct TensorIndex {
    pub summands: BTreeMap<(usize, usize), Vec<TensorSummand>>,
}

#[derive(Clone, Debug)]
pub struct HomologySummand {
    pub dim: usize,
    /// Canonical representative cycles, one per row.
    pub reps: MatrixF,
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

impl HomologySummand {
    /// Subspace used as the "U" argument when expressing classes.
    pub fn rep_space(&self) -> Subspace {
        Subspace::from_rows(&self.reps)
    }

    /// Coordinates of a cycle in this homology basis, if it is a cycle.
    pub fn class_of(&self, cycle: &MatrixF) -> Option<Vec<Scalar>> {
        if !self.cycles.contains_row(cycle) {
            return None;
        }
        express_modulo(cycle, &Subspace::from_rows(&self.reps), &self.boundaries)
    }
}

/// A degreewise linear map of bigraded complexes.
pub struct ChainMap<'a> {
    pub source: &'a BigradedChainComplex,
    pub target: &'a BigradedChainComplex,
    /// block at (b,d): matrix `target_dim x source_dim`
    pub blocks: BTreeMap<(usize, usize), MatrixF>,
}

impl ChainMap<'_> {
    pub fn block(&self, b: usize, d: usize) -> MatrixF {
        match self.blocks.get(&(b, d)) {
            Some(m) => m.clone(),
            None => MatrixF::zero(self.source.field(), self.target.dim(b, d), self.source.dim(b, d)),
        }
    }

    /// Does the square with the differentials commute at every bidegree?
    pub fn is_chain_map(&self) -> bool {
        let mut keys: Vec<(usize, usize)> = self.source.bidegrees().collect();
        keys.extend(self.target.bidegrees());
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().all(|(b, d)| {
            if b == 0 {
                return true;
            }
            let lhs = self.block(b - 1, d).mul(&self.source.diff(b, d));
            let rhs = self.target.diff(b, d).mul(&self.block(b, d));
            lhs == rhs
        })
    }

    pub fn is_iso_per_bidegree(&self) -> bool {
        let mut keys: Vec<(usize, usize)> = self.source.bidegrees().collect();
        keys.extend(self.target.bidegrees());
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().all(|(b, d)| {
            let (sd, td) = (self.source.dim(b, d), self.target.dim(b, d));
            sd == td && (sd == 0 || self.block(b, d).rank() == sd)
        })
    }
}

/// Nested differential-closed stages `F_0 ⊆ ... ⊆ F_k = total`.
#[derive(Debug)]
pub struct FilteredComplex {
    total: BigradedChainComplex,
    stages: Vec<BTreeMap<(usize, usize), Subspace>>,
}

impl FilteredComplex {
    /// Build from generating rows per stage per bidegree; verifies
    /// monotonicity, closure under the differential, and that the last
    /// stage is the whole complex.
    pub fn build(
        total: BigradedChainComplex,
        stage_spans: Vec<BTreeMap<(usize, usize), MatrixF>>,
    ) -> Result<FilteredComplex, ComplexError> {
        let field = total.field();
        let mut stages = Vec::with_capacity(stage_spans.len());
        for spans in &stage_spans {
            let mut stage: BTreeMap<(usize, usize), Subspace> = BTreeMap::new();
            for (b, d) in total.bidegrees() {
                let sub = match spans.get(&(b, d)) {
                    Some(rows) => Subspace::from_rows(rows),
                    None => Subspace::zero(field, total.dim(b, d)),
                };
                stage.insert((b, d), sub);
            }
            stages.push(stage);
        }
        let fc = FilteredComplex { total, stages };
        fc.validate()?;
        Ok(fc)
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        let last = self.stages.len() - 1;
        for (s, stage) in self.stages.iter().enumerate() {
            for (&(b, d), sub) in stage {
                // closed under the differential
                if b >= 1 && sub.dim() > 0 {
                    let image = sub.image_under(&self.total.diff(b, d));
                    let prev = &stage[&(b - 1, d)];
                    if !prev.contains(&image) {
                        return Err(ComplexError::StageNotClosed { stage: s, b, d });
                    }
                }
                if s > 0 {
                    let below = &self.stages[s - 1][&(b, d)];
                    if !sub.contains(below) {
                        return Err(ComplexError::StagesNotNested { stage: s, prev: s - 1, b, d });
                    }
                }
                if s == last && sub.dim() != self.total.dim(b, d) {
                    return Err(ComplexError::LastStageNotTotal { b, d });
                }
            }
        }
        Ok(())
    }

    pub fn total(&self) -> &BigradedChainComplex {
        &self.total
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn stage(&self, s: usize, b: usize, d: usize) -> Subspace {
        self.stages[s]
            .get(&(b, d))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.total.field(), self.total.dim(b, d)))
    }
}

/// Quotient of a complex by a differential-closed subspace per bidegree.
/// The quotient basis is the set of non-pivot coordinates of the
/// subspace's rref, which makes it canonical.
pub struct QuotientComplex {
    pub complex: BigradedChainComplex,
    /// per bidegree: the `dim_quotient x dim_total` projection matrix
    pub projections: BTreeMap<(usize, usize), MatrixF>,
    /// per bidegree: the total-space coordinates kept (non-pivot columns)
    pub kept: BTreeMap<(usize, usize), Vec<usize>>,
}

pub fn quotient_complex(
    total: &BigradedChainComplex,
    sub: &BTreeMap<(usize, usize), Subspace>,
) -> QuotientComplex {
    let field = total.field();
    let mut projections = BTreeMap::new();
    let mut kept_map = BTreeMap::new();
    let mut out = BigradedChainComplex::new(field);
    for (b, d) in total.bidegrees() {
        let n = total.dim(b, d);
        let zero = Subspace::zero(field, n);
        let s = sub.get(&(b, d)).unwrap_or(&zero);
        let (basis, pivots) = s.basis().rref();
        let kept: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        // projection: reduce by the subspace basis, then restrict
        let mut proj = MatrixF::zero(field, kept.len(), n);
        for (qi, &c) in kept.iter().enumerate() {
            proj.set_i64(qi, c, 1);
        }
        for (prow, &pcol) in pivots.iter().enumerate() {
            // e_{pcol} maps to minus the complement part of the basis row
            for (qi, &c) in kept.iter().enumerate() {
                let v = basis.get(prow, c);
                if !v.is_zero() {
                    proj.set(qi, pcol, crate::linalg::scalar_neg(field, &v));
                }
            }
        }
        let labels = total.labels(b, d).map(|l| kept.iter().map(|&c| l[c].clone()).collect());
        out.set_term(b, d, kept.len(), labels);
        projections.insert((b, d), proj);
        kept_map.insert((b, d), kept);
    }
    for (b, d) in total.bidegrees() {
        if b == 0 || out.dim(b, d) == 0 || out.dim(b - 1, d) == 0 {
            continue;
        }
        // induced differential: project(d(e_kept))
        let dtot = total.diff(b, d);
        let proj_t = &projections[&(b - 1, d)];
        let incl: Vec<usize> = kept_map[&(b, d)].clone();
        let cols = incl.len();
        let mut m = MatrixF::zero(field, out.dim(b - 1, d), cols);
        for (j, &c) in incl.iter().enumerate() {
            // d(e_c) then project
            let col = column_of(&dtot, c);
            let projected = proj_t.mul(&col);
            for i in 0..projected.rows() {
                m.set(i, j, projected.get(i, 0));
            }
        }
        out.set_diff(b, d, m);
    }
    QuotientComplex {
        complex: out,
        projections,
        kept: kept_map,
    }
}

fn column_of(m: &MatrixF, c: usize) -> MatrixF {
    let mut col = MatrixF::zero(m.field(), m.rows(), 1);
    for i in 0..m.rows() {
        col.set(i, 0, m.get(i, c));
    }
    col
}

/// Subcomplex spanned by a differential-closed subspace per bidegree,
/// with the induced differential written in the subspace bases.
pub fn subcomplex(
    total: &BigradedChainComplex,
    sub: &BTreeMap<(usize, usize), Subspace>,
) -> BigradedChainComplex {
    let field = total.field();
    let mut out = BigradedChainComplex::new(field);
    for (b, d) in total.bidegrees() {
        if let Some(s) = sub.get(&(b, d)) {
            out.set_term(b, d, s.dim(), None);
        }
    }
    for (b, d) in total.bidegrees() {
        if b == 0 {
            continue;
        }
        let (Some(s), Some(t)) = (sub.get(&(b, d)), sub.get(&(b - 1, d))) else {
            continue;
        };
        if s.dim() == 0 || t.dim() == 0 {
            continue;
        }
        let image = s.basis().mul(&total.diff(b, d).transpose());
        let coeffs = crate::linalg::solve_rowspace(t.basis(), &image)
            .expect("subspace is closed under the differential");
        out.set_diff(b, d, coeffs.transpose());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    /// F <- F with the zero map: homology (1, 1).
    fn two_term_zero(field: FieldSpec) -> BigradedChainComplex {
        let mut c = BigradedChainComplex::new(field);
        c.set_term(0, 0, 1, None);
        c.set_term(1, 0, 1, None);
        c.set_diff(1, 0, MatrixF::zero(field, 1, 1));
        c
    }

    #[test]
    fn homology_of_zero_and_identity_maps() {
        let c = two_term_zero(f2());
        let h = c.homology();
        assert_eq!(h[&(0, 0)].dim, 1);
        assert_eq!(h[&(1, 0)].dim, 1);

        let mut exact = BigradedChainComplex::new(f2());
        exact.set_term(0, 0, 1, None);
        exact.set_term(1, 0, 1, None);
        exact.set_diff(1, 0, MatrixF::identity(f2(), 1));
        let h = exact.homology();
        assert_eq!(h[&(0, 0)].dim, 0);
        assert_eq!(h[&(1, 0)].dim, 0);
    }

    #[test]
    fn three_term_exact_row() {
        // F <- F^2 <- F with maps [1 1] and (1, -1): all homology zero
        let field = f2();
        let mut c = BigradedChainComplex::new(field);
        c.set_term(0, 0, 1, None);
        c.set_term(1, 0, 2, None);
        c.set_term(2, 0, 1, None);
        c.set_diff(1, 0, MatrixF::from_rows(field, 2, &[vec![1, 1]]));
        c.set_diff(2, 0, MatrixF::from_fn(field, 2, 1, |i, _| if i == 0 { 1 } else { -1 }));
        c.validate().unwrap();
        let h = c.homology();
        assert!(h.values().all(|s| s.dim == 0));
    }

    #[test]
    fn tensor_unit_and_square() {
        let field = f2();
        let c = two_term_zero(field);
        let mut point = BigradedChainComplex::new(field);
        point.set_term(0, 0, 1, None);
        let (t, _) = c.tensor(&point);
        assert_eq!(t.dim(0, 0), 1);
        assert_eq!(t.dim(1, 0), 1);
        // two copies of (F <- F, zero): homology dims 1,2,1 over total b
        let (sq, _) = c.tensor(&c);
        let h = sq.homology();
        assert_eq!(h[&(0, 0)].dim, 1);
        assert_eq!(h[&(1, 0)].dim, 2);
        assert_eq!(h[&(2, 0)].dim, 1);
    }

    #[test]
    fn tensor_square_is_complex_with_signs() {
        // over Q with a nonzero differential, d∘d = 0 needs the Koszul sign
        let field = FieldSpec::rationals();
        let mut c = BigradedChainComplex::new(field);
        c.set_term(0, 0, 1, None);
        c.set_term(1, 0, 1, None);
        c.set_diff(1, 0, MatrixF::identity(field, 1));
        let (sq, _) = c.tensor(&c);
        sq.validate().unwrap();
        let h = sq.homology();
        assert!(h.values().all(|s| s.dim == 0));
    }

    #[test]
    fn suspension_shifts() {
        let c = two_term_zero(f2());
        let s = c.suspend();
        assert_eq!(s.dim(0, 0), 0);
        assert_eq!(s.dim(1, 0), 1);
        assert_eq!(s.dim(2, 0), 1);
        let ss = s.suspend();
        assert_eq!(ss.dim(2, 0), 1);
        assert_eq!(ss.dim(3, 0), 1);
        let h = s.homology();
        assert_eq!(h[&(1, 0)].dim, 1);
        assert_eq!(h[&(2, 0)].dim, 1);
    }

    #[test]
    fn filtration_build_and_failure() {
        let field = f2();
        let mut c = BigradedChainComplex::new(field);
        c.set_term(0, 0, 1, None);
        c.set_term(1, 0, 1, None);
        c.set_diff(1, 0, MatrixF::identity(field, 1));
        // one-stage filtration: just the total
        let mut span = BTreeMap::new();
        span.insert((0, 0), MatrixF::identity(field, 1));
        span.insert((1, 0), MatrixF::identity(field, 1));
        assert!(FilteredComplex::build(c.clone(), vec![span.clone()]).is_ok());
        // stage containing only the top term is not closed under d
        let mut bad = BTreeMap::new();
        bad.insert((1, 0), MatrixF::identity(field, 1));
        let err = FilteredComplex::build(c, vec![bad, span]).unwrap_err();
        assert!(matches!(err, ComplexError::StageNotClosed { stage: 0, b: 1, d: 0 }));
    }

    #[test]
    fn euler_characteristic_bookkeeping() {
        // chi from dims equals chi from homology, per topological degree
        let field = FieldSpec::prime(3).unwrap();
        let mut c = BigradedChainComplex::new(field);
        c.set_term(0, 0, 3, None);
        c.set_term(1, 0, 5, None);
        c.set_term(2, 0, 2, None);
        c.set_diff(1, 0, MatrixF::from_fn(field, 3, 5, |i, j| ((i + j) % 3) as i64));
        // build a d2 with d1*d2 = 0: columns from the kernel of d1
        let k = c.diff(1, 0).kernel();
        let d2 = k.submatrix_rows(&[0, 1]).transpose();
        c.set_diff(2, 0, d2);
        c.validate().unwrap();
        let h = c.homology();
        let chi_dims = 3i64 - 5 + 2;
        let chi_h = h[&(0, 0)].dim as i64 - h[&(1, 0)].dim as i64 + h[&(2, 0)].dim as i64;
        assert_eq!(chi_dims, chi_h);
    }
}

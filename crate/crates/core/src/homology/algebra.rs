//! The charge-graded homology algebra of a group family.
//!
//! `A_{p,d} = H_d(G_p; F)` for charges `p <= n_max` and topological
//! degrees `d <= d_max`, with the product induced by the family
//! multiplication: shuffle cross product, push along the product map,
//! then express against the stored homology representatives. The
//! distinguished element `sigma` spans `A_{1,0}`; left multiplication by
//! `sigma` is the stabilisation map.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::family::GroupFamily;
use crate::linalg::{express_modulo, FieldSpec, MatrixF, Scalar, Subspace};

use super::bar::{cross_shuffle, group_homology, BarChain, GroupHomology, HomologyError};

#[derive(Debug, Clone, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("product of cycles is not a cycle at charges ({p},{q}), degrees ({d1},{d2}): implementation bug")]
    NonCycleProduct { p: usize, q: usize, d1: usize, d2: usize },
    #[error("algebra data missing at charge {charge}, degree {degree}")]
    MissingData { charge: usize, degree: usize },
    #[error("algebra invariant violated: {0}")]
    Invariant(String),
}

/// `A = ⊕_p H_*(G_p; F)` truncated to a finite window of charges and
/// degrees, as bases plus structure constants.
#[derive(Clone, Debug)]
pub struct ChargedGradedAlgebra {
    pub field: FieldSpec,
    pub n_max: usize,
    pub d_max: usize,
    dims: BTreeMap<(usize, usize), usize>,
    names: BTreeMap<(usize, usize), Vec<String>>,
    /// ((p,d1),(q,d2)) -> matrix (dimL*dimR) x dim(p+q, d1+d2);
    /// row i*dimR + j holds the coordinates of `a_i * b_j`.
    mult: BTreeMap<((usize, usize), (usize, usize)), MatrixF>,
    /// named distinguished classes, as coordinate vectors
    named: BTreeMap<String, NamedClass>,
    pub provenance: Option<String>,
}

#[derive(Clone, Debug)]
pub struct NamedClass {
    pub charge: usize,
    pub degree: usize,
    pub coords: MatrixF,
}

impl ChargedGradedAlgebra {
    pub fn dim(&self, p: usize, d: usize) -> usize {
        self.dims.get(&(p, d)).copied().unwrap_or(0)
    }

    /// Is the bidegree inside the data window?
    pub fn in_window(&self, p: usize, d: usize) -> bool {
        p <= self.n_max && d <= self.d_max
    }

    pub fn basis_names(&self, p: usize, d: usize) -> &[String] {
        self.names.get(&(p, d)).map_or(&[], |v| v.as_slice())
    }

    pub fn named(&self) -> &BTreeMap<String, NamedClass> {
        &self.named
    }

    /// Structure-constant block; `None` when outside the window.
    pub fn mult_block(&self, left: (usize, usize), right: (usize, usize)) -> Option<MatrixF> {
        let (p, d1) = left;
        let (q, d2) = right;
        if !self.in_window(p + q, d1 + d2) {
            return None;
        }
        let rows = self.dim(p, d1) * self.dim(q, d2);
        let cols = self.dim(p + q, d1 + d2);
        Some(match self.mult.get(&(left, right)) {
            Some(m) => m.clone(),
            None => MatrixF::zero(self.field, rows, cols),
        })
    }

    /// Coordinates of `x * y`.
    pub fn multiply(
        &self,
        left: (usize, usize),
        x: &MatrixF,
        right: (usize, usize),
        y: &MatrixF,
    ) -> Option<MatrixF> {
        let block = self.mult_block(left, right)?;
        let dim_r = self.dim(right.0, right.1);
        let cols = self.dim(left.0 + right.0, left.1 + right.1);
        let mut out = MatrixF::zero(self.field, 1, cols);
        for i in 0..self.dim(left.0, left.1) {
            let xi = x.get(0, i);
            if xi.is_zero() {
                continue;
            }
            for j in 0..dim_r {
                let yj = y.get(0, j);
                if yj.is_zero() {
                    continue;
                }
                let c = crate::linalg::scalar_mul(self.field, &xi, &yj);
                for k in 0..cols {
                    let b = block.get(i * dim_r + j, k);
                    if !b.is_zero() {
                        let cur = out.get(0, k);
                        let add = crate::linalg::scalar_mul(self.field, &c, &b);
                        out.set(0, k, crate::linalg::scalar_add(self.field, &cur, &add));
                    }
                }
            }
        }
        Some(out)
    }

    /// Matrix of the stabilisation map `s(a) = sigma * a` from
    /// `A_{n-1,d}` to `A_{n,d}`; columns indexed by the source basis.
    pub fn stabilization_matrix(&self, n: usize, d: usize) -> Result<MatrixF, AlgebraError> {
        if n < 1 || !self.in_window(n, d) {
            return Err(AlgebraError::MissingData { charge: n, degree: d });
        }
        let block = self
            .mult_block((1, 0), (n - 1, d))
            .ok_or(AlgebraError::MissingData { charge: n, degree: d })?;
        // sigma is the single basis element of A_{1,0}; row j of the block
        // is sigma * a_j
        Ok(block.transpose())
    }

    /// Image of the iterated product map `W ⊗ A_{2,1}^{⊗ (k)} -> A_*`,
    /// starting from the subspace `W` of `A_{start}`.
    pub fn iterated_h21_image(
        &self,
        start: (usize, usize),
        w: &Subspace,
        k: usize,
    ) -> Option<Subspace> {
        let mut charge = start.0;
        let mut degree = start.1;
        let mut cur = w.clone();
        for _ in 0..k {
            let dim21 = self.dim(2, 1);
            let target = (charge + 2, degree + 1);
            if !self.in_window(target.0, target.1) {
                return None;
            }
            let mut rows = MatrixF::zero(self.field, 0, self.dim(target.0, target.1));
            for i in 0..cur.dim() {
                let x = cur.basis().row_matrix(i);
                for j in 0..dim21 {
                    let mut y = MatrixF::zero(self.field, 1, dim21);
                    y.set_i64(0, j, 1);
                    let prod = self.multiply((charge, degree), &x, (2, 1), &y)?;
                    rows = rows.vstack(&prod);
                }
            }
            cur = Subspace::from_rows(&rows);
            charge = target.0;
            degree = target.1;
        }
        Some(cur)
    }

    /// Full invariant check: gradings of the unit and of sigma,
    /// unit action, associativity and graded commutativity on the window.
    pub fn verify_invariants(&self) -> Result<(), AlgebraError> {
        let fail = |m: String| Err(AlgebraError::Invariant(m));
        if self.dim(0, 0) != 1 {
            return fail("A_{0,0} must be one-dimensional".into());
        }
        for d in 1..=self.d_max {
            if self.dim(0, d) != 0 {
                return fail(format!("A_0 must vanish in positive degree, found dim {} at degree {d}", self.dim(0, d)));
            }
        }
        if self.n_max >= 1 && self.dim(1, 0) != 1 {
            return fail("A_{1,0} must be one-dimensional (spanned by sigma)".into());
        }
        // unit acts as identity on both sides
        for (&(p, d), &dim) in &self.dims {
            if dim == 0 {
                continue;
            }
            let left = self.mult_block((0, 0), (p, d)).unwrap();
            let right = self.mult_block((p, d), (0, 0)).unwrap();
            let id = MatrixF::identity(self.field, dim);
            if left != id || right != id {
                return fail(format!("unit does not act as identity at ({p},{d})"));
            }
        }
        // associativity: (ab)c = a(bc) whenever the triple stays in window
        let keys: Vec<(usize, usize)> = self.dims.keys().copied().collect();
        let mut triples: Vec<((usize, usize), (usize, usize), (usize, usize))> = Vec::new();
        for &a in &keys {
            for &b in &keys {
                for &c in &keys {
                    if a.0 + b.0 + c.0 <= self.n_max && a.1 + b.1 + c.1 <= self.d_max {
                        triples.push((a, b, c));
                    }
                }
            }
        }
        let violation = triples.par_iter().find_map_any(|&(a, b, c)| {
            let (pa, da) = a;
            let (pb, db) = b;
            let (pc, dc) = c;
            for i in 0..self.dim(pa, da) {
                for j in 0..self.dim(pb, db) {
                    for k in 0..self.dim(pc, dc) {
                        let x = unit_vector(self.field, self.dim(pa, da), i);
                        let y = unit_vector(self.field, self.dim(pb, db), j);
                        let z = unit_vector(self.field, self.dim(pc, dc), k);
                        let xy = self.multiply(a, &x, b, &y).unwrap();
                        let lhs = self
                            .multiply((pa + pb, da + db), &xy, c, &z)
                            .unwrap();
                        let yz = self.multiply(b, &y, c, &z).unwrap();
                        let rhs = self
                            .multiply(a, &x, (pb + pc, db + dc), &yz)
                            .unwrap();
                        if lhs != rhs {
                            return Some(format!(
                                "associativity fails at {a:?} x {b:?} x {c:?}, basis ({i},{j},{k})"
                            ));
                        }
                    }
                }
            }
            None
        });
        if let Some(msg) = violation {
            return fail(msg);
        }
        // graded commutativity with Koszul signs on topological degrees
        for &a in &keys {
            for &b in &keys {
                let (p, d1) = a;
                let (q, d2) = b;
                if p + q > self.n_max || d1 + d2 > self.d_max {
                    continue;
                }
                let ab = self.mult_block(a, b).unwrap();
                let ba = self.mult_block(b, a).unwrap();
                let sign: i64 = if (d1 * d2) % 2 == 0 { 1 } else { -1 };
                let (da, db) = (self.dim(p, d1), self.dim(q, d2));
                for i in 0..da {
                    for j in 0..db {
                        for k in 0..ab.cols() {
                            let lhs = ab.get(i * db + j, k);
                            let rhs = crate::linalg::scalar_mul_i64(
                                self.field,
                                &ba.get(j * da + i, k),
                                sign,
                            );
                            if lhs != rhs {
                                return fail(format!(
                                    "graded commutativity fails at ({p},{d1}) x ({q},{d2}) basis ({i},{j})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_parts(
        field: FieldSpec,
        n_max: usize,
        d_max: usize,
        dims: BTreeMap<(usize, usize), usize>,
        names: BTreeMap<(usize, usize), Vec<String>>,
        mult: BTreeMap<((usize, usize), (usize, usize)), MatrixF>,
        named: BTreeMap<String, NamedClass>,
        provenance: Option<String>,
    ) -> Self {
        ChargedGradedAlgebra {
            field,
            n_max,
            d_max,
            dims,
            names,
            mult,
            named,
            provenance,
        }
    }

    pub fn mult_blocks(&self) -> &BTreeMap<((usize, usize), (usize, usize)), MatrixF> {
        &self.mult
    }
}

pub fn unit_vector(field: FieldSpec, dim: usize, i: usize) -> MatrixF {
    let mut v = MatrixF::zero(field, 1, dim);
    v.set_i64(0, i, 1);
    v
}

/// Build the algebra of a family from scratch via bar resolutions.
pub fn algebra_build(
    fam: &GroupFamily,
    field: FieldSpec,
    n_max: usize,
    d_max: usize,
    guard: u64,
) -> Result<ChargedGradedAlgebra, AlgebraError> {
    assert!(n_max <= fam.n_max());
    let homologies: Vec<GroupHomology> = (0..=n_max)
        .map(|p| group_homology(fam.group(p), field, d_max, guard))
        .collect::<Result<_, _>>()?;

    let mut dims = BTreeMap::new();
    let mut names = BTreeMap::new();
    for (p, h) in homologies.iter().enumerate() {
        for (d, s) in h.summands.iter().enumerate() {
            dims.insert((p, d), s.dim);
            let name_list: Vec<String> = (0..s.dim)
                .map(|i| match (p, d) {
                    (0, 0) => "one".to_string(),
                    (1, 0) => "sigma".to_string(),
                    _ => format!("x{p}d{d}n{i}"),
                })
                .collect();
            names.insert((p, d), name_list);
        }
    }

    // structure constants per pair of bidegrees, in parallel
    let mut pairs: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for (&(p, d1), &dl) in &dims {
        for (&(q, d2), &dr) in &dims {
            if p + q <= n_max && d1 + d2 <= d_max && dl > 0 && dr > 0 {
                pairs.push(((p, d1), (q, d2)));
            }
        }
    }
    let computed: Result<Vec<_>, AlgebraError> = pairs
        .par_iter()
        .map(|&(left, right)| {
            let (p, d1) = left;
            let (q, d2) = right;
            let target = &homologies[p + q].summands[d1 + d2];
            let target_group = fam.group(p + q);
            let (dl, dr) = (dims[&left], dims[&right]);
            let mut block = MatrixF::zero(field, dl * dr, dims[&(p + q, d1 + d2)]);
            for i in 0..dl {
                let x = BarChain::from_vector(
                    fam.group(p),
                    d1,
                    &homologies[p].summands[d1].reps.row_matrix(i),
                );
                for j in 0..dr {
                    let y = BarChain::from_vector(
                        fam.group(q),
                        d2,
                        &homologies[q].summands[d2].reps.row_matrix(j),
                    );
                    let crossed = cross_shuffle(&x, &y, fam.group(q).order(), field);
                    let pushed = crossed.push_along(fam.product_hom(p, q), field);
                    let vec = pushed.to_vector(target_group, field);
                    let coords = target
                        .class_of(&vec)
                        .ok_or(AlgebraError::NonCycleProduct { p, q, d1, d2 })?;
                    for (k, c) in coords.into_iter().enumerate() {
                        block.set(i * dr + j, k, c);
                    }
                }
            }
            Ok(((left, right), block))
        })
        .collect();
    let mult: BTreeMap<_, _> = computed?.into_iter().collect();

    // distinguished classes: for general linear families over F_2, "t" is
    // the class of the one-letter cycle on the elementary matrix
    let mut named = BTreeMap::new();
    if n_max >= 2 && d_max >= 1 {
        if let Some(t) = elementary_class(fam, &homologies, field) {
            named.insert("t".to_string(), t);
        }
    }

    let algebra = ChargedGradedAlgebra {
        field,
        n_max,
        d_max,
        dims,
        names,
        mult,
        named,
        provenance: Some(format!(
            "built from bar resolutions of the {} family, charges <= {n_max}, degrees <= {d_max}",
            fam.label()
        )),
    };
    algebra.verify_invariants()?;
    Ok(algebra)
}

/// Class of the 1-cycle on the elementary matrix `I + E_{12}` in
/// `H_1(G_2)`, when the charge-2 group carries matrix data.
fn elementary_class(
    fam: &GroupFamily,
    homologies: &[GroupHomology],
    field: FieldSpec,
) -> Option<NamedClass> {
    let g2 = fam.group(2);
    let first = g2.matrix_entries(1)?; // any element: gives the matrix size
    let n = (first.len() as f64).sqrt() as usize;
    let mut entries = vec![0u16; n * n];
    for i in 0..n {
        entries[i * n + i] = 1;
    }
    entries[1] = 1; // E_{12}
    let e12 = g2.matrix_index(&entries)?;
    if e12 == 0 {
        return None;
    }
    let chain = BarChain::single(vec![e12], one_scalar(field));
    let vec = chain.to_vector(g2, field);
    let coords = homologies[2].summands[1].class_of(&vec)?;
    let mut m = MatrixF::zero(field, 1, homologies[2].summands[1].dim);
    for (k, c) in coords.into_iter().enumerate() {
        m.set(0, k, c);
    }
    Some(NamedClass { charge: 2, degree: 1, coords: m })
}

fn one_scalar(field: FieldSpec) -> Scalar {
    match field.characteristic() {
        0 => Scalar::Rat(num::One::one()),
        _ => Scalar::Mod(1),
    }
}

/// Kernel of the stabilisation map out of `A_{n-1,d}`, as a subspace.
pub fn stabilization_kernel(
    algebra: &ChargedGradedAlgebra,
    n: usize,
    d: usize,
) -> Result<Subspace, AlgebraError> {
    let m = algebra.stabilization_matrix(n, d)?;
    Ok(Subspace::from_rows(&m.kernel()))
}

/// Express a coordinate vector against a subspace (no modulus), used by
/// the theorem checks for span comparisons.
pub fn in_span(v: &MatrixF, u: &Subspace) -> bool {
    express_modulo(v, u, &Subspace::zero(v.field(), v.cols())).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, GroupFamily};
    use crate::homology::bar::DEFAULT_BAR_GUARD;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn symmetric_algebra_small_dims() {
        let fam = GroupFamily::build(FamilyKind::Symmetric, 3).unwrap();
        let a = algebra_build(&fam, f2(), 3, 1, DEFAULT_BAR_GUARD).unwrap();
        assert_eq!(a.dim(0, 0), 1);
        assert_eq!(a.dim(1, 0), 1);
        assert_eq!(a.dim(1, 1), 0);
        assert_eq!(a.dim(2, 0), 1);
        assert_eq!(a.dim(2, 1), 1);
        assert_eq!(a.dim(3, 0), 1);
        assert_eq!(a.dim(3, 1), 1);
        // sigma * sigma spans A_{2,0}
        let sigma = unit_vector(f2(), 1, 0);
        let sq = a.multiply((1, 0), &sigma, (1, 0), &sigma).unwrap();
        assert!(!sq.is_zero());
    }

    #[test]
    fn stabilization_degree_zero_iso() {
        let fam = GroupFamily::build(FamilyKind::Symmetric, 3).unwrap();
        let a = algebra_build(&fam, f2(), 3, 1, DEFAULT_BAR_GUARD).unwrap();
        for n in 1..=3 {
            let s = a.stabilization_matrix(n, 0).unwrap();
            assert_eq!((s.rows(), s.cols()), (1, 1));
            assert_eq!(s.rank(), 1, "sigma^{} -> sigma^{}", n - 1, n);
        }
        // degree 1: H_1(S_2) -> H_1(S_3) is an isomorphism
        let s = a.stabilization_matrix(3, 1).unwrap();
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn gl2_algebra_t_class() {
        let fam = GroupFamily::build(FamilyKind::GeneralLinear { p: 2 }, 3).unwrap();
        let a = algebra_build(&fam, f2(), 3, 1, DEFAULT_BAR_GUARD).unwrap();
        assert_eq!(a.dim(2, 1), 1, "H_1(GL_2(F_2)) = F_2 t");
        assert_eq!(a.dim(3, 1), 0, "H_1(GL_3(F_2)) = 0");
        let t = &a.named()["t"];
        assert_eq!((t.charge, t.degree), (2, 1));
        assert!(!t.coords.is_zero());
        // the stabilisation out of charge 2 in degree 1 is the zero map
        let s = a.stabilization_matrix(3, 1).unwrap();
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn trivial_charge_zero_column() {
        let fam = GroupFamily::build(FamilyKind::Symmetric, 2).unwrap();
        let a = algebra_build(&fam, f2(), 2, 2, DEFAULT_BAR_GUARD).unwrap();
        assert_eq!(a.dim(0, 0), 1);
        assert_eq!(a.dim(0, 1), 0);
        assert_eq!(a.dim(0, 2), 0);
        // H_*(S_2; F_2) is one-dimensional in every degree
        assert_eq!(a.dim(2, 0), 1);
        assert_eq!(a.dim(2, 1), 1);
        assert_eq!(a.dim(2, 2), 1);
    }
}

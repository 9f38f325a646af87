//! Splitting posets and splitting complexes of a group family.
//!
//! For charge `n`, the splitting poset has one element per coset
//! `g (G_p x G_{n-p})`, `1 <= p <= n-1`, ordered by existence of a common
//! representative. The splitting complex is the semisimplicial set whose
//! `r`-simplices are cosets of `G_{q_0} x ... x G_{q_{r+1}}` over
//! compositions of `n`, with face maps merging adjacent blocks. Both are
//! realised as chain complexes to verify connectivity as homology
//! vanishing.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complex::BigradedChainComplex;
use crate::family::GroupFamily;
use crate::linalg::{BitMatrix, FieldSpec, MatrixF};

#[derive(Debug, Clone, thiserror::Error)]
pub enum SplittingError {
    #[error("charge {0} outside [2, {1}]")]
    ChargeRange(usize, usize),
    #[error("poset relation is not transitive at elements ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("simplicial identity d_i d_j = d_(j-1) d_i fails at dim {r}, simplex {s}, (i,j)=({i},{j})")]
    SimplicialIdentity { r: usize, s: usize, i: usize, j: usize },
}

/// Element of a splitting poset: a coset of `G_p x G_{n-p}` named by its
/// minimal representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosetElem {
    pub charge: usize,
    pub rep: u32,
}

/// Finite poset with an explicit relation matrix.
pub struct Poset {
    pub label: String,
    pub elements: Vec<PosetElem>,
    leq: BitMatrix,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    pub fn strictly_less(&self, a: usize, b: usize) -> bool {
        a != b && self.leq.get(a, b)
    }

    /// Check reflexivity, antisymmetry, transitivity exhaustively.
    pub fn verify_partial_order(&self) -> Result<(), SplittingError> {
        let n = self.len();
        for a in 0..n {
            assert!(self.leq(a, a), "relation must be reflexive");
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(SplittingError::NotTransitive(a, b, a));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                // a <= b forces row(b) ⊆ row(a), word-wise
                if self.strictly_less(a, b) && !self.leq.row_contains(a, b) {
                    let c = (0..n)
                        .find(|&c| self.leq(b, c) && !self.leq(a, c))
                        .expect("containment failure exhibits a triple");
                    return Err(SplittingError::NotTransitive(a, b, c));
                }
            }
        }
        Ok(())
    }
}

/// Canonical identity of a simplex, used to match isomorphic complexes.
/// For nerves of splitting posets this is the chain of (charge, coset
/// representative) pairs; splitting complexes produce the same keys by
/// coarsening their cosets along prefix sums.
pub type SimplexKey = Vec<(usize, u32)>;

pub struct SemisimplicialSet {
    pub label: String,
    /// human-readable names, one per simplex per dimension
    pub simplices: Vec<Vec<String>>,
    /// `faces[r][i][s]` = index of `d_i` of simplex `s` in dimension `r`
    pub faces: Vec<Vec<Vec<u32>>>,
    /// canonical keys per dimension, aligned with `simplices`
    pub keys: Vec<Vec<SimplexKey>>,
}

impl SemisimplicialSet {
    pub fn dim_count(&self, r: usize) -> usize {
        self.simplices.get(r).map_or(0, |v| v.len())
    }

    pub fn top_dimension(&self) -> Option<usize> {
        (0..self.simplices.len()).rev().find(|&r| !self.simplices[r].is_empty())
    }

    /// Exhaustively check `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn verify_simplicial_identities(&self) -> Result<(), SplittingError> {
        for r in 2..self.simplices.len() {
            for s in 0..self.simplices[r].len() {
                for j in 1..=r {
                    for i in 0..j {
                        let dj = self.faces[r][j][s] as usize;
                        let di_dj = self.faces[r - 1][i][dj];
                        let di = self.faces[r][i][s] as usize;
                        let djm1_di = self.faces[r - 1][j - 1][di];
                        if di_dj != djm1_di {
                            return Err(SplittingError::SimplicialIdentity { r, s, i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Simplicial chains with `∂ = Σ (-1)^i d_i`, in the topological
    /// degree 0 column of a bigraded complex.
    pub fn chain_complex(&self, field: FieldSpec) -> BigradedChainComplex {
        let mut cc = BigradedChainComplex::new(field);
        for (r, simps) in self.simplices.iter().enumerate() {
            cc.set_term(r, 0, simps.len(), Some(simps.clone()));
        }
        for r in 1..self.simplices.len() {
            let rows = self.dim_count(r - 1);
            let cols = self.dim_count(r);
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut m = MatrixF::zero(field, rows, cols);
            for s in 0..cols {
                for (i, face_map) in self.faces[r].iter().enumerate() {
                    let t = face_map[s] as usize;
                    let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
                    let cur = m.get(t, s);
                    m.set(t, s, crate::linalg::scalar_add(field, &cur, &scalar_from(field, sign)));
                }
            }
            cc.set_diff(r, 0, m);
        }
        cc
    }
}

fn scalar_from(field: FieldSpec, k: i64) -> crate::linalg::Scalar {
    crate::linalg::scalar_mul_i64(field, &one_scalar(field), k)
}

fn one_scalar(field: FieldSpec) -> crate::linalg::Scalar {
    match field.characteristic() {
        0 => crate::linalg::Scalar::Rat(num::One::one()),
        _ => crate::linalg::Scalar::Mod(1),
    }
}

/// The splitting poset of `fam` at charge `n`.
///
/// The order relation is decided by scanning `G_n` once per pair of
/// charges: every `k` relates the `p`-coset and `q`-coset it represents.
pub fn splitting_poset(fam: &GroupFamily, n: usize) -> Result<Poset, SplittingError> {
    if n < 2 || n > fam.n_max() {
        return Err(SplittingError::ChargeRange(n, fam.n_max()));
    }
    let g = fam.group(n);
    // coset decomposition per proper charge p
    let mut decs = Vec::new();
    let mut elements = Vec::new();
    let mut first_index = Vec::new(); // start of charge p's elements
    for p in 1..n {
        let sub = fam.block_subgroup(&[p, n - p]);
        let dec = g.cosets(&sub).expect("block subgroups are subgroups");
        first_index.push(elements.len());
        for &rep in &dec.reps {
            elements.push(PosetElem { charge: p, rep });
        }
        decs.push(dec);
    }
    let m = elements.len();
    let mut leq = BitMatrix::zero(m, m);
    for a in 0..m {
        leq.set(a, a, true);
    }
    for pi in 0..n - 1 {
        for qi in pi + 1..n - 1 {
            for k in 0..g.order() {
                let a = first_index[pi] + decs[pi].coset_of[k] as usize;
                let b = first_index[qi] + decs[qi].coset_of[k] as usize;
                leq.set(a, b, true);
            }
        }
    }
    let poset = Poset {
        label: format!("SP_{n}({})", fam.label()),
        elements,
        leq,
    };
    poset.verify_partial_order()?;
    Ok(poset)
}

/// Compositions of `n` into `parts` positive parts, lexicographic.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if n >= 1 {
                prefix.push(n);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in 1..=n.saturating_sub(parts - 1) {
            prefix.push(first);
            rec(n - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 {
        rec(n, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// The splitting complex of `fam` at charge `n`: `r`-simplices are cosets
/// over compositions of `n` into `r + 2` parts, `r <= n - 2`; the face
/// `d_i` merges the blocks `q_i` and `q_{i+1}`.
pub fn splitting_complex(fam: &GroupFamily, n: usize) -> Result<SemisimplicialSet, SplittingError> {
    if n < 2 || n > fam.n_max() {
        return Err(SplittingError::ChargeRange(n, fam.n_max()));
    }
    let g = fam.group(n);
    // two-block decompositions per prefix charge, shared by all keys
    let prefix_decs: Vec<crate::group::CosetDecomposition> = (1..n)
        .map(|p| {
            g.cosets(&fam.block_subgroup(&[p, n - p]))
                .expect("block subgroups are subgroups")
        })
        .collect();

    struct Layer {
        comps: Vec<Vec<usize>>,
        decs: Vec<crate::group::CosetDecomposition>,
        offset: Vec<usize>,
        total: usize,
    }
    let mut layers = Vec::new();
    for r in 0..=n.saturating_sub(2) {
        let comps = compositions(n, r + 2);
        let mut decs = Vec::new();
        let mut offset = Vec::new();
        let mut total = 0usize;
        for comp in &comps {
            let sub = fam.block_subgroup(comp);
            let dec = g.cosets(&sub).expect("block subgroups are subgroups");
            offset.push(total);
            total += dec.count();
            decs.push(dec);
        }
        layers.push(Layer { comps, decs, offset, total });
    }

    let mut simplices = Vec::new();
    let mut keys = Vec::new();
    let mut faces = Vec::new();
    for (r, layer) in layers.iter().enumerate() {
        let mut names = Vec::with_capacity(layer.total);
        let mut layer_keys = Vec::with_capacity(layer.total);
        for (ci, comp) in layer.comps.iter().enumerate() {
            for &rep in &layer.decs[ci].reps {
                let comp_str = comp.iter().map(|q| q.to_string()).collect::<Vec<_>>().join("+");
                names.push(format!("g{rep}({comp_str})"));
                // canonical key: the chain of prefix-coarsened cosets
                let mut key = Vec::with_capacity(r + 1);
                let mut prefix = 0usize;
                for &q in comp.iter().take(r + 1) {
                    prefix += q;
                    let dec = &prefix_decs[prefix - 1];
                    let id = dec.coset_of[rep as usize] as usize;
                    key.push((prefix, dec.reps[id]));
                }
                layer_keys.push(key);
            }
        }
        simplices.push(names);
        keys.push(layer_keys);

        if r == 0 {
            faces.push(Vec::new());
            continue;
        }
        let below = &layers[r - 1];
        let mut face_maps: Vec<Vec<u32>> = vec![Vec::with_capacity(layer.total); r + 1];
        for (ci, comp) in layer.comps.iter().enumerate() {
            // index of each merged composition in the layer below
            let merged_idx: Vec<usize> = (0..=r)
                .map(|i| {
                    let mut merged = comp.clone();
                    let q = merged.remove(i + 1);
                    merged[i] += q;
                    below.comps.iter().position(|c| *c == merged).expect("merged composition exists")
                })
                .collect();
            for &rep in &layer.decs[ci].reps {
                for (i, fm) in face_maps.iter_mut().enumerate() {
                    let mi = merged_idx[i];
                    let coset = below.decs[mi].coset_of[rep as usize] as usize;
                    fm.push((below.offset[mi] + coset) as u32);
                }
            }
        }
        faces.push(face_maps);
    }

    let ss = SemisimplicialSet {
        label: format!("SC_{n}({})", fam.label()),
        simplices,
        faces,
        keys,
    };
    ss.verify_simplicial_identities()?;
    Ok(ss)
}

/// Semisimplicial nerve of a poset: `r`-simplices are strict chains of
/// `r + 1` elements; `d_i` deletes the `i`-th entry.
pub fn nerve(poset: &Poset) -> SemisimplicialSet {
    let n = poset.len();
    let mut chains: Vec<Vec<Vec<u32>>> = vec![(0..n as u32).map(|v| vec![v]).collect()];
    loop {
        let last = chains.last().unwrap();
        let mut next = Vec::new();
        for chain in last {
            let tail = *chain.last().unwrap() as usize;
            for b in 0..n {
                if poset.strictly_less(tail, b) {
                    let mut ext = chain.clone();
                    ext.push(b as u32);
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        chains.push(next);
    }

    let mut simplices = Vec::new();
    let mut keys = Vec::new();
    let mut faces = Vec::new();
    let mut index_of: Vec<HashMap<Vec<u32>, u32>> = Vec::new();
    for (r, layer) in chains.iter().enumerate() {
        let mut names = Vec::with_capacity(layer.len());
        let mut layer_keys = Vec::with_capacity(layer.len());
        let mut idx = HashMap::with_capacity(layer.len());
        for (s, chain) in layer.iter().enumerate() {
            idx.insert(chain.clone(), s as u32);
            let name = chain
                .iter()
                .map(|&v| {
                    let e = poset.elements[v as usize];
                    format!("({},{})", e.charge, e.rep)
                })
                .collect::<Vec<_>>()
                .join("<");
            names.push(name);
            layer_keys.push(
                chain
                    .iter()
                    .map(|&v| {
                        let e = poset.elements[v as usize];
                        (e.charge, e.rep)
                    })
                    .collect(),
            );
        }
        index_of.push(idx);
        simplices.push(names);
        keys.push(layer_keys);
        if r == 0 {
            faces.push(Vec::new());
            continue;
        }
        let mut face_maps: Vec<Vec<u32>> = vec![Vec::with_capacity(layer.len()); r + 1];
        for chain in layer {
            for (i, fm) in face_maps.iter_mut().enumerate() {
                let mut sub = chain.clone();
                sub.remove(i);
                fm.push(index_of[r - 1][&sub]);
            }
        }
        faces.push(face_maps);
    }

    SemisimplicialSet {
        label: format!("N({})", poset.label),
        simplices,
        faces,
        keys,
    }
}

/// Witness for a semisimplicial isomorphism: per dimension, the image
/// index of each simplex of the source.
pub struct IsoWitness {
    pub maps: Vec<Vec<u32>>,
}

/// Decide whether two semisimplicial sets are isomorphic by matching
/// canonical simplex keys (coset-representative chains) and verifying
/// that the matched bijections commute with every face map.
pub fn ss_isomorphic(s: &SemisimplicialSet, t: &SemisimplicialSet) -> Option<IsoWitness> {
    let dims_s: Vec<usize> = (0..s.simplices.len()).map(|r| s.dim_count(r)).collect();
    let dims_t: Vec<usize> = (0..t.simplices.len()).map(|r| t.dim_count(r)).collect();
    let top = dims_s.len().max(dims_t.len());
    for r in 0..top {
        if dims_s.get(r).copied().unwrap_or(0) != dims_t.get(r).copied().unwrap_or(0) {
            return None;
        }
    }
    let mut maps = Vec::new();
    for r in 0..s.simplices.len() {
        let mut lookup: HashMap<&SimplexKey, u32> = HashMap::new();
        for (j, key) in t.keys[r].iter().enumerate() {
            if lookup.insert(key, j as u32).is_some() {
                return None; // duplicate keys: matching is ambiguous
            }
        }
        let mut map = Vec::with_capacity(s.dim_count(r));
        for key in &s.keys[r] {
            map.push(*lookup.get(key)?);
        }
        maps.push(map);
    }
    // verify face commutation
    for r in 1..s.simplices.len() {
        for i in 0..=r {
            for x in 0..s.dim_count(r) {
                let lhs = maps[r - 1][s.faces[r][i][x] as usize];
                let rhs = t.faces[r][i][maps[r][x] as usize];
                if lhs != rhs {
                    return None;
                }
            }
        }
    }
    Some(IsoWitness { maps })
}

/// Reduced Betti numbers of a semisimplicial set over the given field.
/// Rank-based, so no kernel bases are materialised for large complexes.
pub fn reduced_betti(ss: &SemisimplicialSet, field: FieldSpec) -> Vec<usize> {
    let cc = ss.chain_complex(field);
    let top = ss.top_dimension().map_or(0, |t| t);
    let ranks: Vec<usize> = (0..=top + 1)
        .into_par_iter()
        .map(|r| cc.diff(r, 0).rank())
        .collect();
    let mut betti: Vec<usize> = (0..=top)
        .map(|r| cc.dim(r, 0) - ranks[r] - ranks[r + 1])
        .collect();
    if !betti.is_empty() && ss.dim_count(0) > 0 {
        betti[0] -= 1; // reduce: one copy of the field in degree 0
    }
    betti
}

#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub family: String,
    pub n: usize,
    pub field: FieldSpec,
    pub reduced_betti: Vec<usize>,
    /// homology vanishes up to degree n-3
    pub passes: bool,
    /// rank in degree n-2 (the wedge count)
    pub top_rank: usize,
}

/// Reduced homology of the order complex of the splitting poset;
/// passes when it vanishes in degrees `<= n-3` ("homology-(n-3)-connected":
/// the fundamental group is not examined).
pub fn check_connectivity(
    fam: &GroupFamily,
    n: usize,
    field: FieldSpec,
) -> Result<ConnectivityReport, SplittingError> {
    let poset = splitting_poset(fam, n)?;
    let ner = nerve(&poset);
    let betti = reduced_betti(&ner, field);
    let passes = betti.iter().take(n.saturating_sub(2)).all(|&b| b == 0);
    let top_rank = betti.get(n - 2).copied().unwrap_or(0);
    Ok(ConnectivityReport {
        family: fam.label().to_string(),
        n,
        field,
        reduced_betti: betti,
        passes,
        top_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, GroupFamily};

    fn sym(n: usize) -> GroupFamily {
        GroupFamily::build(FamilyKind::Symmetric, n).unwrap()
    }

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn sp3_symmetric_is_hexagon() {
        let fam = sym(3);
        let poset = splitting_poset(&fam, 3).unwrap();
        assert_eq!(poset.len(), 6);
        // each charge-1 element below exactly two charge-2 elements
        for a in 0..6 {
            if poset.elements[a].charge == 1 {
                let above = (0..6).filter(|&b| poset.strictly_less(a, b)).count();
                assert_eq!(above, 2);
            }
        }
        let betti = reduced_betti(&nerve(&poset), f2());
        assert_eq!(betti, vec![0, 1]); // a circle
    }

    #[test]
    fn sp2_symmetric_two_points() {
        let fam = sym(2);
        let poset = splitting_poset(&fam, 2).unwrap();
        assert_eq!(poset.len(), 2);
        assert!(!poset.strictly_less(0, 1) && !poset.strictly_less(1, 0));
    }

    #[test]
    fn sp2_gl2_six_points_no_relations() {
        let fam = GroupFamily::build(FamilyKind::GeneralLinear { p: 2 }, 2).unwrap();
        let poset = splitting_poset(&fam, 2).unwrap();
        assert_eq!(poset.len(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(poset.leq(a, b), a == b);
            }
        }
        let report = check_connectivity(&fam, 2, f2()).unwrap();
        assert!(report.passes);
        assert_eq!(report.reduced_betti[0], 5);
    }

    #[test]
    fn sc3_symmetric_counts() {
        let fam = sym(3);
        let sc = splitting_complex(&fam, 3).unwrap();
        assert_eq!(sc.dim_count(0), 6);
        assert_eq!(sc.dim_count(1), 6);
        // charge 2: single composition (1,1), two cosets
        let sc2 = splitting_complex(&fam, 2).unwrap();
        assert_eq!(sc2.dim_count(0), 2);
        assert_eq!(sc2.simplices.len(), 1);
    }

    #[test]
    fn nerve_counts() {
        // two-element chain a < b -> 2 vertices, 1 edge
        let mut leq = BitMatrix::identity(2);
        leq.set(0, 1, true);
        let p = Poset {
            label: "chain".into(),
            elements: vec![
                PosetElem { charge: 1, rep: 0 },
                PosetElem { charge: 2, rep: 0 },
            ],
            leq,
        };
        p.verify_partial_order().unwrap();
        let n = nerve(&p);
        assert_eq!(n.dim_count(0), 2);
        assert_eq!(n.dim_count(1), 1);
        // antichain of k elements: vertices only
        let k = 5;
        let anti = Poset {
            label: "antichain".into(),
            elements: (0..k).map(|i| PosetElem { charge: 1, rep: i }).collect(),
            leq: BitMatrix::identity(k as usize),
        };
        let n = nerve(&anti);
        assert_eq!(n.dim_count(0), 5);
        assert_eq!(n.simplices.len(), 1);
    }

    #[test]
    fn nerve_iso_splitting_complex_small() {
        for n in 2..=4 {
            let fam = sym(n);
            let sc = splitting_complex(&fam, n).unwrap();
            let ner = nerve(&splitting_poset(&fam, n).unwrap());
            assert!(ss_isomorphic(&sc, &ner).is_some(), "iso fails at n={n}");
            assert!(ss_isomorphic(&sc, &sc).is_some(), "self-iso must hold");
        }
        // different sizes are rejected quickly
        let fam = sym(4);
        let a = splitting_complex(&fam, 3).unwrap();
        let b = splitting_complex(&fam, 4).unwrap();
        assert!(ss_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn sphere_homology_small() {
        // |SP_4| for the symmetric family is S^2: reduced betti (0,0,1)
        let fam = sym(4);
        let report = check_connectivity(&fam, 4, f2()).unwrap();
        assert!(report.passes);
        assert_eq!(report.reduced_betti, vec![0, 0, 1]);
    }

    #[test]
    fn translation_action_is_automorphism() {
        // left translation by sampled group elements permutes the poset
        // preserving the order relation
        let fam = sym(4);
        let n = 4;
        let poset = splitting_poset(&fam, n).unwrap();
        let g = fam.group(n);
        let mut index: HashMap<PosetElem, usize> = HashMap::new();
        for (i, e) in poset.elements.iter().enumerate() {
            index.insert(*e, i);
        }
        let decs: Vec<_> = (1..n)
            .map(|p| g.cosets(&fam.block_subgroup(&[p, n - p])).unwrap())
            .collect();
        for t in (0..g.order() as u32).step_by(5) {
            let translate = |i: usize| {
                let e = poset.elements[i];
                let dec = &decs[e.charge - 1];
                let moved = g.mul(t, e.rep);
                let rep = dec.reps[dec.coset_of[moved as usize] as usize];
                index[&PosetElem { charge: e.charge, rep }]
            };
            for a in 0..poset.len() {
                for b in 0..poset.len() {
                    assert_eq!(poset.leq(a, b), poset.leq(translate(a), translate(b)));
                }
            }
        }
    }
}

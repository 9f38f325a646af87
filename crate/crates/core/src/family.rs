//! Families of groups with multiplication.
//!
//! A family is a sequence `G_0, G_1, ..., G_N` of finite groups together
//! with injective product maps `G_p x G_q -> G_{p+q}` written `g * h`.
//! The checker verifies, exhaustively at desk scale, the five defining
//! axioms: unit, associativity, commutativity up to conjugation (with a
//! witness search for the conjugating element), injectivity, and the
//! subgroup intersection identity
//! `(G_{p+q} x G_r) ∩ (G_p x G_{q+r}) = G_p x G_q x G_r` inside `G_{p+q+r}`.

use std::collections::{BTreeMap, BTreeSet};

use crate::group::{FiniteGroup, GroupError, Homomorphism};

#[derive(Debug, Clone, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("charge {0} outside the family range 0..={1}")]
    ChargeRange(usize, usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    Symmetric,
    GeneralLinear { p: u32 },
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyKind::Symmetric => write!(f, "symmetric"),
            FamilyKind::GeneralLinear { p } => write!(f, "general_linear({p})"),
        }
    }
}

/// A family of groups with multiplication, with all product maps realised
/// as index tables on direct products.
pub struct GroupFamily {
    label: String,
    groups: Vec<FiniteGroup>,
    /// (p, q) -> product map out of `direct_product(G_p, G_q)`.
    products: BTreeMap<(usize, usize), Homomorphism>,
}

impl GroupFamily {
    pub fn n_max(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self, p: usize) -> &FiniteGroup {
        &self.groups[p]
    }

    pub fn product_hom(&self, p: usize, q: usize) -> &Homomorphism {
        &self.products[&(p, q)]
    }

    /// `g * h` for `g` in `G_p`, `h` in `G_q`, landing in `G_{p+q}`.
    pub fn product(&self, p: usize, q: usize, g: u32, h: u32) -> u32 {
        let hq = self.groups[q].order() as u32;
        self.products[&(p, q)].apply(g * hq + h)
    }

    /// Iterated product of one element per listed charge (left-normed).
    pub fn product_many(&self, charges: &[usize], elems: &[u32]) -> u32 {
        assert_eq!(charges.len(), elems.len());
        let mut charge = charges[0];
        let mut acc = elems[0];
        for (&c, &e) in charges.iter().zip(elems).skip(1) {
            acc = self.product(charge, c, acc, e);
            charge += c;
        }
        acc
    }

    /// Element set of the subgroup `G_{c_0} x ... x G_{c_k}` of `G_n`,
    /// sorted. `n` is the sum of the charges.
    pub fn block_subgroup(&self, charges: &[usize]) -> Vec<u32> {
        let mut elems: Vec<u32> = vec![0];
        let mut charge = 0usize;
        for &c in charges {
            let gc = self.groups[c].order() as u32;
            let mut next = Vec::with_capacity(elems.len() * gc as usize);
            for &a in &elems {
                for h in 0..gc {
                    next.push(self.product(charge, c, a, h));
                }
            }
            charge += c;
            elems = next;
        }
        elems.sort_unstable();
        elems.dedup();
        elems
    }

    /// Build a built-in family up to charge `n_max`.
    pub fn build(kind: FamilyKind, n_max: usize) -> Result<GroupFamily, FamilyError> {
        let groups: Vec<FiniteGroup> = match kind {
            FamilyKind::Symmetric => (0..=n_max)
                .map(FiniteGroup::symmetric)
                .collect::<Result<_, _>>()?,
            FamilyKind::GeneralLinear { p } => (0..=n_max)
                .map(|n| {
                    if n == 0 {
                        FiniteGroup::symmetric(0)
                    } else {
                        FiniteGroup::general_linear(n, p)
                    }
                })
                .collect::<Result<_, _>>()?,
        };
        let mut products = BTreeMap::new();
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                let source = FiniteGroup::direct_product(&groups[p], &groups[q]);
                let target = groups[p + q].clone();
                let hq = groups[q].order() as u32;
                let map: Vec<u32> = (0..source.order() as u32)
                    .map(|idx| {
                        let (g, h) = (idx / hq, idx % hq);
                        match kind {
                            FamilyKind::Symmetric => {
                                juxtapose_perm(&groups[p], &groups[q], &target, g, h)
                            }
                            FamilyKind::GeneralLinear { p: fp } => {
                                block_diag_matrix(&groups[p], &groups[q], &target, g, h, p, q, fp)
                            }
                        }
                    })
                    .collect();
                products.insert((p, q), Homomorphism { source, target, map });
            }
        }
        Ok(GroupFamily {
            label: kind.to_string(),
            groups,
            products,
        })
    }

    /// Assemble a family from raw parts (used for user-supplied families
    /// and for deliberately corrupted inputs in tests).
    pub fn from_parts(
        label: String,
        groups: Vec<FiniteGroup>,
        products: BTreeMap<(usize, usize), Homomorphism>,
    ) -> GroupFamily {
        GroupFamily { label, groups, products }
    }

    pub fn products_mut(&mut self) -> &mut BTreeMap<(usize, usize), Homomorphism> {
        &mut self.products
    }

    /// Exhaustive verification of the family axioms for charges up to
    /// `n_max`. Failures are report entries, not errors.
    pub fn check_axioms(&self, n_max: usize) -> AxiomReport {
        assert!(n_max <= self.n_max());
        let mut report = AxiomReport {
            family: self.label.clone(),
            n_max,
            results: Vec::new(),
            tau_witnesses: BTreeMap::new(),
        };

        // product maps are homomorphisms (checked first; the axioms below
        // quietly assume it)
        let mut hom_fail = None;
        for ((p, q), hom) in &self.products {
            if p + q > n_max {
                continue;
            }
            if let Err(e) = hom.verify() {
                hom_fail = Some(format!("product ({p},{q}): {e}"));
                break;
            }
        }
        report.push(AxiomKind::ProductMaps, hom_fail);

        // unit: G_0 trivial and e_0 neutral on both sides
        let mut unit_fail = None;
        if self.groups[0].order() != 1 {
            unit_fail = Some("G_0 is not the trivial group".into());
        } else {
            'unit: for n in 0..=n_max {
                for g in 0..self.groups[n].order() as u32 {
                    if self.product(0, n, 0, g) != g || self.product(n, 0, g, 0) != g {
                        unit_fail = Some(format!("e_0 does not act as unit on element {g} of charge {n}"));
                        break 'unit;
                    }
                }
            }
        }
        report.push(AxiomKind::Unit, unit_fail);

        // associativity over all triples of charges
        let mut assoc_fail = None;
        'assoc: for p in 0..=n_max {
            for q in 0..=n_max - p {
                for r in 0..=n_max - p - q {
                    let (np, nq, nr) = (
                        self.groups[p].order() as u32,
                        self.groups[q].order() as u32,
                        self.groups[r].order() as u32,
                    );
                    for g in 0..np {
                        for h in 0..nq {
                            let gh = self.product(p, q, g, h);
                            for k in 0..nr {
                                let left = self.product(p + q, r, gh, k);
                                let right = self.product(p, q + r, g, self.product(q, r, h, k));
                                if left != right {
                                    assoc_fail = Some(format!(
                                        "(g*h)*k != g*(h*k) at charges ({p},{q},{r}), elements ({g},{h},{k})"
                                    ));
                                    break 'assoc;
                                }
                            }
                        }
                    }
                }
            }
        }
        report.push(AxiomKind::Associativity, assoc_fail);

        // commutativity up to conjugation: search tau with
        // tau (g*h) tau^-1 = h*g for all pairs
        let mut comm_fail = None;
        'comm: for p in 0..=n_max {
            for q in 0..=n_max - p {
                let target = &self.groups[p + q];
                let (np, nq) = (self.groups[p].order() as u32, self.groups[q].order() as u32);
                let pairs: Vec<(u32, u32)> = (0..np).flat_map(|g| (0..nq).map(move |h| (g, h))).collect();
                let found = (0..target.order() as u32).find(|&tau| {
                    let tau_inv = target.inv(tau);
                    pairs.iter().all(|&(g, h)| {
                        let gh = self.product(p, q, g, h);
                        let hg = self.product(q, p, h, g);
                        target.mul(target.mul(tau, gh), tau_inv) == hg
                    })
                });
                match found {
                    Some(tau) => {
                        report.tau_witnesses.insert((p, q), tau);
                    }
                    None => {
                        comm_fail = Some(format!("no conjugating element for charges ({p},{q})"));
                        break 'comm;
                    }
                }
            }
        }
        report.push(AxiomKind::Commutativity, comm_fail);

        // injectivity of every product map
        let mut inj_fail = None;
        for ((p, q), hom) in &self.products {
            if p + q > n_max {
                continue;
            }
            if !hom.is_injective() {
                inj_fail = Some(format!("product ({p},{q}) is not injective"));
                break;
            }
        }
        report.push(AxiomKind::Injectivity, inj_fail);

        // intersection: computed as literal element-set equality
        let mut int_fail = None;
        'inter: for p in 0..=n_max {
            for q in 0..=n_max - p {
                for r in 0..=n_max - p - q {
                    let left: BTreeSet<u32> = self.block_subgroup(&[p + q, r]).into_iter().collect();
                    let right: BTreeSet<u32> = self.block_subgroup(&[p, q + r]).into_iter().collect();
                    let both: BTreeSet<u32> = left.intersection(&right).copied().collect();
                    let triple: BTreeSet<u32> = self.block_subgroup(&[p, q, r]).into_iter().collect();
                    if both != triple {
                        int_fail = Some(format!(
                            "intersection axiom fails at charges ({p},{q},{r}): sizes {} vs {}",
                            both.len(),
                            triple.len()
                        ));
                        break 'inter;
                    }
                }
            }
        }
        report.push(AxiomKind::Intersection, int_fail);

        report
    }
}

fn juxtapose_perm(gp: &FiniteGroup, gq: &FiniteGroup, target: &FiniteGroup, g: u32, h: u32) -> u32 {
    let f = gp.perm_entries(g).expect("symmetric family carries permutations");
    let s = gq.perm_entries(h).expect("symmetric family carries permutations");
    let p = f.len();
    let mut out = Vec::with_capacity(p + s.len());
    out.extend_from_slice(f);
    out.extend(s.iter().map(|&x| x + p as u8));
    target.perm_index(&out).expect("juxtaposition stays in the target group")
}

#[allow(clippy::too_many_arguments)]
fn block_diag_matrix(
    gp: &FiniteGroup,
    gq: &FiniteGroup,
    target: &FiniteGroup,
    g: u32,
    h: u32,
    p: usize,
    q: usize,
    _fp: u32,
) -> u32 {
    let n = p + q;
    if n == 0 {
        return 0;
    }
    let mut out = vec![0u16; n * n];
    if p > 0 {
        let a = gp
            .matrix_entries(g)
            .map(|e| e.to_vec())
            .unwrap_or_else(|| vec![]); // charge 0: trivial group, empty block
        for i in 0..p {
            for j in 0..p {
                out[i * n + j] = if a.is_empty() { u16::from(i == j) } else { a[i * p + j] };
            }
        }
    }
    if q > 0 {
        let b = gq.matrix_entries(h).map(|e| e.to_vec()).unwrap_or_else(|| vec![]);
        for i in 0..q {
            for j in 0..q {
                out[(p + i) * n + (p + j)] = if b.is_empty() { u16::from(i == j) } else { b[i * q + j] };
            }
        }
    }
    target.matrix_index(&out).expect("block sum stays invertible")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomKind {
    ProductMaps,
    Unit,
    Associativity,
    Commutativity,
    Injectivity,
    Intersection,
}

impl std::fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AxiomKind::ProductMaps => "product-maps-are-homomorphisms",
            AxiomKind::Unit => "unit",
            AxiomKind::Associativity => "associativity",
            AxiomKind::Commutativity => "commutativity-up-to-conjugation",
            AxiomKind::Injectivity => "injectivity",
            AxiomKind::Intersection => "intersection",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct AxiomResult {
    pub axiom: AxiomKind,
    pub counterexample: Option<String>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub family: String,
    pub n_max: usize,
    pub results: Vec<AxiomResult>,
    /// Conjugation witnesses found for each pair of charges.
    pub tau_witnesses: BTreeMap<(usize, usize), u32>,
}

impl AxiomReport {
    fn push(&mut self, axiom: AxiomKind, counterexample: Option<String>) {
        self.results.push(AxiomResult { axiom, counterexample });
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_family_orders() {
        let fam = GroupFamily::build(FamilyKind::Symmetric, 4).unwrap();
        let orders: Vec<usize> = (0..=4).map(|p| fam.group(p).order()).collect();
        assert_eq!(orders, vec![1, 1, 2, 6, 24]);
    }

    #[test]
    fn gl2_family_orders() {
        let fam = GroupFamily::build(FamilyKind::GeneralLinear { p: 2 }, 3).unwrap();
        let orders: Vec<usize> = (0..=3).map(|p| fam.group(p).order()).collect();
        assert_eq!(orders, vec![1, 1, 6, 168]);
    }

    #[test]
    fn symmetric_axioms_hold() {
        let fam = GroupFamily::build(FamilyKind::Symmetric, 4).unwrap();
        let report = fam.check_axioms(4);
        assert!(report.all_passed(), "{:?}", report.results);
        // the block-interchange permutation is always a valid witness;
        // the recorded one may differ (for (1,1) the condition is vacuous
        // on the trivial group, so the identity is found first)
        for (p, q) in [(1usize, 1usize), (1, 2), (2, 2), (1, 3)] {
            let target = fam.group(p + q);
            let swap: Vec<u8> = (0..p as u8)
                .map(|i| i + q as u8)
                .chain(0..q as u8)
                .collect();
            let tau = target.perm_index(&swap).unwrap();
            for g in 0..fam.group(p).order() as u32 {
                for h in 0..fam.group(q).order() as u32 {
                    let gh = fam.product(p, q, g, h);
                    let hg = fam.product(q, p, h, g);
                    assert_eq!(target.mul(target.mul(tau, gh), target.inv(tau)), hg);
                }
            }
            assert!(report.tau_witnesses.contains_key(&(p, q)));
        }
    }

    #[test]
    fn gl_axioms_hold() {
        let fam = GroupFamily::build(FamilyKind::GeneralLinear { p: 2 }, 3).unwrap();
        let report = fam.check_axioms(3);
        assert!(report.all_passed(), "{:?}", report.results);
        // the witness for (1,2) conjugates block sums to swapped block sums;
        // the block permutation matrix is one valid witness, but any works,
        // so check the defining property directly for the recorded one.
        let tau = report.tau_witnesses[&(1, 2)];
        let g3 = fam.group(3);
        for g in 0..fam.group(1).order() as u32 {
            for h in 0..fam.group(2).order() as u32 {
                let gh = fam.product(1, 2, g, h);
                let hg = fam.product(2, 1, h, g);
                assert_eq!(g3.mul(g3.mul(tau, gh), g3.inv(tau)), hg);
            }
        }
    }

    #[test]
    fn corrupted_product_reports_associativity_failure() {
        let mut fam = GroupFamily::build(FamilyKind::Symmetric, 4).unwrap();
        // redirect mu_{2,1} through a non-homomorphism by swapping two values
        let hom = fam.products_mut().get_mut(&(2, 1)).unwrap();
        hom.map.swap(0, 1);
        let report = fam.check_axioms(4);
        assert!(!report.all_passed());
        let failing: Vec<AxiomKind> = report
            .results
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.axiom)
            .collect();
        assert!(
            failing.contains(&AxiomKind::Associativity) || failing.contains(&AxiomKind::ProductMaps),
            "corruption must surface in associativity or the homomorphism check, got {failing:?}"
        );
    }

    #[test]
    fn iterated_products_parenthesisation_free() {
        let fam = GroupFamily::build(FamilyKind::Symmetric, 5).unwrap();
        // all parenthesisations of g1*g2*g3 agree (r = 3)
        for charges in [[1usize, 2, 2], [2, 2, 1], [2, 1, 2]] {
            let [p, q, r] = charges;
            for g in 0..fam.group(p).order() as u32 {
                for h in 0..fam.group(q).order() as u32 {
                    for k in 0..fam.group(r).order() as u32 {
                        let a = fam.product(p + q, r, fam.product(p, q, g, h), k);
                        let b = fam.product(p, q + r, g, fam.product(q, r, h, k));
                        assert_eq!(a, b);
                    }
                }
            }
        }
        // r = 4: left-normed vs right-normed bracketing, charges (1,2,1,1)
        for h in 0..fam.group(2).order() as u32 {
            let left = fam.product_many(&[1, 2, 1, 1], &[0, h, 0, 0]);
            let right = fam.product(1, 4, 0, fam.product(2, 2, h, fam.product(1, 1, 0, 0)));
            assert_eq!(left, right);
        }
    }
}

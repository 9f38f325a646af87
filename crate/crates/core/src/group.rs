//! Finite groups as enumerated element tables.
//!
//! Elements are indexed `0..order` with index 0 the identity. Groups of
//! order at most [`TABLE_LIMIT`] cache a full multiplication table; larger
//! groups (`GL_4(F_2)` has order 20160) multiply on the fly from element
//! data, so no quadratic table is ever required.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

/// Largest order for which a full multiplication table is cached.
pub const TABLE_LIMIT: usize = 2048;

/// Orders above this cap are rejected by the `GL` constructor.
pub const GL_ORDER_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, thiserror::Error)]
pub enum GroupError {
    #[error("symmetric group degree {0} exceeds the table guard (max 8)")]
    SymTooLarge(usize),
    #[error("GL_{n}(F_{p}) has order {order}, above the guard {limit}")]
    GlTooLarge { n: usize, p: u32, order: u64, limit: u64 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("the given index set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid group table: {0}")]
    BadTable(String),
}

#[derive(Debug)]
enum Carrier {
    /// Table-only group; element data is implicit.
    Raw,
    /// Permutations in one-line notation over `0..degree`.
    Perm {
        elems: Vec<Box<[u8]>>,
        index: HashMap<Box<[u8]>, u32>,
    },
    /// Invertible n x n matrices over F_p, entries row-major.
    Mat {
        n: usize,
        p: u16,
        elems: Vec<Box<[u16]>>,
        index: HashMap<Box<[u16]>, u32>,
    },
    Product {
        left: FiniteGroup,
        right: FiniteGroup,
    },
}

#[derive(Debug)]
struct Tables {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Debug)]
struct Inner {
    order: usize,
    carrier: Carrier,
    tables: Option<Tables>,
    label: String,
}

/// A finite group with a fixed element enumeration, identity at index 0.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.inner.tables {
            return t.mul[a as usize * self.inner.order + b as usize];
        }
        match &self.inner.carrier {
            Carrier::Raw => unreachable!("raw groups always carry tables"),
            Carrier::Perm { elems, index } => {
                let (x, y) = (&elems[a as usize], &elems[b as usize]);
                // composition acts left-to-right on points: (x*y)(i) = x(y(i))
                let composed: Box<[u8]> = y.iter().map(|&i| x[i as usize]).collect();
                index[&composed]
            }
            Carrier::Mat { n, p, elems, index } => {
                let composed = mat_mul(*n, *p, &elems[a as usize], &elems[b as usize]);
                index[&composed]
            }
            Carrier::Product { left, right } => {
                let rn = right.order() as u32;
                let (g1, h1) = (a / rn, a % rn);
                let (g2, h2) = (b / rn, b % rn);
                left.mul(g1, g2) * rn + right.mul(h1, h2)
            }
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        if let Some(t) = &self.inner.tables {
            return t.inv[a as usize];
        }
        match &self.inner.carrier {
            Carrier::Raw => unreachable!(),
            Carrier::Perm { elems, index } => {
                let x = &elems[a as usize];
                let mut inv = vec![0u8; x.len()];
                for (i, &xi) in x.iter().enumerate() {
                    inv[xi as usize] = i as u8;
                }
                index[&inv.into_boxed_slice()]
            }
            Carrier::Mat { n, p, elems, index } => {
                let inv = mat_inv(*n, *p, &elems[a as usize]).expect("group elements are invertible");
                index[&inv]
            }
            Carrier::Product { left, right } => {
                let rn = right.order() as u32;
                left.inv(a / rn) * rn + right.inv(a % rn)
            }
        }
    }

    /// Symmetric group on `{1..n}`; elements in lexicographic one-line
    /// order, which puts the identity first.
    pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
        if n > 8 {
            return Err(GroupError::SymTooLarge(n));
        }
        let elems: Vec<Box<[u8]>> = if n == 0 {
            vec![Box::from([])]
        } else {
            (0..n as u8).permutations(n).map(|v| v.into_boxed_slice()).collect()
        };
        Ok(Self::from_perms(elems, format!("S{n}")))
    }

    fn from_perms(elems: Vec<Box<[u8]>>, label: String) -> FiniteGroup {
        let index: HashMap<Box<[u8]>, u32> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let order = elems.len();
        let mut g = FiniteGroup {
            inner: Arc::new(Inner {
                order,
                carrier: Carrier::Perm { elems, index },
                tables: None,
                label,
            }),
        };
        g.cache_tables();
        g
    }

    /// General linear group of invertible `n x n` matrices over `F_p`,
    /// identity first, remaining elements in lexicographic entry order.
    pub fn general_linear(n: usize, p: u32) -> Result<FiniteGroup, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let order = gl_order(n, p);
        if order > GL_ORDER_LIMIT {
            return Err(GroupError::GlTooLarge { n, p, order, limit: GL_ORDER_LIMIT });
        }
        let cells = n * n;
        let mut elems: Vec<Box<[u16]>> = Vec::with_capacity(order as usize);
        let ident: Box<[u16]> =
            (0..cells).map(|k| if k / n == k % n { 1u16 } else { 0 }).collect();
        elems.push(ident.clone());
        let mut cur = vec![0u16; cells];
        loop {
            let candidate: Box<[u16]> = cur.clone().into_boxed_slice();
            if candidate != ident && mat_inv(n, p as u16, &candidate).is_some() {
                elems.push(candidate);
            }
            // odometer over all entry tuples
            let mut k = cells;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < p as u16 {
                    break;
                }
                cur[k] = 0;
                if k == 0 {
                    break;
                }
            }
            if cur.iter().all(|&x| x == 0) {
                break;
            }
        }
        debug_assert_eq!(elems.len() as u64, order);
        let index: HashMap<Box<[u16]>, u32> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let mut g = FiniteGroup {
            inner: Arc::new(Inner {
                order: elems.len(),
                carrier: Carrier::Mat { n, p: p as u16, elems, index },
                tables: None,
                label: format!("GL{n}(F{p})"),
            }),
        };
        g.cache_tables();
        Ok(g)
    }

    /// Direct product; element `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> FiniteGroup {
        let order = left.order() * right.order();
        let label = format!("{}x{}", left.label(), right.label());
        let mut g = FiniteGroup {
            inner: Arc::new(Inner {
                order,
                carrier: Carrier::Product { left: left.clone(), right: right.clone() },
                tables: None,
                label,
            }),
        };
        g.cache_tables();
        g
    }

    /// Cyclic group of order `n` (used by tests and as a table-group example).
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mul: Vec<u32> = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        Self::from_table(mul, format!("Z{n}")).expect("cyclic table is a group")
    }

    /// Build a group from a raw multiplication table (`mul[a*n + b]`).
    /// Identity must sit at index 0; associativity is checked exhaustively
    /// for orders up to 1000 and on a deterministic sample above.
    pub fn from_table(mul: Vec<u32>, label: String) -> Result<FiniteGroup, GroupError> {
        let order = (mul.len() as f64).sqrt() as usize;
        if order * order != mul.len() {
            return Err(GroupError::BadTable("table length is not a square".into()));
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::BadTable(format!("index 0 is not an identity at {a}")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) => {
                    if at(b, a) != 0 {
                        return Err(GroupError::BadTable(format!("one-sided inverse for {a}")));
                    }
                    inv[a] = b as u32;
                }
                None => return Err(GroupError::BadTable(format!("no inverse for {a}"))),
            }
        }
        let check = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if order <= 1000 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !check(a, b, c) {
                            return Err(GroupError::BadTable(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..200_000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (state >> 33) as usize % order;
                let b = (state >> 13) as usize % order;
                let c = state as usize % order;
                if !check(a, b, c) {
                    return Err(GroupError::BadTable(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
        Ok(FiniteGroup {
            inner: Arc::new(Inner {
                order,
                carrier: Carrier::Raw,
                tables: Some(Tables { mul, inv }),
                label,
            }),
        })
    }

    fn cache_tables(&mut self) {
        if self.inner.order > TABLE_LIMIT || self.inner.tables.is_some() {
            return;
        }
        let n = self.inner.order;
        let mut mul = vec![0u32; n * n];
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                mul[a as usize * n + b as usize] = self.mul(a, b);
            }
        }
        let mut inv = vec![0u32; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n as u32)
                .find(|&b| mul[a * n + b as usize] == 0)
                .expect("every element has an inverse");
        }
        let inner = Arc::get_mut(&mut self.inner).expect("fresh group is uniquely owned");
        inner.tables = Some(Tables { mul, inv });
    }

    /// Verify that `sub` (sorted, deduped) is closed under mul and inv.
    pub fn is_subgroup(&self, sub: &[u32]) -> bool {
        if sub.binary_search(&0).is_err() {
            return false;
        }
        sub.iter().all(|&a| {
            sub.binary_search(&self.inv(a)).is_ok()
                && sub.iter().all(|&b| sub.binary_search(&self.mul(a, b)).is_ok())
        })
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut frontier = vec![0u32];
        let mut out = vec![0u32];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        out.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Left cosets `g * sub`. Returns the coset id of every element plus
    /// the representatives; representatives are minimal element indices,
    /// and coset ids increase with their representative.
    pub fn cosets(&self, sub: &[u32]) -> Result<CosetDecomposition, GroupError> {
        let mut sorted = sub.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_subgroup(&sorted) {
            return Err(GroupError::NotSubgroup(format!(
                "{} indices given in {}",
                sorted.len(),
                self.label()
            )));
        }
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &s in &sorted {
                coset_of[self.mul(g, s) as usize] = id;
            }
        }
        Ok(CosetDecomposition { coset_of, reps })
    }

    /// Commutator subgroup `[G, G]`.
    pub fn commutator_subgroup(&self) -> Vec<u32> {
        let n = self.order() as u32;
        let mut gens = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.subgroup_closure(&gens)
    }

    /// dim of `G_ab tensor F_p` (the mod-p rank of the abelianisation).
    /// Computed from the coset group of the commutator subgroup; this is
    /// the independent oracle for `H_1(G; F_p)`.
    pub fn abelianization_rank_mod(&self, p: u32) -> usize {
        let comm = self.commutator_subgroup();
        let dec = self.cosets(&comm).expect("commutator subgroup is a subgroup");
        let q = dec.reps.len(); // |G_ab|
        // pth powers of the abelian quotient form a subgroup; the index is p^rank
        let coset_mul = |a: u32, b: u32| dec.coset_of[self.mul(dec.reps[a as usize], dec.reps[b as usize]) as usize];
        let mut powers: Vec<u32> = (0..q as u32)
            .map(|a| {
                let mut acc = 0u32;
                for _ in 0..p {
                    acc = coset_mul(acc, a);
                }
                acc
            })
            .collect();
        powers.sort_unstable();
        powers.dedup();
        let index = q / powers.len();
        let mut rank = 0;
        let mut m = index;
        while m > 1 {
            assert_eq!(m % p as usize, 0, "quotient index must be a power of p");
            m /= p as usize;
            rank += 1;
        }
        rank
    }

    /// Matrix entries of an element, when the group carries matrix data.
    pub fn matrix_entries(&self, a: u32) -> Option<&[u16]> {
        match &self.inner.carrier {
            Carrier::Mat { elems, .. } => Some(&elems[a as usize]),
            _ => None,
        }
    }

    /// Index of a matrix element given its entries.
    pub fn matrix_index(&self, entries: &[u16]) -> Option<u32> {
        match &self.inner.carrier {
            Carrier::Mat { index, .. } => index.get(entries).copied(),
            _ => None,
        }
    }

    /// One-line permutation data of an element, when available.
    pub fn perm_entries(&self, a: u32) -> Option<&[u8]> {
        match &self.inner.carrier {
            Carrier::Perm { elems, .. } => Some(&elems[a as usize]),
            _ => None,
        }
    }

    pub fn perm_index(&self, one_line: &[u8]) -> Option<u32> {
        match &self.inner.carrier {
            Carrier::Perm { index, .. } => index.get(one_line).copied(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

impl CosetDecomposition {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

fn mat_mul(n: usize, p: u16, a: &[u16], b: &[u16]) -> Box<[u16]> {
    let mut out = vec![0u16; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k] as u32;
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                let v = (out[i * n + j] as u32 + aik * b[k * n + j] as u32) % p as u32;
                out[i * n + j] = v as u16;
            }
        }
    }
    out.into_boxed_slice()
}

/// Inverse of an n x n matrix over F_p, or None when singular.
fn mat_inv(n: usize, p: u16, a: &[u16]) -> Option<Box<[u16]>> {
    let pp = p as i64;
    let mut aug: Vec<i64> = Vec::with_capacity(n * 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.push(a[i * n + j] as i64);
        }
        for j in 0..n {
            aug.push(i64::from(i == j));
        }
    }
    let w = 2 * n;
    for c in 0..n {
        let pivot = (c..n).find(|&r| aug[r * w + c] % pp != 0)?;
        if pivot != c {
            for j in 0..w {
                aug.swap(c * w + j, pivot * w + j);
            }
        }
        let inv = mod_inv(aug[c * w + c].rem_euclid(pp), pp);
        for j in 0..w {
            aug[c * w + j] = aug[c * w + j] * inv % pp;
        }
        for r in 0..n {
            if r != c && aug[r * w + c] % pp != 0 {
                let f = aug[r * w + c] % pp;
                for j in 0..w {
                    aug[r * w + j] = (aug[r * w + j] - f * aug[c * w + j]).rem_euclid(pp);
                }
            }
        }
    }
    Some((0..n * n).map(|k| aug[(k / n) * w + n + k % n].rem_euclid(pp) as u16).collect())
}

fn mod_inv(a: i64, p: i64) -> i64 {
    // extended Euclid
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p)
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn gl_order(n: usize, p: u32) -> u64 {
    let pn = (p as u64).pow(n as u32);
    (0..n as u32).map(|i| pn - (p as u64).pow(i)).product()
}

/// A map of groups given by its effect on element indices.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<u32>,
}

impl Homomorphism {
    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    /// Check `map(0) = 0` and `map(ab) = map(a)map(b)`; exhaustive when the
    /// source has at most ~2000 elements, deterministic sampling above.
    pub fn verify(&self) -> Result<(), String> {
        if self.map.len() != self.source.order() {
            return Err("map length differs from source order".into());
        }
        if self.map[0] != 0 {
            return Err("identity is not preserved".into());
        }
        let n = self.source.order() as u64;
        if n * n <= 4_000_000 {
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    if self.apply(self.source.mul(a, b)) != self.target.mul(self.apply(a), self.apply(b)) {
                        return Err(format!("not multiplicative at ({a},{b})"));
                    }
                }
            }
        } else {
            let mut state = 0x853c49e6748fea9bu64;
            for _ in 0..2_000_000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = ((state >> 32) % n) as u32;
                let b = (state % n) as u32;
                if self.apply(self.source.mul(a, b)) != self.target.mul(self.apply(a), self.apply(b)) {
                    return Err(format!("not multiplicative at ({a},{b})"));
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| {
            let fresh = !seen[y as usize];
            seen[y as usize] = true;
            fresh
        })
    }

    /// Image of the whole source, sorted.
    pub fn image(&self) -> Vec<u32> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_orders() {
        assert_eq!(FiniteGroup::symmetric(0).unwrap().order(), 1);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert!(FiniteGroup::symmetric(9).is_err());
    }

    #[test]
    fn gl_orders() {
        assert_eq!(FiniteGroup::general_linear(2, 2).unwrap().order(), 6);
        assert_eq!(FiniteGroup::general_linear(3, 2).unwrap().order(), 168);
        assert_eq!(FiniteGroup::general_linear(2, 3).unwrap().order(), 48);
        assert!(FiniteGroup::general_linear(4, 3).is_err());
    }

    #[test]
    fn group_axioms_spotcheck() {
        for g in [
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::general_linear(2, 3).unwrap(),
            FiniteGroup::cyclic(6),
        ] {
            let n = g.order() as u32;
            for a in 0..n {
                assert_eq!(g.mul(0, a), a);
                assert_eq!(g.mul(a, 0), a);
                assert_eq!(g.mul(a, g.inv(a)), 0);
            }
            for a in (0..n).step_by(3) {
                for b in (0..n).step_by(5) {
                    for c in (0..n).step_by(7) {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn direct_product_structure() {
        let a = FiniteGroup::symmetric(2).unwrap();
        let b = FiniteGroup::symmetric(3).unwrap();
        let p = FiniteGroup::direct_product(&a, &b);
        assert_eq!(p.order(), 12);
        // S2 x S2: all elements self-inverse
        let v4 = FiniteGroup::direct_product(&a, &a);
        assert_eq!(v4.order(), 4);
        for x in 0..4 {
            assert_eq!(v4.mul(x, x), 0);
        }
        // G x trivial is G under the index identification
        let triv = FiniteGroup::symmetric(0).unwrap();
        let gt = FiniteGroup::direct_product(&b, &triv);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(gt.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn coset_counts() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        // sub = {id, (12)}: the transposition fixing 2 (one-line "102")
        let t = s3.perm_index(&[1, 0, 2]).unwrap();
        let dec = s3.cosets(&[0, t]).unwrap();
        assert_eq!(dec.count(), 3);
        assert_eq!(s3.cosets(&(0..6).collect::<Vec<_>>()).unwrap().count(), 1);
        assert_eq!(s3.cosets(&[0]).unwrap().count(), 6);
        // Lagrange on every subgroup generated by one element
        for g in 0..6 {
            let sub = s3.subgroup_closure(&[g]);
            let d = s3.cosets(&sub).unwrap();
            assert_eq!(d.count() * sub.len(), 6);
        }
        // non-subgroup rejected
        assert!(s3.cosets(&[0, 1, 2, 3]).is_err() || s3.is_subgroup(&[0, 1, 2, 3]));
    }

    #[test]
    fn abelianization_ranks() {
        assert_eq!(FiniteGroup::symmetric(4).unwrap().abelianization_rank_mod(2), 1);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().abelianization_rank_mod(3), 0);
        assert_eq!(FiniteGroup::cyclic(6).abelianization_rank_mod(2), 1);
        assert_eq!(FiniteGroup::cyclic(6).abelianization_rank_mod(3), 1);
        assert_eq!(FiniteGroup::cyclic(6).abelianization_rank_mod(5), 0);
        // GL_3(F_2) is perfect
        assert_eq!(FiniteGroup::general_linear(3, 2).unwrap().abelianization_rank_mod(2), 0);
    }

    #[test]
    fn enumeration_deterministic() {
        let a = FiniteGroup::symmetric(4).unwrap();
        let b = FiniteGroup::symmetric(4).unwrap();
        for i in 0..a.order() as u32 {
            assert_eq!(a.perm_entries(i), b.perm_entries(i));
        }
    }
}

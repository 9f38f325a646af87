//! Algebra table files: a self-describing JSON document carrying the
//! bases, structure constants and distinguished elements of a charged
//! graded algebra. Used to ingest homology data for groups too large to
//! resolve from scratch. Coefficients are integers reduced mod p, so
//! only prime characteristic is supported; round trips are byte-exact
//! for files produced by [`save_algebra`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::{FieldSpec, MatrixF, Scalar};

use super::algebra::{ChargedGradedAlgebra, NamedClass};

#[derive(Debug, Clone, thiserror::Error)]
pub enum TableError {
    #[error("table parse failure: {0}")]
    Parse(String),
    #[error("table rejected: {0}")]
    Invalid(String),
    #[error("table files require prime characteristic (got {0})")]
    CharZero(u32),
}

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    charge: usize,
    degree: usize,
    name: String,
}

#[derive(Serialize, Deserialize)]
struct CoeffEntry {
    name: String,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct MultEntry {
    left: String,
    right: String,
    result: Vec<CoeffEntry>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    field_char: u32,
    nmax: usize,
    dmax: usize,
    basis: Vec<BasisEntry>,
    sigma: String,
    unit: String,
    mult: Vec<MultEntry>,
    named: BTreeMap<String, Vec<CoeffEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
}

pub fn save_algebra(algebra: &ChargedGradedAlgebra) -> Result<String, TableError> {
    let p = algebra.field.characteristic();
    if p == 0 {
        return Err(TableError::CharZero(0));
    }
    let mut basis = Vec::new();
    let mut sigma = None;
    let mut unit = None;
    for p_charge in 0..=algebra.n_max {
        for d in 0..=algebra.d_max {
            for (i, name) in algebra.basis_names(p_charge, d).iter().enumerate() {
                basis.push(BasisEntry {
                    charge: p_charge,
                    degree: d,
                    name: name.clone(),
                });
                if (p_charge, d) == (0, 0) && i == 0 {
                    unit = Some(name.clone());
                }
                if (p_charge, d) == (1, 0) && i == 0 {
                    sigma = Some(name.clone());
                }
            }
        }
    }
    let sigma = sigma.ok_or_else(|| TableError::Invalid("missing sigma basis element".into()))?;
    let unit = unit.ok_or_else(|| TableError::Invalid("missing unit basis element".into()))?;

    let mut mult = Vec::new();
    for (&(left, right), block) in algebra.mult_blocks() {
        let lnames = algebra.basis_names(left.0, left.1);
        let rnames = algebra.basis_names(right.0, right.1);
        let tnames = algebra.basis_names(left.0 + right.0, left.1 + right.1);
        let dim_r = rnames.len();
        for i in 0..lnames.len() {
            for j in 0..dim_r {
                let mut result = Vec::new();
                for (k, tname) in tnames.iter().enumerate() {
                    if let Scalar::Mod(v) = block.get(i * dim_r + j, k) {
                        if v != 0 {
                            result.push(CoeffEntry { name: tname.clone(), coeff: v as i64 });
                        }
                    }
                }
                if !result.is_empty() {
                    mult.push(MultEntry {
                        left: lnames[i].clone(),
                        right: rnames[j].clone(),
                        result,
                    });
                }
            }
        }
    }

    let mut named = BTreeMap::new();
    for (name, class) in algebra.named() {
        let tnames = algebra.basis_names(class.charge, class.degree);
        let mut entries = Vec::new();
        for (k, tname) in tnames.iter().enumerate() {
            if let Scalar::Mod(v) = class.coords.get(0, k) {
                if v != 0 {
                    entries.push(CoeffEntry { name: tname.clone(), coeff: v as i64 });
                }
            }
        }
        named.insert(name.clone(), entries);
    }

    let file = TableFile {
        field_char: p,
        nmax: algebra.n_max,
        dmax: algebra.d_max,
        basis,
        sigma,
        unit,
        mult,
        named,
        provenance: algebra.provenance.clone(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| TableError::Parse(e.to_string()))
}

pub fn load_algebra(text: &str) -> Result<ChargedGradedAlgebra, TableError> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
    let field = FieldSpec::prime(file.field_char)
        .map_err(|_| TableError::CharZero(file.field_char))?;

    // index basis names
    let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut names: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    let mut by_name: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    for entry in &file.basis {
        if entry.charge > file.nmax || entry.degree > file.dmax {
            return Err(TableError::Invalid(format!(
                "basis element {} outside the declared window",
                entry.name
            )));
        }
        let key = (entry.charge, entry.degree);
        let slot = names.entry(key).or_default();
        if by_name
            .insert(entry.name.clone(), (entry.charge, entry.degree, slot.len()))
            .is_some()
        {
            return Err(TableError::Invalid(format!("duplicate basis name {}", entry.name)));
        }
        slot.push(entry.name.clone());
        *dims.entry(key).or_insert(0) += 1;
    }
    for p in 0..=file.nmax {
        for d in 0..=file.dmax {
            dims.entry((p, d)).or_insert(0);
        }
    }

    let unit_ref = by_name
        .get(&file.unit)
        .ok_or_else(|| TableError::Invalid("file missing its declared unit".into()))?;
    if (unit_ref.0, unit_ref.1) != (0, 0) {
        return Err(TableError::Invalid("unit must live at charge 0, degree 0".into()));
    }
    let sigma_ref = by_name
        .get(&file.sigma)
        .ok_or_else(|| TableError::Invalid("file missing sigma".into()))?;
    if (sigma_ref.0, sigma_ref.1) != (1, 0) {
        return Err(TableError::Invalid("sigma must live at charge 1, degree 0".into()));
    }

    // assemble structure-constant blocks
    let mut mult: BTreeMap<((usize, usize), (usize, usize)), MatrixF> = BTreeMap::new();
    for entry in &file.mult {
        let &(pl, dl, il) = by_name
            .get(&entry.left)
            .ok_or_else(|| TableError::Invalid(format!("unknown left factor {}", entry.left)))?;
        let &(pr, dr, ir) = by_name
            .get(&entry.right)
            .ok_or_else(|| TableError::Invalid(format!("unknown right factor {}", entry.right)))?;
        let target = (pl + pr, dl + dr);
        if target.0 > file.nmax || target.1 > file.dmax {
            return Err(TableError::Invalid(format!(
                "product {} * {} lands outside the window",
                entry.left, entry.right
            )));
        }
        let dim_r = dims[&(pr, dr)];
        let rows = dims[&(pl, dl)] * dim_r;
        let cols = dims[&target];
        let block = mult
            .entry(((pl, dl), (pr, dr)))
            .or_insert_with(|| MatrixF::zero(field, rows, cols));
        for coeff in &entry.result {
            let &(pt, dt, it) = by_name
                .get(&coeff.name)
                .ok_or_else(|| TableError::Invalid(format!("unknown result name {}", coeff.name)))?;
            if (pt, dt) != target {
                return Err(TableError::Invalid(format!(
                    "product {} * {} declares a result {} of the wrong bidegree",
                    entry.left, entry.right, coeff.name
                )));
            }
            block.set_i64(il * dim_r + ir, it, coeff.coeff);
        }
    }

    let mut named = BTreeMap::new();
    for (name, entries) in &file.named {
        if entries.is_empty() {
            return Err(TableError::Invalid(format!("named class {name} has no support")));
        }
        let &(p, d, _) = by_name
            .get(&entries[0].name)
            .ok_or_else(|| TableError::Invalid(format!("unknown name in class {name}")))?;
        let mut coords = MatrixF::zero(field, 1, dims[&(p, d)]);
        for e in entries {
            let &(pe, de, ie) = by_name
                .get(&e.name)
                .ok_or_else(|| TableError::Invalid(format!("unknown name in class {name}")))?;
            if (pe, de) != (p, d) {
                return Err(TableError::Invalid(format!("named class {name} mixes bidegrees")));
            }
            coords.set_i64(0, ie, e.coeff);
        }
        named.insert(name.clone(), NamedClass { charge: p, degree: d, coords });
    }

    let algebra = ChargedGradedAlgebra::from_parts(
        field,
        file.nmax,
        file.dmax,
        dims,
        names,
        mult,
        named,
        file.provenance.clone(),
    );
    algebra
        .verify_invariants()
        .map_err(|e| TableError::Invalid(e.to_string()))?;
    Ok(algebra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, GroupFamily};
    use crate::homology::algebra::algebra_build;
    use crate::homology::bar::DEFAULT_BAR_GUARD;

    #[test]
    fn roundtrip_symmetric() {
        let fam = GroupFamily::build(FamilyKind::Symmetric, 3).unwrap();
        let f2 = FieldSpec::prime(2).unwrap();
        let a = algebra_build(&fam, f2, 3, 1, DEFAULT_BAR_GUARD).unwrap();
        let text = save_algebra(&a).unwrap();
        let b = load_algebra(&text).unwrap();
        let text2 = save_algebra(&b).unwrap();
        assert_eq!(text, text2, "round trip must be byte-exact");
        for p in 0..=3 {
            for d in 0..=1 {
                assert_eq!(a.dim(p, d), b.dim(p, d));
            }
        }
        assert_eq!(a.mult_blocks().len(), b.mult_blocks().len());
        for (k, v) in a.mult_blocks() {
            assert_eq!(v, &b.mult_blocks()[k]);
        }
    }

    #[test]
    fn reject_missing_sigma() {
        let text = r#"{
            "field_char": 2, "nmax": 1, "dmax": 0,
            "basis": [{"charge":0,"degree":0,"name":"one"}],
            "sigma": "sigma", "unit": "one", "mult": [], "named": {}
        }"#;
        let err = load_algebra(text).unwrap_err();
        assert!(err.to_string().contains("sigma"));
    }

    #[test]
    fn reject_non_associative() {
        // two charge-1 generators with sigma*sigma = g2 but (sigma*sigma)*sigma
        // != sigma*(sigma*sigma) by corrupting one entry
        let fam = GroupFamily::build(FamilyKind::Symmetric, 3).unwrap();
        let f2 = FieldSpec::prime(2).unwrap();
        let a = algebra_build(&fam, f2, 3, 0, DEFAULT_BAR_GUARD).unwrap();
        let text = save_algebra(&a).unwrap();
        // drop the sigma*x2 entry: makes (s*s)*s = 0 != s*(s*s)
        let corrupted = text.replacen(
            r#""left": "sigma",
      "right": "x2d0n0""#,
            r#""left": "x2d0n0",
      "right": "x3d0n0""#,
            1,
        );
        assert!(corrupted != text, "test corruption must apply");
        let err = load_algebra(&corrupted).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("associativity") || msg.contains("window") || msg.contains("unit"),
            "got: {msg}"
        );
    }
}

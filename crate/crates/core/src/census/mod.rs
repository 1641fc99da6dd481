//! Isomorphism census over all models of a field, with reports and DOT export.

mod cache;
mod report;

pub use cache::{Cache, CacheEntry, CacheKey, CACHE_ENV, CACHE_VERSION};
pub use report::{export_dot, report, ModelReport};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::canon::{automorphism_group, field_weighted_graph, CanonicalForm, IsoMode};
use crate::error::{Error, Result};
use crate::field::{enumerate_irreducibles, FieldModel, Poly};

/// Largest field order classified unless raised explicitly.
pub const DEFAULT_LIMIT: u64 = 700;

fn decimal<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub p: u32,
    pub k: usize,
    pub polynomial: String,
    /// Row index of the lexicographically least member of the class.
    pub class_id: usize,
    #[serde(serialize_with = "decimal")]
    pub aut_order: BigUint,
    pub primitive: bool,
    pub normal: bool,
    pub reciprocal_partner: String,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub mode: IsoMode,
    pub limit: u64,
    pub cache: Option<Cache>,
    /// Recompute every entry and compare with what the cache holds.
    pub verify_cache: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mode: IsoMode::Default,
            limit: DEFAULT_LIMIT,
            cache: None,
            verify_cache: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub p: u32,
    pub k: usize,
    pub mode: IsoMode,
    pub rows: Vec<CensusRow>,
    /// Observations that break the patterns seen in published tables.
    pub findings: Vec<String>,
    /// Keys whose cached value disagrees with recomputation.
    pub cache_mismatches: Vec<String>,
    pub cache_hits: usize,
}

struct Computed {
    form: CanonicalForm,
    aut_order: BigUint,
    hit: bool,
    mismatch: Option<String>,
}

fn compute(model: &FieldModel, key: &CacheKey, opts: &ClassifyOptions) -> Result<Computed> {
    let cached = opts.cache.as_ref().and_then(|c| c.load(key));
    if let (Some(entry), false) = (&cached, opts.verify_cache) {
        let form = entry.canonical_form().expect("validated on load");
        let aut_order = entry.aut_order.parse().expect("validated on load");
        return Ok(Computed {
            form,
            aut_order,
            hit: true,
            mismatch: None,
        });
    }
    let group = automorphism_group(&field_weighted_graph(model, opts.mode));
    let fresh = CacheEntry::new(key, &group.canonical, &group.order.to_string());
    let mismatch = match &cached {
        Some(entry) if *entry != fresh => Some(key.text()),
        _ => None,
    };
    if let (Some(cache), None) = (&opts.cache, &cached) {
        cache.store(key, &fresh)?;
    }
    Ok(Computed {
        form: group.canonical,
        aut_order: group.order,
        hit: cached.is_some(),
        mismatch,
    })
}

/// Classifies every irreducible monic polynomial of degree k over F_p by
/// the isomorphism type of its graph.
///
/// For k = 1 the polynomial x is skipped, its model has x = 0.
pub fn classify(p: u32, k: usize, opts: &ClassifyOptions) -> Result<Census> {
    let order = (p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if order > opts.limit {
        return Err(Error::LimitExceeded {
            order,
            limit: opts.limit,
        });
    }
    let polys: Vec<Poly> = enumerate_irreducibles(p, k)?
        .into_iter()
        .filter(|f| !(k == 1 && f.coeff(0) == 0))
        .collect();
    let computed: Vec<(FieldModel, Computed)> = polys
        .par_iter()
        .map(|f| {
            let model = FieldModel::new(f)?;
            let key = CacheKey {
                p,
                k,
                polynomial: f.to_string(),
                mode: opts.mode,
            };
            let c = compute(&model, &key, opts)?;
            Ok((model, c))
        })
        .collect::<Result<_>>()?;

    let mut first_of: BTreeMap<&CanonicalForm, usize> = BTreeMap::new();
    let mut rows = Vec::with_capacity(polys.len());
    for (i, (model, c)) in computed.iter().enumerate() {
        let class_id = *first_of.entry(&c.form).or_insert(i);
        let partner = model
            .modulus()
            .reciprocal()
            .map_or_else(|_| String::new(), |r| r.to_string());
        rows.push(CensusRow {
            p,
            k,
            polynomial: model.modulus().to_string(),
            class_id,
            aut_order: c.aut_order.clone(),
            primitive: model.is_primitive(),
            normal: model.is_normal(),
            reciprocal_partner: partner,
        });
    }
    let findings = findings(&rows);
    Ok(Census {
        p,
        k,
        mode: opts.mode,
        findings,
        cache_mismatches: computed.iter().filter_map(|(_, c)| c.mismatch.clone()).collect(),
        cache_hits: computed.iter().filter(|(_, c)| c.hit).count(),
        rows,
    })
}

fn findings(rows: &[CensusRow]) -> Vec<String> {
    let mut out = Vec::new();
    for (id, members) in classes(rows) {
        let names: Vec<&str> = members.iter().map(|&i| rows[i].polynomial.as_str()).collect();
        if members.len() > 2 {
            out.push(format!("class {id} has {} members: {}", members.len(), names.join(", ")));
        }
        if members.len() == 2 && rows[members[0]].reciprocal_partner != rows[members[1]].polynomial {
            out.push(format!("non-reciprocal isomorphic pair: {}", names.join(", ")));
        }
        if members.iter().any(|&i| rows[i].primitive != rows[id].primitive) {
            out.push(format!("primitive flag differs within class: {}", names.join(", ")));
        }
        if members.iter().any(|&i| rows[i].normal != rows[id].normal) {
            out.push(format!("normal flag differs within class: {}", names.join(", ")));
        }
        if members.iter().any(|&i| rows[i].aut_order != rows[id].aut_order) {
            out.push(format!("automorphism orders differ within class: {}", names.join(", ")));
        }
    }
    out
}

/// class_id -> member row indices, in class_id order.
pub fn classes(rows: &[CensusRow]) -> BTreeMap<usize, Vec<usize>> {
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        map.entry(r.class_id).or_default().push(i);
    }
    map
}

pub const CSV_HEADER: &str = "p,k,polynomial,class_id,aut_order,primitive,normal,reciprocal_partner";

impl Census {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.p, r.k, r.polynomial, r.class_id, r.aut_order, r.primitive, r.normal, r.reciprocal_partner
            );
        }
        out
    }

    /// Grouped table: one line per class, members joined by `<br>`.
    pub fn to_markdown(&self) -> String {
        let mut out = format!("### {}^{}\n\n", self.p, self.k);
        out.push_str("| Irreducible monic polynomials with isomorphic graphs | Order of Aut(X_f) |\n");
        out.push_str("|---|---|\n");
        for (id, members) in classes(&self.rows) {
            let names: Vec<String> = members
                .iter()
                .map(|&i| self.rows[i].polynomial.replace('*', ""))
                .collect();
            let _ = writeln!(out, "| {} | {} |", names.join("<br>"), self.rows[id].aut_order);
        }
        if !self.findings.is_empty() {
            out.push_str("\nFindings:\n\n");
            for f in &self.findings {
                let _ = writeln!(out, "- {f}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_squared() {
        let c = classify(3, 2, &ClassifyOptions::default()).unwrap();
        let got: Vec<(&str, usize, String)> = c
            .rows
            .iter()
            .map(|r| (r.polynomial.as_str(), r.class_id, r.aut_order.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("x^2 + 1", 0, "8".to_string()),
                ("x^2 + x + 2", 1, "8".to_string()),
                ("x^2 + 2*x + 2", 1, "8".to_string()),
            ]
        );
        assert!(c.findings.is_empty());
        assert!(c.to_csv().starts_with(CSV_HEADER));
        assert!(c.to_markdown().contains("| x^2 + x + 2<br>x^2 + 2x + 2 | 8 |"));
    }

    #[test]
    fn limit_is_enforced() {
        let opts = ClassifyOptions {
            limit: 100,
            ..Default::default()
        };
        assert_eq!(
            classify(5, 3, &opts).err(),
            Some(Error::LimitExceeded { order: 125, limit: 100 })
        );
    }

    #[test]
    fn degree_one_skips_x() {
        let c = classify(5, 1, &ClassifyOptions::default()).unwrap();
        assert_eq!(c.rows.len(), 4);
    }
}

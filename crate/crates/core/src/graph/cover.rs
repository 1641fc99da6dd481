//! The covering graph on K x K^* and its deck transformations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::FieldModel;

use super::{Edge, EdgeKind, FieldGraph, Variant};

/// Directed covering graph of X_f.
///
/// Vertex (y, z) has index `y * (q - 1) + (z - 1)` where y, z are element
/// codes and z != 0.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    pub graph: FieldGraph,
    model: FieldModel,
}

impl CoverGraph {
    pub fn model(&self) -> &FieldModel {
        &self.model
    }

    fn units(&self) -> u64 {
        self.model.order() - 1
    }

    pub fn vertex(&self, y: u64, z: u64) -> usize {
        debug_assert!(z != 0);
        (y * self.units() + (z - 1)) as usize
    }

    pub fn coords(&self, v: usize) -> (u64, u64) {
        let u = self.units();
        (v as u64 / u, v as u64 % u + 1)
    }

    /// The covering map (y, z) -> y.
    pub fn project(&self, v: usize) -> usize {
        self.coords(v).0 as usize
    }
}

pub fn build_cover(model: &FieldModel) -> CoverGraph {
    let q = model.order();
    let units = q - 1;
    let k = model.k();
    let idx = |y: u64, z: u64| (y * units + (z - 1)) as usize;
    let mut edges = Vec::with_capacity((q * units) as usize * 2 * k);
    for y in 0..q {
        let add_targets: Vec<u64> = model.generators().iter().map(|&s| model.add(y, s)).collect();
        for z in 1..q {
            for (i, &t) in add_targets.iter().enumerate() {
                edges.push(Edge {
                    from: idx(y, z),
                    to: idx(t, z),
                    kind: EdgeKind::additive(i),
                });
            }
        }
    }
    for y in 1..q {
        for i in 0..k {
            let sy = model.mul_by_generator(i, y);
            for z in 1..q {
                edges.push(Edge {
                    from: idx(y, z),
                    to: idx(sy, model.mul_by_generator(i, z)),
                    kind: EdgeKind::multiplicative(i),
                });
            }
        }
    }
    let graph = FieldGraph {
        n: (q * units) as usize,
        directed: true,
        edges,
        meta: Some(super::GraphMeta {
            p: model.p(),
            modulus: model.modulus().clone(),
            variant: Variant::Cover,
        }),
    };
    CoverGraph {
        graph,
        model: model.clone(),
    }
}

/// The deck transformation F_a(y, z) = (y, a z) as a vertex permutation.
pub fn deck_transform(cover: &CoverGraph, a: u64) -> Result<Vec<usize>> {
    let model = &cover.model;
    model.check(a)?;
    if a == 0 {
        return Err(Error::ZeroDeckElement);
    }
    Ok((0..cover.graph.n)
        .map(|v| {
            let (y, z) = cover.coords(v);
            cover.vertex(y, model.mul(a, z))
        })
        .collect())
}

type EdgeKey = (usize, usize, EdgeKind);

fn edge_key(from: usize, to: usize, kind: EdgeKind, directed: bool) -> EdgeKey {
    if directed {
        (from, to, kind)
    } else {
        (from.min(to), from.max(to), kind)
    }
}

/// Incident edge ends per vertex: (is_out, key). Undirected ends all use `true`;
/// a loop contributes one entry.
fn incidence(
    n: usize,
    edges: impl Iterator<Item = (usize, usize, EdgeKey)>,
    directed: bool,
) -> Vec<Vec<(bool, EdgeKey)>> {
    let mut inc = vec![Vec::new(); n];
    for (from, to, key) in edges {
        inc[from].push((true, key));
        if from != to {
            inc[to].push((!directed, key));
        } else if directed {
            inc[to].push((false, key));
        }
    }
    for list in inc.iter_mut() {
        list.sort_unstable();
    }
    inc
}

/// Checks that the projection is a graph morphism preserving edge kinds and a
/// local bijection on incident edges at every cover vertex.
pub fn verify_covering(cover: &CoverGraph, base: &FieldGraph) -> Result<bool> {
    let same_model = base.meta.as_ref().is_some_and(|m| {
        m.p == cover.model.p() && &m.modulus == cover.model.modulus()
    });
    if !same_model || base.n as u64 != cover.model.order() {
        return Err(Error::ModelMismatch);
    }
    let directed = base.directed;
    let mut base_keys: HashMap<EdgeKey, usize> = HashMap::new();
    for e in &base.edges {
        *base_keys
            .entry(edge_key(e.from, e.to, e.kind, directed))
            .or_default() += 1;
    }
    let projected: Vec<(usize, usize, EdgeKey)> = cover
        .graph
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (cover.project(e.from), cover.project(e.to));
            (e.from, e.to, edge_key(a, b, e.kind, directed))
        })
        .collect();
    if projected.iter().any(|(_, _, key)| !base_keys.contains_key(key)) {
        return Ok(false);
    }
    let base_inc = incidence(
        base.n,
        base.edges
            .iter()
            .map(|e| (e.from, e.to, edge_key(e.from, e.to, e.kind, directed))),
        directed,
    );
    let cover_inc = incidence(cover.graph.n, projected.into_iter(), directed);
    Ok(cover_inc
        .iter()
        .enumerate()
        .all(|(v, list)| *list == base_inc[cover.project(v)]))
}

impl FieldGraph {
    /// True iff `perm` maps the edge multiset onto itself (kinds kept).
    pub fn preserves_edges(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        let key = |from: usize, to: usize, kind: EdgeKind| edge_key(from, to, kind, self.directed);
        let mut original: Vec<EdgeKey> = self.edges.iter().map(|e| key(e.from, e.to, e.kind)).collect();
        let mut mapped: Vec<EdgeKey> = self
            .edges
            .iter()
            .map(|e| key(perm[e.from], perm[e.to], e.kind))
            .collect();
        original.sort_unstable();
        mapped.sort_unstable();
        original == mapped
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_poly;
    use crate::graph::{build_digraph, to_undirected, EdgeClass};

    fn model(text: &str, p: u32) -> FieldModel {
        FieldModel::new(&parse_poly(text, p).unwrap()).unwrap()
    }

    #[test]
    fn cover_sizes_and_fibre_over_zero() {
        let m = model("x^2+x+1", 2);
        let c = build_cover(&m);
        assert_eq!(c.graph.n, 12);
        for e in &c.graph.edges {
            if e.kind.class == EdgeClass::Multiplicative {
                assert_ne!(c.project(e.from), 0);
                assert_ne!(c.project(e.to), 0);
            } else {
                assert_eq!(c.coords(e.from).1, c.coords(e.to).1);
            }
        }
        for v in 0..c.graph.n {
            let (y, z) = c.coords(v);
            assert_eq!(c.vertex(y, z), v);
        }
    }

    #[test]
    fn projection_of_edges_is_edge() {
        let m = model("x^2+x+2", 3);
        let c = build_cover(&m);
        let base = build_digraph(&m);
        assert_eq!(c.graph.n, 72);
        assert!(verify_covering(&c, &base).unwrap());
        assert!(verify_covering(&c, &to_undirected(&base)).is_ok());
    }

    #[test]
    fn deleting_an_edge_breaks_the_cover() {
        let m = model("x^2+x+1", 2);
        let mut c = build_cover(&m);
        let base = build_digraph(&m);
        c.graph.edges.pop();
        assert!(!verify_covering(&c, &base).unwrap());
    }

    #[test]
    fn mismatched_models_rejected() {
        let c = build_cover(&model("x^2+x+2", 3));
        let base = build_digraph(&model("x^2+2x+2", 3));
        assert_eq!(verify_covering(&c, &base), Err(Error::ModelMismatch));
    }

    #[test]
    fn deck_group_law_and_automorphism() {
        let m = model("x^2+x+1", 2);
        let c = build_cover(&m);
        let id: Vec<usize> = (0..c.graph.n).collect();
        assert_eq!(deck_transform(&c, 1).unwrap(), id);
        assert_eq!(deck_transform(&c, 0), Err(Error::ZeroDeckElement));
        for a in 1..m.order() {
            let fa = deck_transform(&c, a).unwrap();
            assert!(c.graph.preserves_edges(&fa));
            for v in 0..c.graph.n {
                assert_eq!(c.project(fa[v]), c.project(v));
            }
            for b in 1..m.order() {
                let fb = deck_transform(&c, b).unwrap();
                let fab = deck_transform(&c, m.mul(a, b)).unwrap();
                let composed: Vec<usize> = (0..c.graph.n).map(|v| fa[fb[v]]).collect();
                assert_eq!(composed, fab);
            }
        }
    }
}

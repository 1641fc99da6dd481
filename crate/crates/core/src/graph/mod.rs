//! Construction of the field graph, its subgraphs, and the covering graph.

mod cover;

pub use cover::{build_cover, deck_transform, verify_covering, CoverGraph};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldModel, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeClass {
    Additive,
    Multiplicative,
}

/// Edge class plus the index of the generator s in S that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeKind {
    pub class: EdgeClass,
    pub gen_index: usize,
}

impl EdgeKind {
    pub fn additive(gen_index: usize) -> Self {
        EdgeKind {
            class: EdgeClass::Additive,
            gen_index,
        }
    }

    pub fn multiplicative(gen_index: usize) -> Self {
        EdgeKind {
            class: EdgeClass::Multiplicative,
            gen_index,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    Additive,
    Multiplicative,
    Core(usize),
    Cover,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Full => write!(f, "full"),
            Variant::Additive => write!(f, "additive"),
            Variant::Multiplicative => write!(f, "multiplicative"),
            Variant::Core(i) => write!(f, "core({i})"),
            Variant::Cover => write!(f, "cover"),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    /// Accepts `full`, `additive`, `multiplicative`, `cover`, `core(i)` or `core:i`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "full" => return Ok(Variant::Full),
            "additive" | "add" => return Ok(Variant::Additive),
            "multiplicative" | "mul" => return Ok(Variant::Multiplicative),
            "cover" => return Ok(Variant::Cover),
            _ => {}
        }
        let index = t
            .strip_prefix("core(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("core:"));
        index
            .and_then(|i| i.parse::<usize>().ok())
            .map(Variant::Core)
            .ok_or_else(|| Error::InvalidVariant(s.to_string()))
    }
}

/// Where a graph came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMeta {
    pub p: u32,
    pub modulus: Poly,
    pub variant: Variant,
}

/// A directed or undirected multigraph with kind-tagged edges.
///
/// Vertices are element codes, except for the multiplicative subgraph
/// (code - 1, zero removed) and the cover (see [`CoverGraph`]).
#[derive(Clone, Debug)]
pub struct FieldGraph {
    pub n: usize,
    pub directed: bool,
    pub edges: Vec<Edge>,
    pub meta: Option<GraphMeta>,
}

impl FieldGraph {
    pub fn new(n: usize, directed: bool, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.iter().all(|e| e.from < n && e.to < n));
        FieldGraph {
            n,
            directed,
            edges,
            meta: None,
        }
    }

    pub fn count_class(&self, class: EdgeClass) -> usize {
        self.edges.iter().filter(|e| e.kind.class == class).count()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.from] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.to] += 1;
        }
        d
    }

    /// Number of edge ends at each vertex; a loop counts twice.
    pub fn weighted_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.from] += 1;
            d[e.to] += 1;
        }
        d
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.from == e.to).count()
    }

    /// Multiplicity of each unordered pair {u, v}, u <= v, sorted.
    pub fn pair_multiplicities(&self) -> Vec<((usize, usize), usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.from.min(e.to), e.from.max(e.to)))
            .collect();
        pairs.sort_unstable();
        let mut out: Vec<((usize, usize), usize)> = Vec::new();
        for pr in pairs {
            match out.last_mut() {
                Some((last, m)) if *last == pr => *m += 1,
                _ => out.push((pr, 1)),
            }
        }
        out
    }

    pub fn same_model(&self, other: &FieldGraph) -> bool {
        match (&self.meta, &other.meta) {
            (Some(a), Some(b)) => a.p == b.p && a.modulus == b.modulus,
            _ => false,
        }
    }
}

fn meta(model: &FieldModel, variant: Variant) -> Option<GraphMeta> {
    Some(GraphMeta {
        p: model.p(),
        modulus: model.modulus().clone(),
        variant,
    })
}

/// Directed graph on all p^k elements: y -> y + s for every y, y -> s*y for y != 0.
pub fn build_digraph(model: &FieldModel) -> FieldGraph {
    let mut edges = additive_edges(model, None);
    edges.extend(multiplicative_edges(model, None, 0));
    FieldGraph {
        n: model.order() as usize,
        directed: true,
        edges,
        meta: meta(model, Variant::Full),
    }
}

fn additive_edges(model: &FieldModel, only: Option<usize>) -> Vec<Edge> {
    let q = model.order();
    let mut edges = Vec::with_capacity(q as usize * model.k());
    for y in 0..q {
        for (i, &s) in model.generators().iter().enumerate() {
            if only.is_some_and(|o| o != i) {
                continue;
            }
            edges.push(Edge {
                from: y as usize,
                to: model.add(y, s) as usize,
                kind: EdgeKind::additive(i),
            });
        }
    }
    edges
}

/// Multiplicative edges with vertex indices shifted down by `offset`.
fn multiplicative_edges(model: &FieldModel, only: Option<usize>, offset: usize) -> Vec<Edge> {
    let q = model.order();
    let mut edges = Vec::with_capacity((q as usize - 1) * model.k());
    for y in 1..q {
        for i in 0..model.k() {
            if only.is_some_and(|o| o != i) {
                continue;
            }
            edges.push(Edge {
                from: y as usize - offset,
                to: model.mul_by_generator(i, y) as usize - offset,
                kind: EdgeKind::multiplicative(i),
            });
        }
    }
    edges
}

/// Forgets orientation; every directed edge survives as one undirected edge.
pub fn to_undirected(g: &FieldGraph) -> FieldGraph {
    FieldGraph {
        directed: false,
        ..g.clone()
    }
}

/// Additive, multiplicative (zero removed) or core(i) subgraph, directed.
pub fn build_subgraph(model: &FieldModel, variant: Variant) -> Result<FieldGraph> {
    let q = model.order() as usize;
    let (n, edges) = match variant {
        Variant::Full => return Ok(build_digraph(model)),
        Variant::Additive => (q, additive_edges(model, None)),
        Variant::Multiplicative => (q - 1, multiplicative_edges(model, None, 1)),
        Variant::Core(i) if i < model.k() => {
            let mut edges = additive_edges(model, Some(i));
            edges.extend(multiplicative_edges(model, Some(i), 0));
            (q, edges)
        }
        Variant::Core(_) | Variant::Cover => {
            return Err(Error::InvalidVariant(variant.to_string()))
        }
    };
    Ok(FieldGraph {
        n,
        directed: true,
        edges,
        meta: meta(model, variant),
    })
}

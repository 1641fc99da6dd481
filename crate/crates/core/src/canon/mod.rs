//! Canonical labelling, isomorphism and automorphism groups of weighted
//! undirected multigraphs.
//!
//! A graph is a symmetric matrix of small non-negative integers (edge
//! multiplicities, loops on the diagonal) with an optional vertex colouring.

mod group;
mod oracle;
mod partition;
mod search;

pub use group::{schreier_sims_order, PermGroup};
pub use oracle::{brute_force_aut_count, brute_force_iso, ORACLE_MAX_N};

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldModel;
use crate::graph::{build_digraph, EdgeClass, FieldGraph};

/// How a [`FieldGraph`] is turned into weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoMode {
    /// Multiplicity of each unordered pair, edge kinds forgotten.
    #[default]
    Default,
    /// Additive and multiplicative multiplicities kept apart:
    /// `additive + 65536 * multiplicative`.
    Strict,
    /// Underlying simple graph with loops: every weight is 0 or 1.
    Simple,
}

impl IsoMode {
    pub fn tag(self) -> &'static str {
        match self {
            IsoMode::Default => "default",
            IsoMode::Strict => "strict",
            IsoMode::Simple => "simple",
        }
    }
}

impl fmt::Display for IsoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for IsoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "default" => Ok(IsoMode::Default),
            "strict" => Ok(IsoMode::Strict),
            "simple" => Ok(IsoMode::Simple),
            _ => Err(Error::Parse {
                text: s.to_string(),
                reason: "mode must be default, strict or simple".into(),
            }),
        }
    }
}

/// Weighted undirected graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    /// (neighbour, weight) with weight > 0, sorted by neighbour, no self entries
    pub(crate) adj: Vec<Vec<(u32, u32)>>,
    pub(crate) loops: Vec<u32>,
    pub(crate) colors: Vec<u32>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            adj: vec![Vec::new(); n],
            loops: vec![0; n],
            colors: vec![0; n],
        }
    }

    /// From a dense matrix; rejects non-square or asymmetric input.
    pub fn from_matrix(w: &[Vec<u32>]) -> Result<Self> {
        let n = w.len();
        let mut g = WeightedGraph::new(n);
        for (u, row) in w.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Asymmetric);
            }
            for (v, &x) in row.iter().enumerate() {
                if x != w[v][u] {
                    return Err(Error::Asymmetric);
                }
                if u == v {
                    g.loops[u] = x;
                } else if x > 0 {
                    g.adj[u].push((v as u32, x));
                }
            }
        }
        Ok(g)
    }

    /// Sums weights over a list of unordered pairs (loops allowed).
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize, u32)>) -> Self {
        let mut g = WeightedGraph::new(n);
        let mut all: Vec<(u32, u32, u32)> = Vec::new();
        for (u, v, w) in pairs {
            assert!(u < n && v < n, "vertex out of range");
            if w == 0 {
                continue;
            }
            if u == v {
                g.loops[u] += w;
            } else {
                all.push((u as u32, v as u32, w));
                all.push((v as u32, u as u32, w));
            }
        }
        all.sort_unstable();
        for (u, v, w) in all {
            let list = &mut g.adj[u as usize];
            match list.last_mut() {
                Some((last, acc)) if *last == v => *acc += w,
                _ => list.push((v, w)),
            }
        }
        g
    }

    /// Orientation is ignored: each edge of `g` adds to its unordered pair.
    pub fn from_field_graph(g: &FieldGraph, mode: IsoMode) -> Self {
        let pairs = g.edges.iter().map(|e| {
            let w = match (mode, e.kind.class) {
                (IsoMode::Strict, EdgeClass::Multiplicative) => 1 << 16,
                _ => 1,
            };
            (e.from, e.to, w)
        });
        let mut wg = WeightedGraph::from_pairs(g.n, pairs);
        if mode == IsoMode::Simple {
            for list in wg.adj.iter_mut() {
                for (_, w) in list.iter_mut() {
                    *w = 1;
                }
            }
            for l in wg.loops.iter_mut() {
                *l = (*l).min(1);
            }
        }
        wg
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Self {
        assert_eq!(colors.len(), self.n(), "one colour per vertex");
        self.colors = colors;
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Number of unordered non-loop pairs with positive weight.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn weight(&self, u: usize, v: usize) -> u32 {
        if u == v {
            return self.loops[u];
        }
        let list = &self.adj[u];
        list.binary_search_by_key(&(v as u32), |&(x, _)| x)
            .map_or(0, |i| list[i].1)
    }

    pub fn to_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut m = vec![vec![0; n]; n];
        for u in 0..n {
            m[u][u] = self.loops[u];
            for &(v, w) in &self.adj[u] {
                m[u][v as usize] = w;
            }
        }
        m
    }

    /// The graph with vertex u renamed to perm[u].
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n();
        assert!(is_permutation(perm, n), "not a permutation of 0..n");
        let mut g = WeightedGraph::new(n);
        for u in 0..n {
            let pu = perm[u];
            g.loops[pu] = self.loops[u];
            g.colors[pu] = self.colors[u];
            g.adj[pu] = self.adj[u].iter().map(|&(v, w)| (perm[v as usize] as u32, w)).collect();
            g.adj[pu].sort_unstable();
        }
        g
    }

    /// True iff w[σu][σv] = w[u][v] for all u, v and σ keeps colours.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        let p: Vec<usize> = perm.iter().map(|&x| x as usize).collect();
        self.is_isomorphism_to(self, &p)
    }

    /// True iff σ maps self onto `other`: w2[σu][σv] = w1[u][v] and colours agree.
    pub fn is_isomorphism_to(&self, other: &WeightedGraph, perm: &[usize]) -> bool {
        let n = self.n();
        if other.n() != n || !is_permutation(perm, n) || self.edge_count() != other.edge_count() {
            return false;
        }
        (0..n).all(|u| {
            let pu = perm[u];
            self.colors[u] == other.colors[pu]
                && self.loops[u] == other.loops[pu]
                && self.adj[u].len() == other.adj[pu].len()
                && self.adj[u]
                    .iter()
                    .all(|&(v, w)| other.weight(pu, perm[v as usize]) == w)
        })
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    perm.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

const FORM_MAGIC: &[u8; 4] = b"FGCF";
/// Serialisation version of [`CanonicalForm`].
pub const FORM_VERSION: u8 = 1;

/// Relabelling-invariant serialisation of a weighted graph.
///
/// Layout: magic `FGCF`, version byte, n, the colour of each canonical
/// position, then the canonical weight matrix row by row. Integers after the
/// version byte are unsigned LEB128.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self> {
        if bytes.len() < 5 || &bytes[..4] != FORM_MAGIC {
            return Err(Error::Parse {
                text: "canonical form".into(),
                reason: "bad magic".into(),
            });
        }
        if bytes[4] != FORM_VERSION {
            return Err(Error::Parse {
                text: "canonical form".into(),
                reason: format!("unsupported version {}", bytes[4]),
            });
        }
        Ok(CanonicalForm(bytes))
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.to_hex();
        if h.len() > 48 {
            write!(f, "CanonicalForm({}.. {} bytes)", &h[..48], self.0.len())
        } else {
            write!(f, "CanonicalForm({h})")
        }
    }
}

fn push_varint(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let b = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(b);
            return;
        }
        out.push(b | 0x80);
    }
}

fn encode(g: &WeightedGraph, lab: &[u32]) -> CanonicalForm {
    let n = g.n();
    let mut inv = vec![0usize; n];
    for (pos, &v) in lab.iter().enumerate() {
        inv[v as usize] = pos;
    }
    let mut out = Vec::with_capacity(8 + n + n * n);
    out.extend_from_slice(FORM_MAGIC);
    out.push(FORM_VERSION);
    push_varint(&mut out, n as u64);
    for &v in lab {
        push_varint(&mut out, g.colors[v as usize] as u64);
    }
    let mut row = vec![0u32; n];
    for &v in lab {
        row.iter_mut().for_each(|x| *x = 0);
        row[inv[v as usize]] = g.loops[v as usize];
        for &(u, w) in &g.adj[v as usize] {
            row[inv[u as usize]] = w;
        }
        for &x in &row {
            push_varint(&mut out, x as u64);
        }
    }
    CanonicalForm(out)
}

/// Labelling of the canonical leaf: position -> vertex.
pub fn canonical_labeling(g: &WeightedGraph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    search::search(g).canonical_lab.iter().map(|&v| v as usize).collect()
}

pub fn canonical_form(g: &WeightedGraph) -> CanonicalForm {
    if g.n() == 0 {
        return encode(g, &[]);
    }
    encode(g, &search::search(g).canonical_lab)
}

pub fn are_isomorphic(g1: &WeightedGraph, g2: &WeightedGraph) -> bool {
    g1.n() == g2.n() && canonical_form(g1) == canonical_form(g2)
}

/// An explicit σ with w2[σu][σv] = w1[u][v], checked before it is returned.
pub fn find_isomorphism(g1: &WeightedGraph, g2: &WeightedGraph) -> Option<Vec<usize>> {
    if g1.n() != g2.n() {
        return None;
    }
    if g1.n() == 0 {
        return Some(Vec::new());
    }
    let s1 = search::search(g1);
    let s2 = search::search(g2);
    if encode(g1, &s1.canonical_lab) != encode(g2, &s2.canonical_lab) {
        return None;
    }
    let mut sigma = vec![0usize; g1.n()];
    for (a, b) in s1.canonical_lab.iter().zip(&s2.canonical_lab) {
        sigma[*a as usize] = *b as usize;
    }
    assert!(
        g1.is_isomorphism_to(g2, &sigma),
        "equal canonical forms must yield an isomorphism"
    );
    Some(sigma)
}

/// Automorphism group found by the canonical search.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub n: usize,
    /// Every generator preserves the weights and colours.
    pub generators: Vec<Vec<usize>>,
    /// Base points b_0, b_1, ... of the stabiliser chain.
    pub base: Vec<usize>,
    /// orbit_sizes[i] = |orbit of b_i under the stabiliser of b_0..b_{i-1}|.
    pub orbit_sizes: Vec<u64>,
    pub order: BigUint,
    /// Search tree nodes visited.
    pub nodes: u64,
    pub canonical: CanonicalForm,
}

impl AutGroup {
    /// Product of the orbit sizes; equals `order` by construction.
    pub fn order_from_orbits(&self) -> BigUint {
        self.orbit_sizes
            .iter()
            .fold(BigUint::from(1u32), |acc, &o| acc * BigUint::from(o))
    }
}

pub fn automorphism_group(g: &WeightedGraph) -> AutGroup {
    let n = g.n();
    if n == 0 {
        return AutGroup {
            n,
            generators: Vec::new(),
            base: Vec::new(),
            orbit_sizes: Vec::new(),
            order: BigUint::from(1u32),
            nodes: 0,
            canonical: encode(g, &[]),
        };
    }
    let s = search::search(g);
    let generators: Vec<Vec<usize>> = s
        .generators
        .iter()
        .map(|gamma| gamma.iter().map(|&x| x as usize).collect())
        .collect();
    for gamma in &s.generators {
        assert!(g.is_automorphism(gamma), "generator does not preserve weights");
    }
    AutGroup {
        n,
        generators,
        base: s.base.iter().map(|&b| b as usize).collect(),
        orbit_sizes: s.orbit_sizes,
        order: s.order,
        nodes: s.nodes,
        canonical: encode(g, &s.canonical_lab),
    }
}

/// The field graph of a model as a default-mode weighted graph.
pub fn field_weighted_graph(model: &FieldModel, mode: IsoMode) -> WeightedGraph {
    WeightedGraph::from_field_graph(&build_digraph(model), mode)
}

/// Frobenius powers y -> y^(p^j), j = 0..k-1, followed by negation.
///
/// Each permutation is checked against the default-mode weights.
pub fn known_automorphisms(model: &FieldModel) -> Vec<Vec<usize>> {
    let g = field_weighted_graph(model, IsoMode::Default);
    let mut perms: Vec<Vec<usize>> = (0..model.k())
        .map(|j| to_usize(model.frobenius_permutation(j)))
        .collect();
    perms.push(to_usize(model.negation_permutation()));
    for perm in &perms {
        assert!(
            g.is_isomorphism_to(&g, perm),
            "field automorphism fails to preserve the graph"
        );
    }
    perms
}

fn to_usize(perm: Vec<u64>) -> Vec<usize> {
    perm.into_iter().map(|x| x as usize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_poly;

    fn model(text: &str, p: u32) -> FieldModel {
        FieldModel::new(&parse_poly(text, p).unwrap()).unwrap()
    }

    fn fg(text: &str, p: u32) -> WeightedGraph {
        field_weighted_graph(&model(text, p), IsoMode::Default)
    }

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::from_pairs(n, (0..n).map(|i| (i, (i + 1) % n, 1)))
    }

    #[test]
    fn matrix_round_trip_and_asymmetry() {
        let g = fg("x^2+x+1", 2);
        let m = g.to_matrix();
        assert_eq!(WeightedGraph::from_matrix(&m).unwrap(), g);
        let bad = vec![vec![0, 1], vec![2, 0]];
        assert_eq!(WeightedGraph::from_matrix(&bad), Err(Error::Asymmetric));
    }

    #[test]
    fn small_orders() {
        assert_eq!(automorphism_group(&cycle(5)).order, BigUint::from(10u32));
        assert_eq!(automorphism_group(&cycle(6)).order, BigUint::from(12u32));
        let k4 = WeightedGraph::from_pairs(
            4,
            (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v, 1))),
        );
        assert_eq!(automorphism_group(&k4).order, BigUint::from(24u32));
        assert_eq!(automorphism_group(&WeightedGraph::new(5)).order, BigUint::from(120u32));
        assert_eq!(automorphism_group(&WeightedGraph::new(1)).order, BigUint::from(1u32));
    }

    #[test]
    fn weights_and_colours_matter() {
        let a = WeightedGraph::from_pairs(3, [(0, 1, 2), (1, 2, 1)]);
        let b = WeightedGraph::from_pairs(3, [(0, 1, 1), (1, 2, 1)]);
        assert!(!are_isomorphic(&a, &b));
        assert_eq!(automorphism_group(&a).order, BigUint::from(1u32));
        assert_eq!(automorphism_group(&b).order, BigUint::from(2u32));
        let c = b.clone().with_colors(vec![0, 0, 1]);
        assert_eq!(automorphism_group(&c).order, BigUint::from(1u32));
    }

    #[test]
    fn table_orders_small() {
        assert_eq!(automorphism_group(&fg("x^2+x+1", 2)).order, BigUint::from(2u32));
        assert_eq!(automorphism_group(&fg("x^3+x+1", 2)).order, BigUint::from(144u32));
        assert_eq!(automorphism_group(&fg("x^3+x^2+1", 2)).order, BigUint::from(6u32));
    }

    #[test]
    fn reciprocal_pair_isomorphic() {
        let a = fg("x^2+x+2", 3);
        let b = fg("x^2+2x+2", 3);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let sigma = find_isomorphism(&a, &b).unwrap();
        assert!(a.is_isomorphism_to(&b, &sigma));
        assert!(!are_isomorphic(&fg("x^3+2x+2", 3), &fg("x^3+x^2+2", 3)));
    }

    #[test]
    fn self_isomorphism_is_verified() {
        let g = fg("x^3+x+1", 2);
        let sigma = find_isomorphism(&g, &g).unwrap();
        assert!(g.is_isomorphism_to(&g, &sigma));
    }

    #[test]
    fn frobenius_on_f4_swaps_x_and_x_plus_1() {
        let m = model("x^2+x+1", 2);
        let perms = known_automorphisms(&m);
        assert_eq!(perms.len(), 3);
        assert_eq!(perms[0], vec![0, 1, 2, 3]);
        assert_eq!(perms[1], vec![0, 1, 3, 2]);
        assert_eq!(perms[2], vec![0, 1, 2, 3]);
    }

    #[test]
    fn negation_on_x2_plus_1() {
        let m = model("x^2+1", 3);
        let perms = known_automorphisms(&m);
        let neg = perms.last().unwrap();
        assert!(neg.iter().enumerate().all(|(i, &j)| neg[j] == i));
        assert_ne!(neg[1], 1);
    }

    #[test]
    fn form_bytes_validate() {
        let f = canonical_form(&cycle(4));
        assert_eq!(CanonicalForm::from_bytes(f.as_bytes().to_vec()).unwrap(), f);
        let mut bad = f.as_bytes().to_vec();
        bad[4] = 99;
        assert!(CanonicalForm::from_bytes(bad).is_err());
    }

    #[test]
    fn modes_differ_on_multiplicity() {
        let m = model("x^2+x+2", 3);
        let d = field_weighted_graph(&m, IsoMode::Default);
        let s = field_weighted_graph(&m, IsoMode::Simple);
        assert!(d.adj.iter().flatten().any(|&(_, w)| w > 1));
        assert!(s.adj.iter().flatten().all(|&(_, w)| w == 1));
        let st = field_weighted_graph(&m, IsoMode::Strict);
        assert!(st.adj.iter().flatten().any(|&(_, w)| w >= 1 << 16));
    }
}

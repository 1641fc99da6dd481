//! Connectivity, distances, girth and Eulerian circuits on field graphs.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldModel;
use crate::graph::{build_cover, build_digraph, build_subgraph, FieldGraph, Variant};

/// Neighbour lists with duplicates removed.
fn neighbours(g: &FieldGraph, follow_direction: bool) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n];
    for e in &g.edges {
        adj[e.from].push(e.to);
        if !follow_direction || !g.directed {
            adj[e.to].push(e.from);
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Connected components ignoring orientation, each sorted, ordered by least vertex.
pub fn components(g: &FieldGraph) -> Vec<Vec<usize>> {
    let adj = neighbours(g, false);
    let mut seen = vec![false; g.n];
    let mut out = Vec::new();
    for s in 0..g.n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &FieldGraph) -> bool {
    g.n <= 1 || components(g).len() == 1
}

/// Strongly connected components (iterative Tarjan), ordered by least vertex.
pub fn strong_components(g: &FieldGraph) -> Result<Vec<Vec<usize>>> {
    if !g.directed {
        return Err(Error::UndirectedInput);
    }
    let adj = neighbours(g, true);
    let n = g.n;
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut out = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            if *pos < adj[u].len() {
                let v = adj[u][*pos];
                *pos += 1;
                if index[v] == UNSEEN {
                    index[v] = next;
                    low[v] = next;
                    next += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == u {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out.sort_by_key(|c| c[0]);
    Ok(out)
}

fn bfs_eccentricity(adj: &[Vec<usize>], s: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut reached = 1;
    let mut far = 0;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                far = dist[v];
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    (reached == adj.len()).then_some(far)
}

/// Breadth-first distances from `s`, orientation respected for directed graphs.
pub fn distances_from(g: &FieldGraph, s: usize) -> Vec<Option<usize>> {
    let adj = neighbours(g, true);
    let mut dist = vec![None; g.n];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Exact diameter, one BFS per source. Parallel edges count as a single step.
/// Directed graphs use directed reachability.
pub fn diameter(g: &FieldGraph) -> Result<usize> {
    if g.n == 0 {
        return Ok(0);
    }
    let adj = neighbours(g, true);
    let ecc: Option<Vec<usize>> = (0..g.n)
        .into_par_iter()
        .map(|s| bfs_eccentricity(&adj, s))
        .collect();
    match ecc {
        Some(e) => Ok(e.into_iter().max().unwrap_or(0)),
        None => Err(Error::Disconnected {
            components: if g.directed {
                strong_components(g)?
            } else {
                components(g)
            },
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GirthMode {
    /// Loops have length 1 and parallel pairs length 2.
    Multigraph,
    /// Girth of the underlying simple graph (loops and repeated edges dropped).
    Simple,
}

/// Length of the shortest closed walk with distinct edges; `None` for forests.
pub fn girth(g: &FieldGraph, mode: GirthMode) -> Option<usize> {
    if mode == GirthMode::Multigraph {
        if g.loop_count() > 0 {
            return Some(1);
        }
        if g.pair_multiplicities().iter().any(|&(_, m)| m >= 2) {
            return Some(2);
        }
    }
    let mut adj = neighbours(g, false);
    for (u, list) in adj.iter_mut().enumerate() {
        list.retain(|&v| v != u);
    }
    (0..g.n)
        .into_par_iter()
        .filter_map(|s| shortest_cycle_through_bfs(&adj, s))
        .min()
}

fn shortest_cycle_through_bfs(adj: &[Vec<usize>], s: usize) -> Option<usize> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut best: Option<usize> = None;
    while let Some(u) = queue.pop_front() {
        if let Some(b) = best {
            if 2 * dist[u] >= b {
                break;
            }
        }
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            } else if parent[u] != v {
                let len = dist[u] + dist[v] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

/// Undirected: connected on the non-isolated vertices with all degrees even.
/// Directed: in-degree equals out-degree and the non-isolated vertices are strongly connected.
pub fn is_eulerian(g: &FieldGraph) -> bool {
    if g.edges.is_empty() {
        return true;
    }
    let touched: Vec<bool> = {
        let mut t = vec![false; g.n];
        for e in &g.edges {
            t[e.from] = true;
            t[e.to] = true;
        }
        t
    };
    let comps = if g.directed {
        if g.in_degrees() != g.out_degrees() {
            return false;
        }
        strong_components(g).expect("directed")
    } else {
        if g.weighted_degrees().iter().any(|d| d % 2 == 1) {
            return false;
        }
        components(g)
    };
    comps
        .iter()
        .filter(|c| c.iter().any(|&v| touched[v]))
        .count()
        == 1
}

/// An Eulerian circuit: edge indices in traversal order, starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCircuit {
    pub start: usize,
    pub edges: Vec<usize>,
}

/// Hierholzer's algorithm.
pub fn eulerian_circuit(g: &FieldGraph) -> Result<EulerCircuit> {
    if !is_eulerian(g) {
        return Err(Error::NotEulerian);
    }
    let Some(first) = g.edges.first() else {
        return Ok(EulerCircuit {
            start: 0,
            edges: Vec::new(),
        });
    };
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for (i, e) in g.edges.iter().enumerate() {
        inc[e.from].push(i);
        if !g.directed && e.from != e.to {
            inc[e.to].push(i);
        }
    }
    let mut used = vec![false; g.edges.len()];
    let mut ptr = vec![0usize; g.n];
    let start = first.from;
    // stack of (vertex, edge used to arrive)
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit = Vec::with_capacity(g.edges.len());
    while let Some(&(u, via)) = stack.last() {
        while ptr[u] < inc[u].len() && used[inc[u][ptr[u]]] {
            ptr[u] += 1;
        }
        if ptr[u] == inc[u].len() {
            stack.pop();
            if let Some(e) = via {
                circuit.push(e);
            }
        } else {
            let e = inc[u][ptr[u]];
            used[e] = true;
            let edge = g.edges[e];
            let next = if edge.from == u { edge.to } else { edge.from };
            stack.push((next, Some(e)));
        }
    }
    circuit.reverse();
    Ok(EulerCircuit {
        start,
        edges: circuit,
    })
}

/// Walks the circuit: each edge used exactly once, consecutive, closed.
pub fn verify_circuit(g: &FieldGraph, c: &EulerCircuit) -> bool {
    if c.edges.len() != g.edges.len() {
        return false;
    }
    let mut seen = vec![false; g.edges.len()];
    let mut at = c.start;
    for &i in &c.edges {
        if i >= seen.len() || seen[i] {
            return false;
        }
        seen[i] = true;
        let e = g.edges[i];
        at = if e.from == at {
            e.to
        } else if !g.directed && e.to == at {
            e.from
        } else {
            return false;
        };
    }
    at == c.start
}

/// 2p(2k+1) - 2k - 4.
pub fn diameter_bound(p: u32, k: usize) -> i64 {
    let (p, k) = (p as i64, k as i64);
    2 * p * (2 * k + 1) - 2 * k - 4
}

/// (p-1)(k^2+4k+1) + k.
pub fn directed_diameter_bound(p: u32, k: usize) -> i64 {
    let (p, k) = (p as i64, k as i64);
    (p - 1) * (k * k + 4 * k + 1) + k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub connected: bool,
    pub strongly_connected: bool,
    pub diameter: Option<usize>,
    pub directed_diameter: Option<usize>,
    pub girth: Option<usize>,
    pub eulerian: bool,
    pub directed_eulerian: bool,
    pub diameter_bound: i64,
    pub directed_diameter_bound: i64,
}

impl GraphReport {
    /// Both diameters exist and lie strictly below their bounds.
    pub fn within_bounds(&self) -> bool {
        matches!(self.diameter, Some(d) if (d as i64) < self.diameter_bound)
            && matches!(self.directed_diameter, Some(d) if (d as i64) < self.directed_diameter_bound)
    }
}

/// Structural report for the full graph of a model.
pub fn analyze(model: &FieldModel) -> GraphReport {
    let digraph = build_digraph(model);
    let undirected = crate::graph::to_undirected(&digraph);
    GraphReport {
        connected: is_connected(&undirected),
        strongly_connected: strong_components(&digraph).map_or(false, |c| c.len() == 1),
        diameter: diameter(&undirected).ok(),
        directed_diameter: diameter(&digraph).ok(),
        girth: girth(&undirected, GirthMode::Multigraph),
        eulerian: is_eulerian(&undirected),
        directed_eulerian: is_eulerian(&digraph),
        diameter_bound: diameter_bound(model.p(), model.k()),
        directed_diameter_bound: directed_diameter_bound(model.p(), model.k()),
    }
}

/// The vertex a = x(x-1)^{-1} and a + x = a*x; both an additive and a
/// multiplicative edge join them when k >= 2.
pub fn girth_two_witness(model: &FieldModel) -> Option<(u64, u64)> {
    let x = model.x();
    let a = model.mul(x, model.inv(model.sub(x, 1)).ok()?);
    let b = model.add(a, x);
    (b == model.mul(a, x)).then_some((a, b))
}

/// Graph-side and field-side flags computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldEquivalences {
    pub additive_connected: bool,
    pub multiplicative_connected: bool,
    pub normal: bool,
    pub primitive: bool,
    pub cover_connected: Option<bool>,
}

impl FieldEquivalences {
    /// additive ⇔ normal, multiplicative ⇔ primitive, cover ⇔ primitive.
    pub fn holds(&self) -> bool {
        self.additive_connected == self.normal
            && self.multiplicative_connected == self.primitive
            && self.cover_connected.map_or(true, |c| c == self.primitive)
    }
}

pub fn field_property_equivalences(model: &FieldModel, with_cover: bool) -> FieldEquivalences {
    let add = build_subgraph(model, Variant::Additive).expect("additive");
    let mul = build_subgraph(model, Variant::Multiplicative).expect("multiplicative");
    FieldEquivalences {
        additive_connected: is_connected(&add),
        multiplicative_connected: is_connected(&mul),
        normal: model.is_normal(),
        primitive: model.is_primitive(),
        cover_connected: with_cover.then(|| is_connected(&build_cover(model).graph)),
    }
}

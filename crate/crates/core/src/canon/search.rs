//! Individualization-refinement search tree.
//!
//! The first path is descended greedily. Its levels are then revisited from
//! the bottom up: at level d every vertex of the target cell is either shown
//! to lie in the orbit of the first-path choice under the pointwise stabiliser
//! of the prefix (an automorphism is found) or its subtree is exhausted. The
//! product of those orbit lengths is |Aut|. Throughout, the least leaf under
//! the key (trace sequence, relabelled edge list) is kept as the canonical one.

use std::cmp::Ordering;

use num_bigint::BigUint;

use super::partition::{Partition, Scratch};
use super::WeightedGraph;

type Certificate = Vec<(u32, u32, u32)>;

#[derive(Clone)]
struct Leaf {
    lab: Vec<u32>,
    cert: Certificate,
    traces: Vec<u64>,
    path: Vec<u32>,
}

pub(crate) struct SearchOutcome {
    /// position -> vertex of the canonical leaf
    pub canonical_lab: Vec<u32>,
    pub generators: Vec<Vec<u32>>,
    pub base: Vec<u32>,
    pub orbit_sizes: Vec<u64>,
    pub order: BigUint,
    pub nodes: u64,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    fn same(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

struct Searcher<'g> {
    g: &'g WeightedGraph,
    sc: Scratch,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Vec<u32>>,
    cur_traces: Vec<u64>,
    cur_path: Vec<u32>,
    nodes: u64,
}

impl<'g> Searcher<'g> {
    fn leaf(&self, part: &Partition, cert: Certificate) -> Leaf {
        Leaf {
            lab: part.lab.clone(),
            cert,
            traces: self.cur_traces.clone(),
            path: self.cur_path.clone(),
        }
    }

    /// Records the automorphism sending leaf `from` onto the partition `to`.
    fn add_generator(&mut self, from: &[u32], to: &[u32]) {
        let mut gamma = vec![0u32; from.len()];
        for (a, b) in from.iter().zip(to) {
            gamma[*a as usize] = *b;
        }
        assert!(
            self.g.is_automorphism(&gamma),
            "equal certificates must give an automorphism"
        );
        if gamma.iter().enumerate().any(|(i, &v)| i as u32 != v) {
            self.gens.push(gamma);
        }
    }

    /// Explores the child of `parent` obtained by individualizing `v`; the
    /// child sits at `depth`. Returns a depth to jump back to, if any.
    fn explore(&mut self, parent: &Partition, depth: usize, v: u32) -> Option<usize> {
        self.nodes += 1;
        let mut part = parent.clone();
        let t = part.individualize(v, self.g, &mut self.sc);
        self.cur_traces.truncate(depth);
        self.cur_traces.push(t);
        self.cur_path.truncate(depth - 1);
        self.cur_path.push(v);

        let first = self.first.as_ref().expect("first leaf");
        let best = self.best.as_ref().expect("best leaf");
        let eq_first = first.traces.len() > depth && first.traces[..=depth] == self.cur_traces[..];
        let cmp_best = self.cur_traces[..].cmp(&best.traces[..best.traces.len().min(depth + 1)]);
        if !eq_first && cmp_best == Ordering::Greater {
            return None;
        }

        if part.is_discrete() {
            let cert = part.certificate(self.g);
            if eq_first && cert == first.cert {
                let jump = common_prefix(&self.cur_path, &first.path);
                let from = first.lab.clone();
                self.add_generator(&from, &part.lab);
                return Some(jump);
            }
            return match cmp_best.then_with(|| cert.cmp(&best.cert)) {
                Ordering::Less => {
                    self.best = Some(self.leaf(&part, cert));
                    None
                }
                Ordering::Equal => {
                    let jump = common_prefix(&self.cur_path, &best.path);
                    let from = best.lab.clone();
                    self.add_generator(&from, &part.lab);
                    Some(jump)
                }
                Ordering::Greater => None,
            };
        }

        let cs = part.target_cell().expect("non-discrete partition has a target cell");
        let mut cell: Vec<u32> = part.cell(cs).to_vec();
        cell.sort_unstable();
        let mut processed: Vec<u32> = Vec::new();
        let mut uf: Option<UnionFind> = None;
        let mut applied = 0usize;
        for &u in &cell {
            if !processed.is_empty() {
                if self.gens.len() > applied {
                    let uf = uf.get_or_insert_with(|| UnionFind::new(cell.len()));
                    for gamma in &self.gens[applied..] {
                        if self.cur_path[..depth].iter().all(|&x| gamma[x as usize] == x) {
                            for &a in &cell {
                                let pa = part.inv[a as usize] - cs;
                                let pb = part.inv[gamma[a as usize] as usize] - cs;
                                uf.union(pa, pb);
                            }
                        }
                    }
                    applied = self.gens.len();
                }
                if let Some(uf) = uf.as_mut() {
                    let pu = part.inv[u as usize] - cs;
                    if processed
                        .iter()
                        .any(|&x| uf.same(part.inv[x as usize] - cs, pu))
                    {
                        continue;
                    }
                }
            }
            processed.push(u);
            if let Some(jump) = self.explore(&part, depth + 1, u) {
                if jump < depth {
                    return Some(jump);
                }
            }
        }
        None
    }
}

pub(crate) fn search(g: &WeightedGraph) -> SearchOutcome {
    let n = g.n();
    let mut s = Searcher {
        g,
        sc: Scratch::new(n),
        first: None,
        best: None,
        gens: Vec::new(),
        cur_traces: Vec::new(),
        cur_path: Vec::new(),
        nodes: 1,
    };
    let mut root = Partition::initial(g);
    let starts = root.cell_starts();
    let t0 = root.refine(g, &starts, &mut s.sc);
    s.cur_traces.push(t0);

    let mut first_nodes = vec![root];
    let mut base = Vec::new();
    loop {
        let node = first_nodes.last().expect("root");
        let Some(cs) = node.target_cell() else { break };
        let v = *node.cell(cs).iter().min().expect("non-empty cell");
        let mut child = node.clone();
        let t = child.individualize(v, g, &mut s.sc);
        s.nodes += 1;
        s.cur_traces.push(t);
        s.cur_path.push(v);
        base.push(v);
        first_nodes.push(child);
    }
    let leaf_part = first_nodes.last().expect("leaf");
    let leaf = s.leaf(leaf_part, leaf_part.certificate(g));
    s.first = Some(leaf.clone());
    s.best = Some(leaf);

    let depth = base.len();
    let mut orbit_sizes = vec![1u64; depth];
    for d in (0..depth).rev() {
        let node = &first_nodes[d];
        let cs = node.target_cell().expect("first path node is not a leaf");
        let mut cell: Vec<u32> = node.cell(cs).to_vec();
        cell.sort_unstable();
        let v_d = base[d];
        let mut uf = UnionFind::new(n);
        for gamma in &s.gens {
            debug_assert!(base[..d].iter().all(|&x| gamma[x as usize] == x));
            for &a in &cell {
                uf.union(a, gamma[a as usize]);
            }
        }
        let mut processed = vec![v_d];
        for &w in &cell {
            if w == v_d || processed.iter().any(|&x| uf.same(x, w)) {
                continue;
            }
            processed.push(w);
            s.cur_traces.truncate(d + 1);
            s.cur_path.truncate(d);
            let before = s.gens.len();
            s.explore(node, d + 1, w);
            for gamma in &s.gens[before..] {
                for &a in &cell {
                    uf.union(a, gamma[a as usize]);
                }
            }
        }
        orbit_sizes[d] = cell.iter().filter(|&&u| uf.same(u, v_d)).count() as u64;
    }

    let order = orbit_sizes
        .iter()
        .fold(BigUint::from(1u32), |acc, &o| acc * BigUint::from(o));
    SearchOutcome {
        canonical_lab: s.best.expect("best leaf").lab,
        generators: s.gens,
        base,
        orbit_sizes,
        order,
        nodes: s.nodes,
    }
}

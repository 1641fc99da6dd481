//! Ordered partitions and equitable refinement for weighted graphs.

use std::collections::VecDeque;

use super::WeightedGraph;

const TRACE_SEED: u64 = 0x243f_6a88_85a3_08d3;

/// splitmix64 finaliser.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fold(h: u64, v: u64) -> u64 {
    mix64(h ^ mix64(v))
}

/// Reusable buffers for refinement.
pub(crate) struct Scratch {
    key: Vec<u64>,
    mark: Vec<bool>,
    touched: Vec<u32>,
    touched_cells: Vec<u32>,
    in_queue: Vec<bool>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Scratch {
            key: vec![0; n],
            mark: vec![false; n],
            touched: Vec::new(),
            touched_cells: Vec::new(),
            in_queue: vec![false; n],
        }
    }
}

/// An ordered partition of the vertex set. Cells are contiguous ranges of
/// `lab` and are identified by their start position.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    /// position -> vertex
    pub lab: Vec<u32>,
    /// vertex -> position
    pub inv: Vec<u32>,
    /// vertex -> start of its cell
    cell_of: Vec<u32>,
    /// cell start -> cell end (exclusive); meaningful only at starts
    cell_end: Vec<u32>,
    pub cells: usize,
}

impl Partition {
    /// Cells by (colour, loop weight), in increasing order of that pair.
    pub(crate) fn initial(g: &WeightedGraph) -> Self {
        let n = g.n();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        let key = |v: u32| (g.colors[v as usize], g.loops[v as usize]);
        lab.sort_by_key(|&v| (key(v), v));
        let mut part = Partition {
            inv: vec![0; n],
            cell_of: vec![0; n],
            cell_end: vec![0; n],
            lab,
            cells: 0,
        };
        let mut start = 0;
        for pos in 1..=n {
            if pos == n || key(part.lab[pos]) != key(part.lab[start]) {
                part.cell_end[start] = pos as u32;
                for q in start..pos {
                    let v = part.lab[q] as usize;
                    part.cell_of[v] = start as u32;
                    part.inv[v] = q as u32;
                }
                part.cells += 1;
                start = pos;
            }
        }
        part
    }

    pub(crate) fn n(&self) -> usize {
        self.lab.len()
    }

    pub(crate) fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    pub(crate) fn cell_starts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.n() {
            out.push(s as u32);
            s = self.cell_end[s] as usize;
        }
        out
    }

    pub(crate) fn cell(&self, start: u32) -> &[u32] {
        &self.lab[start as usize..self.cell_end[start as usize] as usize]
    }

    /// First cell of minimum size among non-singletons.
    pub(crate) fn target_cell(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        let mut s = 0usize;
        while s < self.n() {
            let e = self.cell_end[s] as usize;
            let size = (e - s) as u32;
            if size > 1 && best.map_or(true, |(_, b)| size < b) {
                best = Some((s as u32, size));
                if size == 2 {
                    break;
                }
            }
            s = e;
        }
        best.map(|(s, _)| s)
    }

    /// Splits v off the front of its cell and refines; returns the node trace.
    pub(crate) fn individualize(&mut self, v: u32, g: &WeightedGraph, sc: &mut Scratch) -> u64 {
        let cs = self.cell_of[v as usize] as usize;
        let ce = self.cell_end[cs] as usize;
        debug_assert!(ce - cs > 1);
        let pv = self.inv[v as usize] as usize;
        let other = self.lab[cs];
        self.lab.swap(cs, pv);
        self.inv[v as usize] = cs as u32;
        self.inv[other as usize] = pv as u32;
        self.cell_end[cs] = cs as u32 + 1;
        self.cell_end[cs + 1] = ce as u32;
        for q in cs + 1..ce {
            self.cell_of[self.lab[q] as usize] = cs as u32 + 1;
        }
        self.cells += 1;
        let h = fold(TRACE_SEED, cs as u64);
        fold(h, self.refine(g, &[cs as u32], sc))
    }

    /// Equitable refinement: split cells by the multiset of edge weights into
    /// each splitter cell until stable. Returns an isomorphism-invariant trace.
    pub(crate) fn refine(&mut self, g: &WeightedGraph, splitters: &[u32], sc: &mut Scratch) -> u64 {
        let n = self.n();
        let mut h = TRACE_SEED;
        let mut queue: VecDeque<u32> = VecDeque::with_capacity(splitters.len());
        for &s in splitters {
            if !sc.in_queue[s as usize] {
                sc.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        while let Some(w) = queue.pop_front() {
            sc.in_queue[w as usize] = false;
            if self.cells == n {
                continue;
            }
            let (ws, we) = (w as usize, self.cell_end[w as usize] as usize);
            sc.touched.clear();
            for pos in ws..we {
                let u = self.lab[pos] as usize;
                for &(v, wt) in &g.adj[u] {
                    if !sc.mark[v as usize] {
                        sc.mark[v as usize] = true;
                        sc.touched.push(v);
                    }
                    let k = &mut sc.key[v as usize];
                    *k = k.wrapping_add(mix64(wt as u64));
                }
            }
            sc.touched_cells.clear();
            for &v in &sc.touched {
                let c = self.cell_of[v as usize];
                if self.cell_end[c as usize] - c > 1 {
                    sc.touched_cells.push(c);
                }
            }
            sc.touched_cells.sort_unstable();
            sc.touched_cells.dedup();
            h = fold(h, ws as u64);

            for ci in 0..sc.touched_cells.len() {
                let cs = sc.touched_cells[ci] as usize;
                let ce = self.cell_end[cs] as usize;
                let key = &sc.key;
                let first_key = key[self.lab[cs] as usize];
                if self.lab[cs + 1..ce].iter().all(|&v| key[v as usize] == first_key) {
                    continue;
                }
                self.lab[cs..ce].sort_unstable_by_key(|&v| key[v as usize]);
                h = fold(h, cs as u64);
                let was_queued = sc.in_queue[cs];
                let mut frags: Vec<(usize, usize)> = Vec::new();
                let mut start = cs;
                for pos in cs + 1..=ce {
                    if pos == ce || key[self.lab[pos] as usize] != key[self.lab[start] as usize] {
                        frags.push((start, pos));
                        h = fold(h, key[self.lab[start] as usize]);
                        h = fold(h, (pos - start) as u64);
                        start = pos;
                    }
                }
                for &(fs, fe) in &frags {
                    self.cell_end[fs] = fe as u32;
                    for q in fs..fe {
                        let v = self.lab[q] as usize;
                        self.cell_of[v] = fs as u32;
                        self.inv[v] = q as u32;
                    }
                }
                self.cells += frags.len() - 1;
                if was_queued {
                    for &(fs, _) in &frags[1..] {
                        sc.in_queue[fs] = true;
                        queue.push_back(fs as u32);
                    }
                } else {
                    let mut largest = 0;
                    for (i, &(fs, fe)) in frags.iter().enumerate() {
                        if fe - fs > frags[largest].1 - frags[largest].0 {
                            largest = i;
                        }
                    }
                    for (i, &(fs, _)) in frags.iter().enumerate() {
                        if i != largest {
                            sc.in_queue[fs] = true;
                            queue.push_back(fs as u32);
                        }
                    }
                }
            }
            for &v in &sc.touched {
                sc.key[v as usize] = 0;
                sc.mark[v as usize] = false;
            }
        }
        fold(h, self.cells as u64)
    }

    /// Relabelled edge list of a discrete partition: (pos u, pos v, weight), u <= v, sorted.
    pub(crate) fn certificate(&self, g: &WeightedGraph) -> Vec<(u32, u32, u32)> {
        let mut cert = Vec::with_capacity(g.edge_count() + g.n());
        for u in 0..g.n() {
            let pu = self.inv[u];
            if g.loops[u] > 0 {
                cert.push((pu, pu, g.loops[u]));
            }
            for &(v, w) in &g.adj[u] {
                let pv = self.inv[v as usize];
                if pu < pv {
                    cert.push((pu, pv, w));
                }
            }
        }
        cert.sort_unstable();
        cert
    }
}

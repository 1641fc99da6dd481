//! Permutation groups given by generators: Schreier-Sims stabiliser chain.
//!
//! Independent of the search tree; used to recompute |Aut| from the emitted
//! generators. Intended for moderate degrees (a few hundred points).

use num_bigint::BigUint;

type Perm = Vec<u32>;

fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// a then b.
fn then(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

struct Level {
    point: u32,
    /// Strong generators fixing all earlier base points, added at this level.
    gens: Vec<Perm>,
    /// transversal[u] maps `point` to u
    transversal: Vec<Option<Perm>>,
}

/// Stabiliser chain of the group generated by a set of permutations.
pub struct PermGroup {
    n: usize,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(n: usize, generators: &[Vec<usize>]) -> Self {
        let mut g = PermGroup { n, levels: Vec::new() };
        for gen in generators {
            assert_eq!(gen.len(), n, "generator degree");
            let p: Perm = gen.iter().map(|&x| x as u32).collect();
            if !is_identity(&p) {
                g.insert(0, p);
            }
        }
        g
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point as usize).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<u64> {
        self.levels
            .iter()
            .map(|l| l.transversal.iter().filter(|t| t.is_some()).count() as u64)
            .collect()
    }

    pub fn order(&self) -> BigUint {
        self.orbit_sizes()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, o| acc * BigUint::from(o))
    }

    /// Membership test by sifting.
    pub fn contains(&self, perm: &[usize]) -> bool {
        let p: Perm = perm.iter().map(|&x| x as u32).collect();
        let (h, _) = self.sift(0, p);
        is_identity(&h)
    }

    fn sift(&self, from: usize, mut g: Perm) -> (Perm, usize) {
        for j in from..self.levels.len() {
            let lv = &self.levels[j];
            match &lv.transversal[g[lv.point as usize] as usize] {
                Some(t) => g = then(&g, &inverse(t)),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    fn level_gens(&self, i: usize) -> Vec<&Perm> {
        self.levels[i..].iter().flat_map(|l| l.gens.iter()).collect()
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let gens: Vec<Perm> = self.level_gens(i).into_iter().cloned().collect();
        let lv = &mut self.levels[i];
        let mut trans: Vec<Option<Perm>> = vec![None; self.n];
        trans[lv.point as usize] = Some(identity(self.n));
        let mut queue = vec![lv.point];
        while let Some(u) = queue.pop() {
            let tu = trans[u as usize].clone().expect("orbit point");
            for s in &gens {
                let v = s[u as usize];
                if trans[v as usize].is_none() {
                    trans[v as usize] = Some(then(&tu, s));
                    queue.push(v);
                }
            }
        }
        lv.transversal = trans;
    }

    /// Adds g, which fixes the base points before level `from`, and restores
    /// the Schreier property of every level it touches.
    fn insert(&mut self, from: usize, g: Perm) {
        let (h, j) = self.sift(from, g);
        if is_identity(&h) {
            return;
        }
        if j == self.levels.len() {
            let point = h
                .iter()
                .enumerate()
                .find(|(i, &x)| *i as u32 != x)
                .map(|(i, _)| i as u32)
                .expect("non-identity");
            self.levels.push(Level {
                point,
                gens: Vec::new(),
                transversal: Vec::new(),
            });
        }
        self.levels[j].gens.push(h);
        for i in (from..=j).rev() {
            self.rebuild_orbit(i);
            self.close_level(i);
        }
    }

    /// Sifts every Schreier generator of level i into level i + 1.
    fn close_level(&mut self, i: usize) {
        loop {
            let gens: Vec<Perm> = self.level_gens(i).into_iter().cloned().collect();
            let mut pending = None;
            'scan: for u in 0..self.n {
                let Some(tu) = self.levels[i].transversal[u].clone() else {
                    continue;
                };
                for s in &gens {
                    let v = s[u] as usize;
                    let tv = self.levels[i].transversal[v].as_ref().expect("closed orbit");
                    let schreier = then(&then(&tu, s), &inverse(tv));
                    let (h, _) = self.sift(i + 1, schreier.clone());
                    if !is_identity(&h) {
                        pending = Some(schreier);
                        break 'scan;
                    }
                }
            }
            match pending {
                Some(sg) => {
                    self.insert(i + 1, sg);
                    self.rebuild_orbit(i);
                }
                None => return,
            }
        }
    }
}

/// |⟨generators⟩| by Schreier-Sims.
pub fn schreier_sims_order(n: usize, generators: &[Vec<usize>]) -> BigUint {
    PermGroup::new(n, generators).order()
}

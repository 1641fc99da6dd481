//! Exhaustive permutation search, the reference for small graphs.

use crate::error::{Error, Result};

use super::WeightedGraph;

pub const ORACLE_MAX_N: usize = 10;

/// Extends a partial map vertex by vertex, checking every pair among mapped
/// vertices; calls `found` on each complete isomorphism until it returns false.
fn extend(
    g1: &WeightedGraph,
    g2: &WeightedGraph,
    m1: &[Vec<u32>],
    m2: &[Vec<u32>],
    sigma: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let u = sigma.len();
    let n = g1.n();
    if u == n {
        return found(sigma);
    }
    for v in 0..n {
        if used[v] || g1.colors[u] != g2.colors[v] || m1[u][u] != m2[v][v] {
            continue;
        }
        if (0..u).any(|a| m1[a][u] != m2[sigma[a]][v]) {
            continue;
        }
        used[v] = true;
        sigma.push(v);
        let go_on = extend(g1, g2, m1, m2, sigma, used, found);
        sigma.pop();
        used[v] = false;
        if !go_on {
            return false;
        }
    }
    true
}

fn check_size(n: usize) -> Result<()> {
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge { n, max: ORACLE_MAX_N });
    }
    Ok(())
}

/// First σ (in lexicographic order of images) with w2[σu][σv] = w1[u][v].
pub fn brute_force_iso(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<Option<Vec<usize>>> {
    check_size(g1.n().max(g2.n()))?;
    if g1.n() != g2.n() {
        return Ok(None);
    }
    let (m1, m2) = (g1.to_matrix(), g2.to_matrix());
    let mut result = None;
    let mut sigma = Vec::new();
    let mut used = vec![false; g1.n()];
    extend(g1, g2, &m1, &m2, &mut sigma, &mut used, &mut |s| {
        result = Some(s.to_vec());
        false
    });
    Ok(result)
}

/// Number of weight- and colour-preserving permutations.
pub fn brute_force_aut_count(g: &WeightedGraph) -> Result<u64> {
    check_size(g.n())?;
    let m = g.to_matrix();
    let mut count = 0u64;
    let mut sigma = Vec::new();
    let mut used = vec![false; g.n()];
    extend(g, g, &m, &m, &mut sigma, &mut used, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

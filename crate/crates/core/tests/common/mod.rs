#![allow(dead_code)]

use fieldgraph::field::{enumerate_irreducibles, is_prime};
use fieldgraph::FieldModel;

/// Every model of degree k over F_p, skipping f = x when k = 1.
pub fn models(p: u32, k: usize) -> Vec<FieldModel> {
    enumerate_irreducibles(p, k)
        .unwrap()
        .into_iter()
        .filter(|f| !(k == 1 && f.coeff(0) == 0))
        .map(|f| FieldModel::new(&f).unwrap())
        .collect()
}

pub fn primes_up_to(n: u64) -> Vec<u32> {
    (2..=n).filter(|&p| is_prime(p)).map(|p| p as u32).collect()
}

/// (p, k) with p^k <= max, for the given primes and k >= 1.
pub fn fields(primes: &[u32], max: u64) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for &p in primes {
        let mut q = p as u64;
        let mut k = 1;
        while q <= max {
            out.push((p, k));
            q *= p as u64;
            k += 1;
        }
    }
    out
}

/// Strips spaces and `*` so `x^2 + 2*x` and `x^2+2x` compare equal.
pub fn norm(poly: &str) -> String {
    poly.chars().filter(|c| !c.is_whitespace() && *c != '*').collect()
}

//! Irreducibility testing and enumeration of monic irreducibles over F_p.

use crate::error::{Error, Result};

use super::poly::{is_prime, prime_factors, Poly};

/// Rabin's test: f of degree k is irreducible iff x^(p^k) = x mod f and
/// gcd(x^(p^(k/q)) - x, f) = 1 for every prime q dividing k.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let k = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(k) => k,
    };
    if k == 1 {
        return Ok(true);
    }
    let f = f.to_monic();
    let p = f.modulus();
    let x = Poly::x(p).rem(&f);

    // frob[i] = x^(p^i) mod f
    let mut frob = Vec::with_capacity(k + 1);
    frob.push(x.clone());
    for i in 1..=k {
        let next = frob[i - 1].pow_mod(p as u64, &f);
        frob.push(next);
    }
    if frob[k] != x {
        return Ok(false);
    }
    for q in prime_factors(k as u64) {
        let i = k / q as usize;
        let g = frob[i].sub(&x).gcd(&f);
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monic irreducible polynomials of degree k over F_p, ordered
/// lexicographically by the coefficient tuple (a_{k-1}, ..., a_0).
pub fn enumerate_irreducibles(p: u32, k: usize) -> Result<Vec<Poly>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let total = (p as u64)
        .checked_pow(k as u32)
        .ok_or(Error::FieldTooLarge { p, k })?;
    let mut out = Vec::new();
    // odometer over (a_{k-1}, ..., a_0), last digit fastest
    let mut top_down = vec![0u32; k];
    for _ in 0..total {
        let mut coeffs: Vec<u32> = top_down.iter().rev().copied().collect();
        coeffs.push(1);
        let f = Poly::from_reduced(p, coeffs);
        if is_irreducible(&f)? {
            out.push(f);
        }
        for d in (0..k).rev() {
            top_down[d] += 1;
            if top_down[d] < p {
                break;
            }
            top_down[d] = 0;
        }
    }
    Ok(out)
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree k: (1/k) * sum_{d | k} mu(d) p^(k/d).
pub fn irreducible_count(p: u32, k: usize) -> u64 {
    let k64 = k as u64;
    let mut sum: i128 = 0;
    for d in 1..=k64 {
        if k64 % d == 0 {
            sum += mobius(d) as i128 * (p as i128).pow((k64 / d) as u32);
        }
    }
    (sum / k as i128) as u64
}

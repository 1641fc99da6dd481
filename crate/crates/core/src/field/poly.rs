//! Dense univariate polynomials over a prime field F_p.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Trial-division primality test; p is at most a machine word.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue via Fermat.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p as u64 - 2, p)
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A polynomial over F_p. `coeffs[i]` is the coefficient of x^i; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial, reducing every coefficient mod p.
    pub fn new(p: u32, coeffs: impl IntoIterator<Item = u64>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let coeffs = coeffs.into_iter().map(|c| (c % p as u64) as u32).collect();
        Ok(Self::from_reduced(p, coeffs))
    }

    /// Coefficients already in [0, p).
    pub(crate) fn from_reduced(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        Poly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::from_reduced(p, vec![1 % p])
    }

    /// The monomial x^e.
    pub fn monomial(p: u32, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = 1;
        Poly { p, coeffs }
    }

    pub fn x(p: u32) -> Self {
        Self::monomial(p, 1)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_reduced(self.p, acc.into_iter().map(|c| c as u32).collect())
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(p), self.clone());
        }
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod(rem[i], lead_inv, p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = sub_mod(rem[idx], mul_mod(c, b, p), p);
            }
        }
        rem.truncate(dd);
        (Self::from_reduced(p, quot), Self::from_reduced(p, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn to_monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.to_monic()
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = inv_mod(r0.leading(), p);
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, a: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, a, self.p), c, self.p))
    }

    /// Monic reciprocal a0^{-1} x^n f(1/x).
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.coeff(0) == 0 {
            return Err(Error::ZeroConstantTerm(self.to_string()));
        }
        let rev: Vec<u32> = self.coeffs.iter().rev().copied().collect();
        Ok(Self::from_reduced(self.p, rev).to_monic())
    }

    /// Lexicographic key on (a_{k-1}, ..., a_0) for monic polynomials of equal degree.
    pub(crate) fn lex_key(&self) -> Vec<u32> {
        let mut key: Vec<u32> = self.coeffs.iter().rev().copied().collect();
        if !key.is_empty() {
            key.remove(0);
        }
        key
    }

    /// Lexicographic comparison: degree first, then coefficients from the top down.
    pub fn lex_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({})", self.p, self)
    }
}

/// Parses `text` as a polynomial over F_p.
///
/// Accepts sums of terms `c*x^e`, `cx^e`, `x^e`, `c` with `+`/`-` separators and
/// arbitrary spaces, or a comma-separated coefficient list (constant term first).
/// Any single lowercase letter works as the variable. Coefficients are reduced mod p.
pub fn parse_poly(text: &str, p: u32) -> Result<Poly> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let err = |reason: &str| Error::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    let pm = p as u64;

    if compact.contains(',') {
        let coeffs = compact
            .split(',')
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| err("coefficient list entries must be nonnegative integers"))
            })
            .collect::<Result<Vec<_>>>()?;
        return Poly::new(p, coeffs);
    }

    let mut coeffs: Vec<u64> = Vec::new();
    let mut var: Option<char> = None;
    let chars: Vec<char> = compact.chars().collect();
    let mut i = 0;
    let mut expect_term = true;
    let mut negative = false;
    while i < chars.len() {
        let c = chars[i];
        if c == '+' || c == '-' {
            if !expect_term && i + 1 < chars.len() {
                expect_term = true;
                negative = c == '-';
                i += 1;
                continue;
            }
            if expect_term && i == 0 && c == '-' {
                negative = true;
                i += 1;
                continue;
            }
            return Err(err("misplaced sign"));
        }
        if !expect_term {
            return Err(err("expected '+' or '-' between terms"));
        }
        // coefficient
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coef: Option<u64> = if i > start {
            let s: String = chars[start..i].iter().collect();
            Some(s.parse::<u64>().map_err(|_| err("coefficient too large"))? % pm)
        } else {
            None
        };
        let mut exp = 0usize;
        if i < chars.len() && chars[i] == '*' {
            if coef.is_none() {
                return Err(err("'*' without a coefficient"));
            }
            i += 1;
            if i >= chars.len() || !chars[i].is_ascii_lowercase() {
                return Err(err("expected variable after '*'"));
            }
        }
        if i < chars.len() && chars[i].is_ascii_lowercase() {
            let v = chars[i];
            match var {
                Some(prev) if prev != v => return Err(err("mixed variable names")),
                _ => var = Some(v),
            }
            i += 1;
            exp = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let es = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == es {
                    return Err(err("missing exponent after '^'"));
                }
                let s: String = chars[es..i].iter().collect();
                exp = s.parse::<usize>().map_err(|_| err("exponent too large"))?;
                if exp > 4096 {
                    return Err(err("exponent too large"));
                }
            }
        } else if coef.is_none() {
            return Err(err(&format!("unexpected character {:?}", chars[i.min(chars.len() - 1)])));
        }
        let mut c = coef.unwrap_or(1);
        if negative {
            c = (pm - c % pm) % pm;
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = (coeffs[exp] + c) % pm;
        expect_term = false;
        negative = false;
    }
    if expect_term {
        return Err(err("dangling operator"));
    }
    Poly::new(p, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_human_form() {
        let f = parse_poly("x^2+x+2", 3).unwrap();
        assert_eq!(f.coeffs(), &[2, 1, 1]);
        assert_eq!(f.to_string(), "x^2 + x + 2");
    }

    #[test]
    fn parse_zero_and_reduction() {
        assert!(parse_poly("0", 5).unwrap().is_zero());
        let f = parse_poly("3x^2+5x+7", 2).unwrap();
        assert_eq!(f.coeffs(), &[1, 1, 1]);
        let g = parse_poly("3*x^2 + 5*x + 7", 2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parse_coefficient_list_and_minus() {
        let f = parse_poly("2,1,1", 3).unwrap();
        assert_eq!(f.coeffs(), &[2, 1, 1]);
        let g = parse_poly("x - 1", 5).unwrap();
        assert_eq!(g.coeffs(), &[4, 1]);
        let t = parse_poly("t^2+2t+2", 3).unwrap();
        assert_eq!(t.coeffs(), &[2, 2, 1]);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x^", "x++1", "2*", "x^2 y", "x+t", "1,a", "+", "x^2+"] {
            assert!(parse_poly(bad, 3).is_err(), "{bad:?} should fail");
        }
        assert_eq!(parse_poly("x", 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn canonical_print() {
        let f = Poly::new(5, [3, 0, 2, 0, 1]).unwrap();
        assert_eq!(f.to_string(), "x^4 + 2*x^2 + 3");
        assert_eq!(Poly::new(3, [0, 2]).unwrap().to_string(), "2*x");
        assert_eq!(Poly::zero(7).to_string(), "0");
    }

    #[test]
    fn division_identity() {
        let a = Poly::new(7, [3, 1, 4, 1, 5, 6]).unwrap();
        let b = Poly::new(7, [2, 0, 3]).unwrap();
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = Poly::new(5, [1, 2, 0, 1]).unwrap();
        let b = Poly::new(5, [4, 1]).unwrap();
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn reciprocal_examples() {
        let f = parse_poly("x^2+x+2", 3).unwrap();
        assert_eq!(f.reciprocal().unwrap().to_string(), "x^2 + 2*x + 2");
        let f = parse_poly("x^4+2", 5).unwrap();
        assert_eq!(f.reciprocal().unwrap().to_string(), "x^4 + 3");
        let f = parse_poly("x^3+x+1", 2).unwrap();
        assert_eq!(f.reciprocal().unwrap().to_string(), "x^3 + x^2 + 1");
        assert!(parse_poly("x^2+x", 3).unwrap().reciprocal().is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(624), vec![2, 3, 13]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(7), vec![7]);
    }
}

//! Concrete models K_f = F_p[x]/(f) and their element arithmetic.
//!
//! Elements are addressed by their integer code sum(a_i * p^i), constant term
//! as the least significant digit. The code doubles as the vertex index of
//! every graph built from the model.

use std::fmt;

use crate::error::{Error, Result};

use super::irreducible::is_irreducible;
use super::poly::{add_mod, inv_mod, mul_mod, prime_factors, sub_mod, Poly};

/// A validated model of the field with p^k elements together with the
/// Frobenius orbit S = {x, x^p, ..., x^(p^(k-1))}.
#[derive(Clone)]
pub struct FieldModel {
    p: u32,
    k: usize,
    modulus: Poly,
    order: u64,
    generators: Vec<u64>,
    /// For each generator s, the rows x^i * s mod f (i < k) as digit vectors.
    gen_mul: Vec<Vec<Vec<u32>>>,
}

impl PartialEq for FieldModel {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldModel {}

impl fmt::Debug for FieldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[x]/({})", self.p, self.modulus)
    }
}

impl FieldModel {
    /// Validates f (monic, irreducible, x not zero) and computes S.
    pub fn new(f: &Poly) -> Result<Self> {
        let p = f.modulus();
        let k = match f.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(k) => k,
        };
        if !f.is_monic() {
            return Err(Error::NotMonic(f.to_string()));
        }
        if !is_irreducible(f)? {
            return Err(Error::Reducible(f.to_string()));
        }
        if k == 1 && f.coeff(0) == 0 {
            return Err(Error::DegenerateGenerator(f.to_string()));
        }
        let order = (p as u64)
            .checked_pow(k as u32)
            .filter(|&q| q < (1u64 << 62))
            .ok_or(Error::FieldTooLarge { p, k })?;

        let mut model = FieldModel {
            p,
            k,
            modulus: f.clone(),
            order,
            generators: Vec::with_capacity(k),
            gen_mul: Vec::with_capacity(k),
        };
        let mut s = Poly::x(p).rem(f);
        for _ in 0..k {
            model.generators.push(model.code_of(&s));
            s = s.pow_mod(p as u64, f);
        }
        for i in 0..k {
            let s = model.poly_of(model.generators[i]);
            let rows = (0..k)
                .map(|j| model.digits_of_poly(&Poly::monomial(p, j).mul(&s).rem(f)))
                .collect();
            model.gen_mul.push(rows);
        }
        Ok(model)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Field cardinality q = p^k.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Codes of S in Frobenius order: generators()[i] = x^(p^i).
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn x(&self) -> u64 {
        self.generators[0]
    }

    pub fn one(&self) -> u64 {
        1
    }

    pub fn check(&self, code: u64) -> Result<u64> {
        if code < self.order {
            Ok(code)
        } else {
            Err(Error::ElementOutOfRange {
                code,
                order: self.order,
            })
        }
    }

    /// Base-p digits of a code, length k.
    pub fn digits(&self, mut code: u64) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.k)
            .map(|_| {
                let d = (code % p) as u32;
                code /= p;
                d
            })
            .collect()
    }

    pub fn code_of_digits(&self, digits: &[u32]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }

    fn digits_of_poly(&self, a: &Poly) -> Vec<u32> {
        (0..self.k).map(|i| a.coeff(i)).collect()
    }

    /// Code of a polynomial representative (reduced mod f first).
    pub fn code_of(&self, a: &Poly) -> u64 {
        let r = a.rem(&self.modulus);
        self.code_of_digits(&self.digits_of_poly(&r))
    }

    pub fn poly_of(&self, code: u64) -> Poly {
        Poly::from_reduced(self.p, self.digits(code))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.p as u64;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let digits: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|d| sub_mod(0, d, self.p))
            .collect();
        self.code_of_digits(&digits)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.code_of(&self.poly_of(a).mul(&self.poly_of(b)))
    }

    /// s_i * y using the precomputed multiplication matrix of generator i.
    pub fn mul_by_generator(&self, gen_index: usize, y: u64) -> u64 {
        let rows = &self.gen_mul[gen_index];
        let mut acc = vec![0u32; self.k];
        for (yi, row) in self.digits(y).into_iter().zip(rows) {
            if yi == 0 {
                continue;
            }
            for (a, &r) in acc.iter_mut().zip(row) {
                *a = add_mod(*a, mul_mod(yi, r, self.p), self.p);
            }
        }
        self.code_of_digits(&acc)
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let (g, s, _) = self.poly_of(a).ext_gcd(&self.modulus);
        debug_assert_eq!(g, Poly::one(self.p));
        Ok(self.code_of(&s))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        self.code_of(&self.poly_of(a).pow_mod(e, &self.modulus))
    }

    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.p as u64)
    }

    /// Least n >= 1 with a^n = 1.
    pub fn element_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroOrder);
        }
        let group = self.order - 1;
        let mut n = group;
        for q in prime_factors(group) {
            while n % q == 0 && self.pow(a, n / q) == 1 {
                n /= q;
            }
        }
        Ok(n)
    }

    /// x generates the unit group.
    pub fn is_primitive(&self) -> bool {
        self.element_order(self.x()).map(|n| n == self.order - 1).unwrap_or(false)
    }

    /// The conjugates of x form an F_p-basis.
    pub fn is_normal(&self) -> bool {
        let rows: Vec<Vec<u32>> = self.generators.iter().map(|&s| self.digits(s)).collect();
        rank_mod_p(rows, self.p) == self.k
    }

    /// The model of the monic reciprocal polynomial.
    pub fn reciprocal(&self) -> Result<FieldModel> {
        FieldModel::new(&self.modulus.reciprocal()?)
    }

    /// Vertex permutation induced by the field automorphism y -> y^(p^j).
    pub fn frobenius_permutation(&self, j: usize) -> Vec<u64> {
        let e = (self.p as u64).pow((j % self.k) as u32);
        (0..self.order).map(|y| self.pow(y, e)).collect()
    }

    /// Vertex permutation y -> -y.
    pub fn negation_permutation(&self) -> Vec<u64> {
        (0..self.order).map(|y| self.neg(y)).collect()
    }

    /// Checked element handle.
    pub fn elem(&self, code: u64) -> Result<FieldElem<'_>> {
        Ok(FieldElem {
            model: self,
            code: self.check(code)?,
        })
    }

    pub fn elem_from_poly(&self, a: &Poly) -> FieldElem<'_> {
        FieldElem {
            model: self,
            code: self.code_of(a),
        }
    }
}

/// Gaussian elimination rank over F_p.
pub fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let c = rows[r][col];
                let pivot_row = rows[rank].clone();
                for (v, pv) in rows[r].iter_mut().zip(pivot_row) {
                    *v = sub_mod(*v, mul_mod(c, pv, p), p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// An element tied to its model; binary operations reject mixed models.
#[derive(Clone, Copy)]
pub struct FieldElem<'m> {
    model: &'m FieldModel,
    code: u64,
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.model == other.model
    }
}

impl Eq for FieldElem<'_> {}

impl fmt::Debug for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.poly(), self.model)
    }
}

impl fmt::Display for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

impl<'m> FieldElem<'m> {
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn model(&self) -> &'m FieldModel {
        self.model
    }

    pub fn poly(&self) -> Poly {
        self.model.poly_of(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_model(&self, other: &FieldElem<'_>) -> Result<()> {
        if std::ptr::eq(self.model, other.model) || self.model == other.model {
            Ok(())
        } else {
            Err(Error::MixedModels)
        }
    }

    fn wrap(&self, code: u64) -> FieldElem<'m> {
        FieldElem {
            model: self.model,
            code,
        }
    }

    pub fn add(&self, other: &FieldElem<'_>) -> Result<FieldElem<'m>> {
        self.same_model(other)?;
        Ok(self.wrap(self.model.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &FieldElem<'_>) -> Result<FieldElem<'m>> {
        self.same_model(other)?;
        Ok(self.wrap(self.model.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &FieldElem<'_>) -> Result<FieldElem<'m>> {
        self.same_model(other)?;
        Ok(self.wrap(self.model.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> FieldElem<'m> {
        self.wrap(self.model.neg(self.code))
    }

    pub fn inv(&self) -> Result<FieldElem<'m>> {
        Ok(self.wrap(self.model.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> FieldElem<'m> {
        self.wrap(self.model.pow(self.code, e))
    }

    pub fn frobenius(&self) -> FieldElem<'m> {
        self.wrap(self.model.frobenius(self.code))
    }

    pub fn order(&self) -> Result<u64> {
        self.model.element_order(self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_poly;

    fn model(text: &str, p: u32) -> FieldModel {
        FieldModel::new(&parse_poly(text, p).unwrap()).unwrap()
    }

    fn gens_as_text(m: &FieldModel) -> Vec<String> {
        m.generators().iter().map(|&s| m.poly_of(s).to_string()).collect()
    }

    #[test]
    fn generator_orbits() {
        assert_eq!(gens_as_text(&model("x^2+x+2", 3)), ["x", "2*x + 2"]);
        assert_eq!(gens_as_text(&model("x^2+2x+2", 3)), ["x", "2*x + 1"]);
        for p in [3u32, 7, 11] {
            let m = model("x^2+1", p);
            let minus_x = m.neg(m.x());
            assert_eq!(m.generators(), &[m.x(), minus_x]);
        }
    }

    #[test]
    fn construction_errors() {
        let f = parse_poly("2x^2+1", 3).unwrap();
        assert!(matches!(FieldModel::new(&f), Err(Error::NotMonic(_))));
        let f = parse_poly("x^2+1", 5).unwrap();
        assert!(matches!(FieldModel::new(&f), Err(Error::Reducible(_))));
        let f = parse_poly("x", 5).unwrap();
        assert!(matches!(
            FieldModel::new(&f),
            Err(Error::DegenerateGenerator(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let m = model("t^2+2t+2", 3);
        let t = m.elem(m.x()).unwrap();
        let expected = m.elem_from_poly(&parse_poly("t+2", 3).unwrap());
        assert_eq!(t.inv().unwrap(), expected);

        let m = model("x^2+x+2", 3);
        let a = m.elem_from_poly(&parse_poly("2x+2", 3).unwrap());
        let x = m.elem(m.x()).unwrap();
        assert_eq!(a.mul(&x).unwrap().code(), 2);
        assert_eq!(a.add(&x).unwrap().code(), 2);

        assert_eq!(m.elem(0).unwrap().inv(), Err(Error::ZeroInverse));
        let other = model("x^2+1", 3);
        assert_eq!(
            x.add(&other.elem(1).unwrap()),
            Err(Error::MixedModels)
        );
        assert!(m.elem(9).is_err());
    }

    #[test]
    fn orders_and_flags() {
        let m = model("x^3+x+1", 2);
        assert_eq!(m.element_order(m.x()).unwrap(), 7);
        assert!(m.is_primitive());
        assert!(!m.is_normal());
        let m = model("x^3+x^2+1", 2);
        assert!(m.is_normal());
        let m = model("x^2+1", 3);
        assert_eq!(m.element_order(m.x()).unwrap(), 4);
        assert_eq!(m.element_order(1).unwrap(), 1);
        assert!(!m.is_primitive());
        assert_eq!(m.element_order(0), Err(Error::ZeroOrder));
        assert!(model("x^2+x+2", 3).is_normal());
        for p in [3u32, 5, 7] {
            assert!(!model("x-1", p).is_primitive());
        }
    }

    #[test]
    fn order_by_power_iteration() {
        let m = model("x^2+1", 3);
        let mut acc = m.x();
        let mut n = 1;
        while acc != 1 {
            acc = m.mul(acc, m.x());
            n += 1;
        }
        assert_eq!(n, 4);
    }

    #[test]
    fn generator_matrix_matches_general_multiplication() {
        let m = model("x^4+x+2", 3);
        for i in 0..m.k() {
            for y in 0..m.order() {
                assert_eq!(m.mul_by_generator(i, y), m.mul(m.generators()[i], y));
            }
        }
    }

    #[test]
    fn frobenius_orbit_closes() {
        let m = model("x^5+x^2+1", 2);
        for y in 0..m.order() {
            let mut z = y;
            for _ in 0..m.k() {
                z = m.frobenius(z);
            }
            assert_eq!(z, y);
        }
        let last = *m.generators().last().unwrap();
        assert_eq!(m.frobenius(last), m.x());
    }
}

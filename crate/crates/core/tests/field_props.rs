mod common;

use proptest::prelude::*;

use common::models;
use fieldgraph::field::{enumerate_irreducibles, irreducible_count, is_irreducible, parse_poly, Poly};
use fieldgraph::FieldModel;

fn model_strategy() -> impl Strategy<Value = FieldModel> {
    let all: Vec<FieldModel> = [(2, 3), (2, 5), (3, 2), (3, 4), (5, 2), (5, 3), (7, 2), (11, 1), (13, 2)]
        .into_iter()
        .flat_map(|(p, k)| models(p, k))
        .collect();
    proptest::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms(m in model_strategy(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let q = m.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(m.add(a, b), m.add(b, a));
        prop_assert_eq!(m.mul(a, b), m.mul(b, a));
        prop_assert_eq!(m.add(m.add(a, b), c), m.add(a, m.add(b, c)));
        prop_assert_eq!(m.mul(m.mul(a, b), c), m.mul(a, m.mul(b, c)));
        prop_assert_eq!(m.mul(a, m.add(b, c)), m.add(m.mul(a, b), m.mul(a, c)));
        prop_assert_eq!(m.add(a, m.neg(a)), 0);
        prop_assert_eq!(m.sub(m.add(a, b), b), a);
        prop_assert_eq!(m.mul(a, m.one()), a);
        if a != 0 {
            prop_assert_eq!(m.mul(a, m.inv(a).unwrap()), m.one());
            prop_assert_eq!(m.pow(a, q - 1), m.one());
        } else {
            prop_assert!(m.inv(a).is_err());
        }
        // Frobenius is a ring homomorphism
        prop_assert_eq!(m.frobenius(m.add(a, b)), m.add(m.frobenius(a), m.frobenius(b)));
        prop_assert_eq!(m.frobenius(m.mul(a, b)), m.mul(m.frobenius(a), m.frobenius(b)));
    }

    #[test]
    fn codes_round_trip(m in model_strategy(), a in any::<u64>()) {
        let a = a % m.order();
        prop_assert_eq!(m.code_of(&m.poly_of(a)), a);
        prop_assert_eq!(m.code_of_digits(&m.digits(a)), a);
    }

    #[test]
    fn generators_are_frobenius_orbit(m in model_strategy()) {
        let s = m.generators();
        prop_assert_eq!(s.len(), m.k());
        prop_assert_eq!(s[0], m.x());
        for j in 1..s.len() {
            prop_assert_eq!(s[j], m.frobenius(s[j - 1]));
        }
        prop_assert_eq!(m.frobenius(s[s.len() - 1]), s[0]);
    }

    #[test]
    fn reciprocal_root_is_inverse(m in model_strategy()) {
        let r = m.modulus().reciprocal().unwrap();
        prop_assert!(is_irreducible(&r).unwrap());
        prop_assert_eq!(r.reciprocal().unwrap(), m.modulus().clone());
        // f(x) = 0 in K_f, so x^-1 is a root of the reciprocal
        let xinv = m.inv(m.x()).unwrap();
        let mut acc = 0;
        for &c in r.coeffs().iter().rev() {
            acc = m.add(m.mul(acc, xinv), c as u64);
        }
        prop_assert_eq!(acc, 0);
    }
}

#[test]
fn counts_match_necklace_formula() {
    for (p, k) in [(2, 1), (2, 4), (2, 8), (3, 5), (5, 4), (7, 3), (13, 2)] {
        let list = enumerate_irreducibles(p, k).unwrap();
        assert_eq!(list.len() as u64, irreducible_count(p, k), "{p}^{k}");
        let mut sorted = list.clone();
        sorted.sort_by(Poly::lex_cmp);
        assert_eq!(sorted, list);
    }
}

#[test]
fn brute_force_irreducibility() {
    // degree <= 3 over F_p is irreducible iff no root
    for p in [2u32, 3, 5] {
        for k in 2..=3 {
            for f in enumerate_irreducibles(p, k).unwrap() {
                assert!((0..p).all(|a| f.eval(a) != 0));
            }
        }
    }
    assert!(!is_irreducible(&parse_poly("x^4+x^2+1", 2).unwrap()).unwrap());
}

#[test]
fn primitivity_and_normality_by_definition() {
    for m in models(2, 4).into_iter().chain(models(3, 3)).chain(models(5, 2)) {
        let q = m.order();
        let ord = m.element_order(m.x()).unwrap();
        assert_eq!(m.is_primitive(), ord == q - 1);
        // normal iff the conjugates span: brute-force every nonzero combination
        let p = m.p() as u64;
        let s = m.generators();
        let mut spans = true;
        for coeffs in 1..p.pow(m.k() as u32) {
            let mut c = coeffs;
            let mut acc = 0;
            for &g in s {
                acc = m.add(acc, m.mul(c % p, g));
                c /= p;
            }
            if acc == 0 {
                spans = false;
                break;
            }
        }
        assert_eq!(m.is_normal(), spans, "{:?}", m.modulus());
    }
}

#[test]
fn cubic_flags_over_f2() {
    let a = FieldModel::new(&parse_poly("x^3+x+1", 2).unwrap()).unwrap();
    let b = FieldModel::new(&parse_poly("x^3+x^2+1", 2).unwrap()).unwrap();
    assert!(a.is_primitive() && b.is_primitive());
    assert!(!a.is_normal());
    assert!(b.is_normal());
}

#[test]
fn invalid_inputs() {
    assert!(parse_poly("x^2+1", 4).is_err());
    assert!(FieldModel::new(&parse_poly("x^2+1", 5).unwrap()).is_err());
    assert!(FieldModel::new(&parse_poly("x", 5).unwrap()).is_err());
    assert!(parse_poly("x^^2", 5).is_err());
}

use proptest::prelude::*;

use mukai_k3::exact::ComplexRational;
use mukai_k3::fm::{Direction, FourierMukai};
use mukai_k3::io::{class_to_json, parse_class};
use mukai_k3::{GradedClass, K3Model, Rational, Side};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn complex() -> impl Strategy<Value = ComplexRational> {
    (rational(), rational()).prop_map(|(a, b)| ComplexRational::new(a, b))
}

fn class() -> impl Strategy<Value = GradedClass> {
    prop::collection::vec(rational(), 24).prop_map(|v| GradedClass::from_vec(&v).unwrap())
}

fn model() -> K3Model {
    K3Model::nodal24()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn complex_conjugation(z in complex(), w in complex()) {
        prop_assert_eq!(z.conj().conj(), z.clone());
        prop_assert_eq!((&z * &w).conj(), &z.conj() * &w.conj());
        prop_assert_eq!(&z * &z.conj(), ComplexRational::real(z.norm_sqr()));
        prop_assert_eq!(z.to_string().parse::<ComplexRational>().unwrap(), z);
    }

    #[test]
    fn graded_vector_space(x in class(), y in class(), k in rational(), l in rational()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(x.scale(&(&k + &l)), &x.scale(&k) + &x.scale(&l));
        prop_assert_eq!((&x + &y).scale(&k), &x.scale(&k) + &y.scale(&k));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn cup_is_commutative_and_associative(x in class(), y in class(), z in class()) {
        let m = model();
        prop_assert_eq!(m.cup(&x, &y).unwrap(), m.cup(&y, &x).unwrap());
        let left = m.cup(&m.cup(&x, &y).unwrap(), &z).unwrap();
        let right = m.cup(&x, &m.cup(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn mukai_pairing_is_symmetric(x in class(), y in class()) {
        let m = model();
        prop_assert_eq!(m.mukai_pair(&x, &y).unwrap(), m.mukai_pair(&y, &x).unwrap());
    }

    #[test]
    fn star_is_an_involution(x in class()) {
        let m = model();
        prop_assert_eq!(m.star(&m.star(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn fiberwise_decomposition(x in class()) {
        let m = model();
        let (pullback, rest) = m.decompose_fiberwise(&x).unwrap();
        prop_assert_eq!(&pullback + &rest, x);
        prop_assert!(rest.deg0.is_zero());
        prop_assert!(m.section_restriction(&rest.deg2).unwrap().is_zero());
    }

    #[test]
    fn reverse_transform_negates(x in class()) {
        let m = model();
        let fm = FourierMukai::new(&m);
        let there = fm.rr_transform(&x, Direction::XToXHat).unwrap();
        prop_assert_eq!(fm.rr_transform(&there, Direction::XHatToX).unwrap(), -x);
    }

    #[test]
    fn canonical_json_round_trips(x in class()) {
        let m = model();
        for side in [Side::X, Side::XHat] {
            let text = class_to_json(&m, &x, side);
            let back = parse_class(&m, &text).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(class_to_json(&m, &back, side), text);
        }
    }
}

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::phase::{Bindings, LinearForm, PhaseExponent};
use crate::rational::Gauss;

fn ph(s: &str) -> PhaseExponent {
    PhaseExponent::new(s.parse().unwrap())
}

/// S⁵ with a generic 3×3 deformation.
fn s5() -> AlgebraSpec {
    AlgebraSpec::builder("S5", 3)
        .generator("z1", vec![1, 0, 0])
        .generator("z2", vec![0, 1, 0])
        .generator("z3", vec![0, 0, 1])
        .deform(0, 1, "theta12".parse().unwrap())
        .deform(0, 2, "theta13".parse().unwrap())
        .deform(1, 2, "theta23".parse().unwrap())
        .relation("z1*z1^* + z2*z2^* + z3*z3^* - 1")
        .build()
        .unwrap()
}

fn arb_weight(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, rank)
}

fn arb_word(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(0u16..6, 0..=max_len)
}

#[test]
fn sphere_rule_orientation() {
    let s = s5();
    let e = s.parse("z3*z3^*").unwrap();
    assert_eq!(s.reduce(&e).unwrap(), s.parse("1 - z1*z1^* - z2*z2^*").unwrap());
    assert_eq!(s.reduce(&Element::one()).unwrap(), Element::one());
}

#[test]
fn bicharacter_examples() {
    let s = s5();
    let p = s.bicharacter(&[1, 0, 0], &[0, 1, 0]).unwrap();
    assert_eq!(p, ph("theta12"));
    assert!(s.bicharacter(&[2, -1, 1], &[2, -1, 1]).unwrap().is_generically_trivial());
    assert!(matches!(s.bicharacter(&[1, 0], &[0, 1, 0]), Err(crate::Error::DimensionMismatch { .. })));
}

#[test]
fn commutation_of_generators() {
    let s = s5();
    let z1 = letter(0, false);
    let z2 = letter(1, false);
    assert_eq!(s.commutation_phase(z1, z2), ph("2*theta12"));
    assert!(s.commutation_phase(z1, letter(0, true)).is_generically_trivial());
    // z1 × z2 = e^{2πiθ12} z2 × z1
    let lhs = s.word(&[z1, z2]).unwrap();
    let rhs = s.word(&[z2, z1]).unwrap().mul_phase(&ph("2*theta12"));
    assert_eq!(lhs, rhs);
}

#[test]
fn star_examples() {
    let s = s5();
    let e = s.parse("z1*z2^*").unwrap();
    assert_eq!(s.star(&e), s.parse("z2*z1^*").unwrap());
    let t = Element::one().mul_phase(&ph("2*theta12"));
    assert_eq!(s.star(&t), Element::one().mul_phase(&ph("-2*theta12")));
}

#[test]
fn element_text_round_trip() {
    let s = s5();
    let e = s
        .parse("3/2*exp(pi*i*(1/3 + theta12))*z1^*^2*z3 - i*z2 + (1 + 2*i)*exp(pi*i*theta23) + 7")
        .unwrap();
    let text = s.render(&e);
    assert_eq!(s.parse(&text).unwrap(), e);
    assert_eq!(s.render(&s.parse("z1^**z1").unwrap()), "z1*z1^*");
    assert!(matches!(s.parse("q1"), Err(crate::Error::UnknownGenerator(_))));
}

#[test]
fn spec_validation() {
    let bad = AlgebraSpec::builder("X", 2)
        .generator("x", vec![1, 0])
        .deformation(vec![
            vec![LinearForm::zero(), "t".parse().unwrap()],
            vec!["t".parse().unwrap(), LinearForm::zero()],
        ])
        .build();
    assert!(matches!(bad, Err(crate::Error::NotSkew(0, 1))));
    let backwards = AlgebraSpec::builder("X", 1).generator("x", vec![1]).rule("1", "x*x^*").build();
    assert!(matches!(backwards, Err(crate::Error::NonTerminating(_))));
    let phased = AlgebraSpec::builder("X", 1)
        .generator("x", vec![1])
        .relation("exp(pi*i*t)*x*x^* - 1")
        .build();
    assert!(matches!(phased, Err(crate::Error::NonScalarRelation(_))));
    let wrong = s5().mul(&Element::from_letter(letter(7, false)), &Element::one());
    assert!(matches!(wrong, Err(crate::Error::SpecMismatch(_))));
}

#[test]
fn deformed_reordering_from_the_fibration() {
    // z3 z6* z5 z2* = z5 z2* z3 z6* once λ2 - λ3 = -2θ.
    let mut b = AlgebraSpec::builder("S5xS5", 6);
    for j in 1..=6 {
        let mut w = vec![0; 6];
        w[j - 1] = 1;
        b = b.generator(&format!("z{j}"), w);
    }
    for j in 0..6 {
        for k in j + 1..6 {
            b = b.deform(j, k, format!("tp_{}{}", j + 1, k + 1).parse().unwrap());
        }
    }
    let s = b.build().unwrap();
    let w = |t: &str| s.parse_deformed_word(t).unwrap();
    let lhs = s.product([&w("z3"), &w("z6^*"), &w("z5"), &w("z2^*")]).unwrap();
    let rhs = s.product([&w("z5"), &w("z2^*"), &w("z3"), &w("z6^*")]).unwrap();
    assert_ne!(lhs, rhs);
    let bind = Bindings::new()
        .bind("tp_23", "-theta".parse().unwrap())
        .bind("tp_56", "-theta".parse().unwrap())
        .bind("tp_26", "lambda2".parse().unwrap())
        .bind("tp_35", "lambda3".parse().unwrap())
        .bind("lambda2", "lambda1 - theta".parse().unwrap())
        .bind("lambda3", "lambda1 + theta".parse().unwrap());
    assert_eq!(lhs.substitute(&bind).unwrap(), rhs.substitute(&bind).unwrap());
}

#[test]
fn random_order_reduction_agrees_with_normal_form() {
    let s = s5();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let deg = rng.gen_range(0..=6);
        let word: Vec<Letter> = (0..deg).map(|_| rng.gen_range(0..6)).collect();
        let e = s.word(&word).unwrap().add(&s.parse("z3*z3^**z1").unwrap());
        let nf = s.reduce(&e).unwrap();
        let mut choose = |n: usize| rng.gen_range(0..n);
        let alt = s.rewrite_system().reduce_with_choices(&e, &mut choose).unwrap();
        assert_eq!(nf, alt);
    }
}

proptest! {
    #[test]
    fn bicharacter_is_bilinear_and_antisymmetric(
        a in arb_weight(3), b in arb_weight(3), c in arb_weight(3)
    ) {
        let s = s5();
        let bc: Vec<i64> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
        let lhs = s.bicharacter(&a, &bc).unwrap();
        let rhs = s.bicharacter(&a, &b).unwrap().mul(&s.bicharacter(&a, &c).unwrap());
        prop_assert_eq!(lhs, rhs);
        let ab = s.bicharacter(&a, &b).unwrap();
        let ba = s.bicharacter(&b, &a).unwrap();
        prop_assert_eq!(ab, ba.conj());
        prop_assert!(s.bicharacter(&a, &a).unwrap().is_generically_trivial());
    }

    #[test]
    fn product_is_associative(x in arb_word(2), y in arb_word(2), z in arb_word(2)) {
        let s = s5();
        let (a, b, c) = (s.word(&x).unwrap(), s.word(&y).unwrap(), s.word(&z).unwrap());
        let left = s.mul(&s.mul(&a, &b).unwrap(), &c).unwrap();
        let right = s.mul(&a, &s.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(s.mul(&a, &Element::one()).unwrap(), a.clone());
        prop_assert_eq!(s.mul(&Element::one(), &a).unwrap(), a);
    }

    #[test]
    fn star_reverses_products(x in arb_word(2), y in arb_word(2)) {
        let s = s5();
        let a = s.word(&x).unwrap().mul_phase(&ph("theta13 + 1/4"));
        let b = s.word(&y).unwrap().scale(&Gauss::i());
        let lhs = s.star(&s.mul(&a, &b).unwrap());
        let rhs = s.mul(&s.star(&b), &s.star(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classical_limit(x in arb_word(3), y in arb_word(3)) {
        let s = s5().classical();
        let (a, b) = (s.word(&x).unwrap(), s.word(&y).unwrap());
        prop_assert_eq!(s.mul(&a, &b).unwrap(), a.classical_mul(&b));
    }

    #[test]
    fn reduction_is_idempotent_and_weight_preserving(x in arb_word(6)) {
        let s = s5();
        let e = s.word(&x).unwrap();
        let r = s.reduce(&e).unwrap();
        prop_assert_eq!(s.reduce(&r).unwrap(), r.clone());
        let w = s.homogeneous_weight(&e);
        prop_assert!(w.is_some());
        if !r.is_zero() {
            prop_assert_eq!(s.homogeneous_weight(&r), w);
        }
    }
}

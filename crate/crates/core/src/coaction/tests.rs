use std::sync::OnceLock;

use super::*;
use crate::quantumgroup::build_su3_theta;

fn hopf() -> &'static HopfSpec {
    static H: OnceLock<HopfSpec> = OnceLock::new();
    H.get_or_init(|| build_su3_theta("theta").unwrap())
}

fn lf(s: &str) -> LinearForm {
    s.parse().unwrap()
}

fn s5_theorem() -> Bindings {
    Bindings::new().bind("theta12", lf("-theta")).bind("theta13", lf("theta")).bind("theta23", lf("-theta"))
}

#[test]
fn delta_on_generators() {
    let c = s5_generic(hopf()).unwrap();
    let z1 = c.target().gen("z1").unwrap();
    let t = c.tensor();
    assert_eq!(t.render(&c.apply(&z1).unwrap()), "u11@1*z1@2 + u12@1*z2@2 + u13@1*z3@2");
    assert_eq!(c.apply(&Element::one()).unwrap(), Element::one());
    let z2s = c.target().gen_adj("z2").unwrap();
    assert_eq!(t.render(&c.apply(&z2s).unwrap()), "u21@1^**z1@2^* + u22@1^**z2@2^* + u23@1^**z3@2^*");

    let d = s5xs5_generic(hopf()).unwrap();
    let z4 = d.target().gen("z4").unwrap();
    assert_eq!(d.tensor().render(&d.apply(&z4).unwrap()), "u11@1*z4@2 + u12@1*z5@2 + u13@1*z6@2");
    let z3 = d.target().gen("z3").unwrap();
    assert_eq!(d.tensor().render(&d.apply(&z3).unwrap()), "u31@1*z1@2 + u32@1*z2@2 + u33@1*z3@2");
}

#[test]
fn sphere_sums_map_to_one() {
    let c = s5xs5_generic(hopf()).unwrap().substitute(&Bindings::zero_all(&[])).unwrap();
    let c = c.classical();
    for s in ["z1*z1^* + z2*z2^* + z3*z3^*", "z4*z4^* + z5*z5^* + z6*z6^*"] {
        let x = c.target().parse(s).unwrap();
        let d = c.tensor().reduce(&c.apply(&x).unwrap()).unwrap();
        assert_eq!(d, Element::one());
    }
}

#[test]
fn non_skew_target_is_rejected() {
    let mut m = generic_matrix(3, "t");
    m[1][0] = lf("t12");
    assert!(matches!(build_s5_coaction(hopf(), m), Err(Error::NotSkew(..))));
}

#[test]
fn s5_constraints_are_theorem_conditions() {
    let c = s5_generic(hopf()).unwrap();
    let cs = c.extract_constraints().unwrap();
    assert_eq!(cs.lines(), vec!["-theta + theta13 = 0", "theta + theta12 = 0", "theta + theta23 = 0"]);
    assert!(c.substitute(&s5_theorem()).unwrap().check_homomorphism().unwrap().passed());
    assert!(c.substitute(&cs.bindings()).unwrap().check_homomorphism().unwrap().passed());
}

#[test]
fn generic_s5_reports_witness() {
    let c = s5_generic(hopf()).unwrap();
    let checks = c.pair_checks().unwrap();
    assert_eq!(checks.len(), 36);
    let z12 = checks.iter().find(|p| p.left == letter(0, false) && p.right == letter(1, false)).unwrap();
    assert!(!z12.passed);
    let expected = PhaseExponent::new(lf("theta12 + theta"));
    assert!(z12.mismatches.contains(&expected), "{:?}", z12.mismatches);
}

#[test]
fn classical_coaction_is_a_homomorphism() {
    let c = s5_generic(hopf()).unwrap().classical();
    assert!(c.check_homomorphism().unwrap().passed());
    assert!(c.extract_constraints().unwrap().is_empty());
}

#[test]
fn s5xs5_constraints_match_block_system() {
    let c = s5xs5_generic(hopf()).unwrap();
    let cs = c.extract_constraints().unwrap();
    let expected = [
        "tp_12 + theta", "tp_13 - theta", "tp_23 + theta",
        "tp_45 + theta", "tp_46 - theta", "tp_56 + theta",
        "tp_14 - tp_25", "tp_25 - tp_36",
        "tp_15 - tp_26", "tp_26 - tp_34",
        "tp_16 - tp_24", "tp_24 - tp_35",
        "tp_14 - tp_15 - theta", "tp_16 - tp_14 - theta",
    ];
    let want = ConstraintSet::new(expected.iter().map(|s| lf(s)), &c.constraint_columns());
    assert!(cs.same_solutions(&want), "{cs}");
    assert_eq!(cs.rank(), 14);
    let free: Vec<String> = cs.free_params().iter().map(|p| p.to_string()).collect();
    assert_eq!(free, vec!["tp_14", "theta"]);
}

#[test]
fn axioms_hold() {
    let c = s5_generic(hopf()).unwrap().substitute(&s5_theorem()).unwrap();
    let r = c.check_coaction_axioms().unwrap();
    assert!(r.passed(), "{r}");
    let d = s5xs5_generic(hopf()).unwrap();
    let d = d.substitute(&d.extract_constraints().unwrap().bindings()).unwrap();
    assert!(d.check_coaction_axioms().unwrap().passed());
}

#[test]
fn counit_on_z2() {
    let c = s5_generic(hopf()).unwrap();
    let d = c.apply(&c.target().gen("z2").unwrap()).unwrap();
    let mut eps = Element::zero();
    for (t, k) in d.terms() {
        let parts = c.tensor().split_monomial(t);
        eps.add_term(parts[1].clone(), &k.mul(&c.hopf().counit(&Element::from_monomial(parts[0].clone()))));
    }
    assert_eq!(eps, c.target().gen("z2").unwrap());
}

#[test]
fn s5_is_cotransitive() {
    let c = s5_generic(hopf()).unwrap().substitute(&s5_theorem()).unwrap();
    let inv = c.coinvariants(3).unwrap();
    assert_eq!(inv.dimension(), 1);
    assert_eq!(inv.basis(), vec![&Element::one()]);
    assert!(inv.all_confirmed());
}

#[test]
fn s5xs5_coinvariants_are_one_w_wstar() {
    let c = s5xs5_generic(hopf()).unwrap();
    let c = c.substitute(&c.extract_constraints().unwrap().bindings()).unwrap();
    let inv = c.coinvariants(2).unwrap();
    assert_eq!(inv.dimension(), 3);
    assert!(inv.all_confirmed());
    let a = c.target();
    let w = a.parse_deformed_word("z1*z4^*").unwrap();
    let w = w.add(&a.parse_deformed_word("z2*z5^*").unwrap()).add(&a.parse_deformed_word("z3*z6^*").unwrap());
    assert!(inv.contains(&w));
    assert!(inv.contains(&a.star(&w)));
    assert!(c.is_coinvariant(&w).unwrap());
    for b in &inv.bidegrees {
        let (p, q) = b.bidegree;
        assert_eq!(b.free_dimension, c.oracle_dimension(p, q).unwrap(), "bidegree {p},{q}");
    }
}

#[test]
fn coinvariants_form_commutative_subalgebra() {
    let c = s5xs5_generic(hopf()).unwrap();
    let c = c.substitute(&c.extract_constraints().unwrap().bindings()).unwrap();
    let inv = c.coinvariants(2).unwrap();
    let r = c.check_coinvariant_subalgebra(&inv).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.items.len(), 12);
}

#[test]
fn perturbed_constraints_break_the_coaction() {
    let c = s5_generic(hopf()).unwrap();
    let cs = c.extract_constraints().unwrap();
    let r = c.check_constraint_soundness(&cs).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.items.len(), 4);
}

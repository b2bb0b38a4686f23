//! One pass/fail line per acceptance criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thetadef::algebra::{AlgebraSpec, Element, Letter};
use thetadef::bundle::{Bundle, Normalizer};
use thetadef::coaction::{s5_generic, s5xs5_generic, CoactionSpec, ConstraintSet};
use thetadef::quantumgroup::{build_su3_theta, HopfSpec};
use thetadef::{Bindings, LinearForm, PhaseExponent};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn hopf() -> HopfSpec {
    build_su3_theta("theta").unwrap()
}

fn solved(c: CoactionSpec) -> Result<CoactionSpec, String> {
    let cs = c.extract_constraints().map_err(e)?;
    c.substitute(&cs.bindings()).map_err(e)
}

fn relation_table() -> Outcome {
    let r = thetadef_cli::run(&["relations".into(), "--format=structured".into()]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).map_err(e)?;
    let rel = v["relations"].as_array().ok_or("no relations in output")?;
    let bad: Vec<String> = rel
        .iter()
        .filter(|x| x["matches"] != true)
        .map(|x| format!("derived `{}` vs printed `{}`", x["derived"].as_str().unwrap_or(""), x["golden"].as_str().unwrap_or("")))
        .collect();
    ensure(rel.len() == 36, format!("{} relations derived", rel.len()))?;
    ensure(bad.is_empty(), format!("{}/36 match; {}", 36 - bad.len(), bad.join("; ")))?;
    Ok("36/36 relations match".into())
}

fn hopf_axioms() -> Outcome {
    let r = hopf().check_all(3).map_err(e)?;
    ensure(r.passed(), r.to_string())?;
    ensure(r.items.iter().any(|i| i.name.contains("S(u_ik) u_kj")), "antipode sums not checked")?;
    Ok(format!("{} checks to degree 3", r.items.len()))
}

fn s5_criterion() -> Outcome {
    let c = s5_generic(&hopf()).map_err(e)?;
    let cs = c.extract_constraints().map_err(e)?;
    let want = ["-theta + theta13 = 0", "theta + theta12 = 0", "theta + theta23 = 0"];
    ensure(cs.lines() == want, format!("constraints {:?}", cs.lines()))?;
    let r = c.substitute(&cs.bindings()).map_err(e)?.check_homomorphism().map_err(e)?;
    ensure(r.passed() && r.items.len() == 36, r.to_string())?;
    let s = c.check_constraint_soundness(&cs).map_err(e)?;
    ensure(s.passed(), s.to_string())?;
    Ok(format!("theta12 = -theta, theta13 = theta, theta23 = -theta; 36 pairs; {} perturbations fail", s.items.len() - 1))
}

fn s5xs5_constraints() -> Outcome {
    let c = s5xs5_generic(&hopf()).map_err(e)?;
    let cs = c.extract_constraints().map_err(e)?;
    // lambda1 = tp_14, lambda2 = lambda1 - theta, lambda3 = lambda1 + theta
    let minus_lambda = ["- tp_14", "- tp_14 + theta", "- tp_14 - theta"];
    let mut forms: Vec<String> =
        ["tp_12 + theta", "tp_13 - theta", "tp_23 + theta", "tp_45 + theta", "tp_46 - theta", "tp_56 + theta"].map(String::from).to_vec();
    // theta_{j,k+3} = lambda_{(k-j) mod 3 + 1}
    for j in 1..=3i64 {
        for k in 1..=3i64 {
            forms.push(format!("tp_{}{} {}", j, k + 3, minus_lambda[(k - j).rem_euclid(3) as usize]));
        }
    }
    let parsed: Vec<LinearForm> = forms.iter().map(|f| f.parse::<LinearForm>()).collect::<Result<_, _>>().map_err(e)?;
    let want = ConstraintSet::new(parsed, &c.constraint_columns());
    ensure(cs.same_solutions(&want), format!("extracted\n{cs}\nexpected\n{want}"))?;
    Ok(format!("rank {}, free {:?}", cs.rank(), cs.free_params().iter().map(|p| p.to_string()).collect::<Vec<_>>()))
}

fn cotransitivity() -> Outcome {
    let c = solved(s5_generic(&hopf()).map_err(e)?)?;
    let inv = c.coinvariants(3).map_err(e)?;
    ensure(inv.all_confirmed(), "unconfirmed representative")?;
    ensure(inv.dimension() == 1 && inv.basis() == vec![&Element::one()], format!("dimension {}", inv.dimension()))?;
    Ok("only scalars through degree 3".into())
}

fn coinvariant_algebra() -> Outcome {
    let c = solved(s5xs5_generic(&hopf()).map_err(e)?)?;
    let inv = c.coinvariants(2).map_err(e)?;
    ensure(inv.all_confirmed(), "unconfirmed representative")?;
    ensure(inv.dimension() == 3, format!("dimension {}", inv.dimension()))?;
    let a = c.target();
    let w = thetadef::bundle::build_w(a).map_err(e)?;
    let ws = a.star(&w);
    ensure(inv.contains(&w) && inv.contains(&ws), "w or w* missing")?;
    let lhs = a.mul(&w, &ws).map_err(e)?;
    let rhs = a.mul(&ws, &w).map_err(e)?;
    ensure(a.eq_reduced(&lhs, &rhs).map_err(e)?, "w w* != w* w")?;
    Ok("span{1, w, w*}, w w* = w* w".into())
}

fn w_relations() -> Outcome {
    let b = Bundle::from_hopf(&hopf()).map_err(e)?;
    let r = b.check_w_relations().map_err(e)?;
    ensure(r.passed(), r.to_string())?;
    let lam = PhaseExponent::new("-2*lambda1".parse().map_err(e)?);
    ensure(b.lambda() == &lam, format!("lambda = {}", b.lambda().compact()))?;
    Ok(format!("{} checks, z_j w = {} w z_j", r.items.len(), lam.compact()))
}

fn projection_checks(b: &Bundle, normalizer: Normalizer) -> Result<Vec<String>, String> {
    let frames = b.fundamental_frames(normalizer).map_err(e)?;
    let mut failures = Vec::new();
    for (name, fr) in [("p10", &frames.z), ("p01", &frames.w)] {
        let g = b.check_gram(fr).map_err(e)?;
        let p = b.projection_unchecked(fr).map_err(e)?;
        let r = b.check_projection(&p).map_err(e)?;
        let ch = b.chern0(&p).map_err(e)?;
        for i in g.failures().chain(r.failures()) {
            failures.push(format!("{name} {}", i.name));
        }
        if ch != Element::from_int(2) {
            failures.push(format!("{name} ch0"));
        }
    }
    Ok(failures)
}

fn projections() -> Outcome {
    let b = Bundle::from_hopf(&hopf()).map_err(e)?;
    let corrected = projection_checks(&b, Normalizer::Corrected)?;
    ensure(corrected.is_empty(), corrected.join(", "))?;
    let literal = projection_checks(&b, Normalizer::PaperLiteral)?;
    ensure(literal.iter().any(|f| f.ends_with("p^2 = p")), "the Q^2 normalizer unexpectedly passes")?;
    Ok(format!("corrected p10, p01 pass with ch0 = 2; Q^2 variant fails {} checks", literal.len()))
}

fn haar() -> Outcome {
    let r = hopf().check_unimodularity().map_err(e)?;
    ensure(r.passed(), r.to_string())?;
    Ok(format!("{} balanced monomials", hopf().balanced_monomials().len()))
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[Letter], max: usize) -> Vec<Letter> {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}

fn zeroed(a: &AlgebraSpec) -> Result<AlgebraSpec, String> {
    let p = a.params();
    a.substitute(&Bindings::zero_all(&p)).map_err(e)
}

fn classical_limit() -> Outcome {
    let h = hopf();
    let zero = Bindings::zero_all(&[h.theta().clone()]);
    let h0 = h.substitute(&zero).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for a in [h.base(), s5xs5_generic(&h).map_err(e)?.target()] {
        let a0 = zeroed(a)?;
        let ls = a0.letters();
        for _ in 0..200 {
            let (x, y) = (a0.word(&random_word(&mut rng, &ls, 3)).map_err(e)?, a0.word(&random_word(&mut rng, &ls, 3)).map_err(e)?);
            ensure(a0.mul(&x, &y).map_err(e)? == x.classical_mul(&y), "deformed product differs at zero")?;
        }
    }
    ensure(h0.derive_relation_table().iter().all(|r| r.phase.is_generically_trivial()), "relation phase survives")?;
    let r = h0.check_all(3).map_err(e)?;
    ensure(r.passed(), r.to_string())?;
    ensure(h0.check_unimodularity().map_err(e)?.passed(), "Haar state")?;
    for c in [s5_generic(&h0).map_err(e)?, s5xs5_generic(&h0).map_err(e)?] {
        let c = c.substitute(&Bindings::zero_all(&c.params())).map_err(e)?;
        ensure(c.extract_constraints().map_err(e)?.is_empty(), "classical constraints not empty")?;
        ensure(c.check_homomorphism().map_err(e)?.passed(), "classical coaction")?;
        ensure(c.check_coaction_axioms().map_err(e)?.passed(), "classical coaction axioms")?;
    }
    let s5 = s5_generic(&h0).map_err(e)?.classical();
    ensure(s5.coinvariants(3).map_err(e)?.dimension() == 1, "classical S5 coinvariants")?;
    let s55 = s5xs5_generic(&h0).map_err(e)?.classical();
    ensure(s55.coinvariants(2).map_err(e)?.dimension() == 3, "classical S5xS5 coinvariants")?;
    let b = Bundle::classical(&h).map_err(e)?;
    let w = b.check_w_relations().map_err(e)?;
    ensure(w.passed(), w.to_string())?;
    let p = projection_checks(&b, Normalizer::Corrected)?;
    ensure(p.is_empty(), p.join(", "))?;
    Ok("products, relations, Hopf, coaction, coinvariant, w and projection checks at zero".into())
}

fn property_suites() -> Outcome {
    let h = hopf();
    let s5 = s5_generic(&h).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = s5.target();
    let mut count = 0;
    for _ in 0..200 {
        let w: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let bc: Vec<i64> = w[1].iter().zip(&w[2]).map(|(x, y)| x + y).collect();
        let lhs = a.bicharacter(&w[0], &bc).map_err(e)?;
        let rhs = a.bicharacter(&w[0], &w[1]).map_err(e)?.mul(&a.bicharacter(&w[0], &w[2]).map_err(e)?);
        ensure(lhs == rhs, "bicharacter not bilinear")?;
        ensure(a.bicharacter(&w[0], &w[1]).map_err(e)? == a.bicharacter(&w[1], &w[0]).map_err(e)?.conj(), "not antisymmetric")?;
        count += 1;
    }
    for spec in [a, h.base()] {
        let ls = spec.letters();
        for _ in 0..100 {
            let ws: Vec<Element> =
                (0..3).map(|_| spec.word(&random_word(&mut rng, &ls, 2))).collect::<Result<_, _>>().map_err(e)?;
            let l = spec.mul(&spec.mul(&ws[0], &ws[1]).map_err(e)?, &ws[2]).map_err(e)?;
            let r = spec.mul(&ws[0], &spec.mul(&ws[1], &ws[2]).map_err(e)?).map_err(e)?;
            ensure(l == r, "product not associative")?;
            let st = spec.star(&spec.mul(&ws[0], &ws[1]).map_err(e)?);
            ensure(st == spec.mul(&spec.star(&ws[1]), &spec.star(&ws[0])).map_err(e)?, "star not anti-multiplicative")?;
            let x = spec.word(&random_word(&mut rng, &ls, 6)).map_err(e)?.add(&ws[0]);
            let nf = spec.reduce(&x).map_err(e)?;
            let mut choose = |n: usize| rng.gen_range(0..n);
            ensure(spec.rewrite_system().reduce_with_choices(&x, &mut choose).map_err(e)? == nf, "reduction not confluent")?;
            count += 3;
        }
    }
    let mut bidegrees = 0;
    for (c, d) in [(solved(s5.clone())?, 3), (solved(s5xs5_generic(&h).map_err(e)?)?, 2)] {
        for b in &c.coinvariants(d).map_err(e)?.bidegrees {
            let (p, q) = b.bidegree;
            ensure(b.free_dimension == c.oracle_dimension(p, q).map_err(e)?, format!("oracle disagrees at ({p}, {q})"))?;
            bidegrees += 1;
        }
    }
    Ok(format!("{count} property cases, oracle agreement at {bidegrees} bidegrees"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 11] = [
        ("relation table", relation_table, Some(Duration::from_secs(1))),
        ("Hopf axioms", hopf_axioms, Some(Duration::from_secs(30))),
        ("S5 coaction criterion", s5_criterion, None),
        ("S5xS5 constraints", s5xs5_constraints, None),
        ("cotransitivity", cotransitivity, Some(Duration::from_secs(60))),
        ("coinvariant algebra", coinvariant_algebra, None),
        ("w relations", w_relations, None),
        ("projections", projections, Some(Duration::from_secs(120))),
        ("Haar state", haar, None),
        ("classical limit", classical_limit, None),
        ("property suites", property_suites, None),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {took:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match &outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name} ({took:.2?}): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

use thetadef_cli::{run, Run, GOLDEN_RELATIONS, SCHEMA};

fn cli(line: &str) -> Run {
    let args: Vec<String> = line.split_whitespace().map(String::from).collect();
    run(&args)
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn json(line: &str) -> serde_json::Value {
    let r = cli(&format!("{line} --format=structured"));
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn text_outputs_match_golden_files() {
    for (line, file, code) in [
        ("constraints s5", "constraints_s5.txt", 0),
        ("constraints s5s5", "constraints_s5s5.txt", 0),
        ("coinvariants s5", "coinvariants_s5.txt", 0),
        ("coinvariants s5s5", "coinvariants_s5s5.txt", 0),
        ("relations", "relations_diff.txt", 1),
        ("check projection", "check_projection.txt", 0),
        ("check w-relations", "check_w_relations.txt", 0),
    ] {
        let r = cli(line);
        assert_eq!(r.stdout, golden(file), "{line}");
        assert_eq!(r.code, code, "{line}");
    }
}

#[test]
fn relations_differ_only_in_the_swapped_line() {
    let v = json("relations");
    let rel = v["relations"].as_array().unwrap();
    assert_eq!(rel.len(), 36);
    assert_eq!(GOLDEN_RELATIONS.lines().filter(|l| !l.trim().is_empty()).count(), 36);
    let bad: Vec<_> = rel.iter().filter(|r| r["matches"] == false).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["golden"], "u12*u21 = exp(4*pi*i*theta) u21*u12");
}

#[test]
fn theorem_bindings_pass_once_theta_is_bound() {
    let partial = cli("check coaction-s5 --theta12=-t --theta13=t --theta23=-t");
    assert_eq!(partial.code, 1);
    let full = cli("check coaction-s5 --theta12=-t --theta13=t --theta23=-t --theta=t");
    assert_eq!(full.code, 0, "{}", full.stdout);
    assert!(full.stdout.contains("(Δ⊗id)δ = (id⊗δ)δ"));
}

#[test]
fn generic_coaction_names_the_witness() {
    let r = cli("check coaction-s5 --generic");
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("pair (z1, z2) phase mismatch"), "{}", r.stdout);
    assert!(cli("check coaction-s5s5").code == 0);
}

#[test]
fn paper_literal_projection_fails() {
    let v = json("check projection --variant=paper-literal");
    assert_eq!(v["passed"], false);
    let items = v["reports"][0]["items"].as_array().unwrap();
    assert!(items.iter().any(|i| i["name"].as_str().unwrap().ends_with("p^2 = p") && i["passed"] == false));
}

#[test]
fn classical_limit_has_no_constraints() {
    let r = cli("constraints s5s5 --classical");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("0 constraints"));
    assert_eq!(cli("check haar --theta=0").code, 0);
}

#[test]
fn structured_output_is_versioned_and_deterministic() {
    let a = cli("coinvariants s5s5 --format=structured");
    let b = cli("coinvariants s5s5 --format=structured");
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["coinvariants"][4]["elements"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_input_exits_with_usage_code() {
    assert_eq!(cli("coinvariants s5 --degree 9").code, 2);
    assert_eq!(cli("check nonsense").code, 2);
    assert_eq!(cli("check haar --theta=a --a=theta").code, 2);
    assert_eq!(cli("check haar --theta=1/").code, 2);
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn ternop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ternop"))
        .args(args)
        .output()
        .expect("run ternop")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const Z2_WITH_ZERO: &str = "structure z2zero
elements e g z
op mul arity 2
e g z
g e z
z z z
end
";

#[test]
fn right_modular_holds_on_rm_unit() {
    let o = ternop(&["check", &corpus("rm_unit.alg"), "--prop", "right-modular"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds"));
}

#[test]
fn right_modular_fails_on_star_unary_with_counterexample() {
    let o = ternop(&[
        "check",
        &corpus("star_unary.alg"),
        "--prop",
        "right-modular",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("counterexample: x,x,y"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn clause_check_json() {
    let o = ternop(&[
        "check",
        &corpus("star_unary.alg"),
        "--clause",
        "(x*y)*z = (z*y)*x",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], false);
    assert!(v["counterexample"].is_object());
}

#[test]
fn unknown_property_is_a_usage_error() {
    let o = ternop(&["check", &corpus("rm_unit.alg"), "--prop", "no-such-thing"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn missing_file_is_an_error() {
    let o = ternop(&["classify", "/nonexistent/file.alg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_lists_right_modular() {
    let o = ternop(&["classify", &corpus("rm_unit.alg"), "--unit", "l"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "right-modular"));
    assert!(out.lines().any(|l| l == "left-identity"));
    assert!(!out.lines().any(|l| l == "ag-star"));
}

#[test]
fn twin_natural_pair_ternaries_are_isomorphic_but_groupoids_are_not() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.alg");
    let o = ternop(&[
        "construct",
        "twin-natural-pair",
        "--order",
        "3",
        "--out",
        pair.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&pair).unwrap();
    let names: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("structure "))
        .collect();
    assert_eq!(names.len(), 2);
    let left = format!("{}#{}", pair.display(), names[0]);
    let right = format!("{}#{}", pair.display(), names[1]);

    let t = ternop(&["iso", &left, &right, "--kind", "ternary"]);
    assert_eq!(t.status.code(), Some(0));
    assert_eq!(stdout(&t).trim(), "0->0 1->1 2->2");

    let b = ternop(&["iso", &left, &right]);
    assert_eq!(b.status.code(), Some(1));
    assert_eq!(stdout(&b).trim(), "none");
}

#[test]
fn constructed_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nat.alg");
    let o = ternop(&[
        "construct",
        "natural-ternary",
        &corpus("rm_unit.alg"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let c = ternop(&["check", out.to_str().unwrap(), "--prop", "semiheap"]);
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
}

#[test]
fn permuted_ternary_of_rm_unit_is_not_a_semiheap() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pi.alg");
    let o = ternop(&[
        "construct",
        "pi-ternary",
        &corpus("rm_unit.alg"),
        "--perm",
        "(1,3,2)",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let c = ternop(&["check", out.to_str().unwrap(), "--prop", "semiheap"]);
    assert_eq!(c.status.code(), Some(1));
}

#[test]
fn inverse_and_clifford_on_group_with_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("z.alg");
    std::fs::write(&f, Z2_WITH_ZERO).unwrap();
    let f = f.to_str().unwrap();

    let inv = ternop(&["construct", "inverse", f]);
    assert_eq!(inv.status.code(), Some(0));
    let text = stdout(&inv);
    assert!(text.starts_with("# idempotents: e z\n"), "{text}");
    assert!(text.contains("op inv arity 1\ne g z\n"));

    let c = ternop(&["check", f, "--clifford"]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).starts_with("clifford: 2 components"));

    let nc = ternop(&["check", &corpus("star_unary.alg"), "--clifford"]);
    assert_eq!(nc.status.code(), Some(1));
}

#[test]
fn constrained_automorphisms_of_rm_unit() {
    let o = ternop(&[
        "automorphisms",
        &corpus("rm_unit.alg"),
        "--constraint",
        "x' * y = y' * x",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "a->a b->c c->b l->l");
}

#[test]
fn enumerate_count_and_models() {
    let o = ternop(&[
        "enumerate",
        "--order",
        "3",
        "--props",
        "right-modular,left-identity",
        "--pin",
        "l=0",
        "--count-only",
    ]);
    assert_eq!(stdout(&o).trim(), "10");
    let g = ternop(&[
        "enumerate",
        "--order",
        "4",
        "--props",
        "associative,inverse-groupoid",
        "--clause",
        "x*x = x & y*y = y => x*y = y*x",
        "--up-to-iso",
        "--count-only",
    ]);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(stdout(&g).trim(), "16");
    let m = ternop(&[
        "enumerate",
        "--order",
        "2",
        "--signature",
        "ternary",
        "--props",
        "heap",
    ]);
    let text = stdout(&m);
    assert_eq!(text.matches("structure ").count(), 1, "{text}");
}

#[test]
fn regress_passes_and_filters() {
    let o = ternop(&["regress", "--filter", "rm-unit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS rm-unit-")));

    let j = ternop(&["regress", "--filter", "rm-order4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));

    let bad = ternop(&["regress", "--filter", "nothing-matches"]);
    assert_eq!(bad.status.code(), Some(2));
}

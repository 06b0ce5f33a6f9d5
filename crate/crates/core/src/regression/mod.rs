//! A fixed list of named checks over the embedded corpus tables and small
//! exhaustive sweeps. Every expected value is recomputed from the tables.

mod sweeps;

use serde::Serialize;

pub use sweeps::{
    ag_star_permuted_ternaries, group_heap_ward_roundtrips, inverse_semigroup_roundtrips,
    natural_ternary_iso_sweep, right_modular_semiheap_bijection, ward_variety, BijectionCounts,
};

use crate::algebra::format::parse_structure;
use crate::algebra::{Elem, OpTable, Structure};
use crate::classify::{check_property, check_unit_characterizations, has_property, PropertyName};
use crate::clause::{parse_clause, Binding, Compiled};
use crate::construct::{
    dual_table, natural_ternary, pi_ternary, reconstruct, star_ternary, twin_natural_pair,
    with_ternary, Permutation3, Scheme,
};
use crate::error::{Error, Result};
use crate::inverse::{
    alpha_determined, natural_ternary_witnesses, standard_ternary, standard_ternary_witnesses,
};
use crate::iso::{automorphisms, find_isomorphism, Bijection, IsoKind};

pub const RM_ORDER4: &str = include_str!("../../corpus/rm_order4.alg");
pub const RM_UNIT: &str = include_str!("../../corpus/rm_unit.alg");
pub const STAR_UNARY: &str = include_str!("../../corpus/star_unary.alg");
pub const NONSTANDARD_GHEAP: &str = include_str!("../../corpus/nonstandard_gheap.alg");

/// An embedded corpus structure by file stem: `rm_order4`, `rm_unit`, `star_unary`, `nonstandard_gheap`.
pub fn corpus(name: &str) -> Option<Structure> {
    let text = match name {
        "rm_order4" => RM_ORDER4,
        "rm_unit" => RM_UNIT,
        "star_unary" => STAR_UNARY,
        "nonstandard_gheap" => NONSTANDARD_GHEAP,
        _ => return None,
    };
    Some(parse_structure(text).expect("corpus file parses"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub status: Status,
    pub details: String,
}

pub struct Check {
    pub id: &'static str,
    pub description: &'static str,
    run: fn() -> Result<String>,
}

/// A failed expectation inside a check.
fn fail(msg: impl Into<String>) -> Error {
    Error::Postcondition(msg.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn bind() -> Binding {
    Binding::default()
}

fn load(name: &str) -> Structure {
    corpus(name).expect("embedded corpus")
}

fn elem(s: &Structure, name: &str) -> Elem {
    s.carrier().index_of(name).expect("corpus element")
}

fn rm_order4_right_modular() -> Result<String> {
    let s = load("rm_order4");
    ensure(
        has_property(&s, PropertyName::RightModular, &bind())?,
        || "not right modular".into(),
    )?;
    Ok("right-modular holds".into())
}

/// `[[x y z] u v]` and `[x y [z u v]]` at the given element names.
fn outer_forms(s: &Structure, t: &OpTable, names: [&str; 5]) -> (String, String) {
    let [x, y, z, u, v] = names.map(|n| elem(s, n));
    let left = t.get3(t.get3(x, y, z), u, v);
    let right = t.get3(x, y, t.get3(z, u, v));
    (
        s.carrier().name(left).to_string(),
        s.carrier().name(right).to_string(),
    )
}

fn expect_witness(
    s: &Structure,
    t: &OpTable,
    names: [&str; 5],
    want: (&str, &str),
) -> Result<String> {
    let ts = with_ternary(s, t.clone());
    ensure(!has_property(&ts, PropertyName::Semiheap, &bind())?, || {
        "semiheap holds".into()
    })?;
    let got = outer_forms(s, t, names);
    ensure(got == (want.0.to_string(), want.1.to_string()), || {
        format!(
            "witness gives {} vs {}, expected {} vs {}",
            got.0, got.1, want.0, want.1
        )
    })?;
    Ok(format!(
        "semiheap fails; witness gives {} vs {}",
        got.0, got.1
    ))
}

fn rm_order4_natural_not_semiheap() -> Result<String> {
    let s = load("rm_order4");
    let t = natural_ternary(s.op("mul")?);
    expect_witness(&s, &t, ["a", "ba", "b", "ab", "a"], ("a", "ba"))
}

fn rm_unit_right_modular_left_identity() -> Result<String> {
    let s = load("rm_unit");
    ensure(
        has_property(&s, PropertyName::RightModular, &bind())?,
        || "not right modular".into(),
    )?;
    let r = check_property(&s, PropertyName::LeftIdentity, &bind())?;
    ensure(r.witness == Some(elem(&s, "l")), || {
        format!("left identity witness {:?}", r.witness)
    })?;
    ensure(!has_property(&s, PropertyName::AgStar, &bind())?, || {
        "AG* holds".into()
    })?;
    Ok("right modular, left identity l, not AG*".into())
}

fn rm_unit_pi(p: &str, names: [&str; 5], want: (&str, &str)) -> Result<String> {
    let s = load("rm_unit");
    let t = pi_ternary(&natural_ternary(s.op("mul")?), p.parse::<Permutation3>()?);
    expect_witness(&s, &t, names, want)
}

fn rm_unit_pi_132() -> Result<String> {
    rm_unit_pi("(1,3,2)", ["a", "b", "b", "l", "b"], ("b", "c"))
}

fn rm_unit_pi_213() -> Result<String> {
    rm_unit_pi("(2,1,3)", ["a", "c", "b", "a", "a"], ("a", "l"))
}

fn rm_unit_natural_heap() -> Result<String> {
    let s = load("rm_unit");
    let ts = with_ternary(&s, natural_ternary(s.op("mul")?));
    for p in [PropertyName::Heap, PropertyName::OuterLateral] {
        ensure(has_property(&ts, p, &bind())?, || format!("{p} fails"))?;
    }
    Ok("natural ternary is an outer lateral heap".into())
}

fn rm_unit_dual_not_semiheap() -> Result<String> {
    let s = load("rm_unit");
    let ts = with_ternary(&s, natural_ternary(&dual_table(s.op("mul")?)));
    let r = check_property(&ts, PropertyName::Semiheap, &bind())?;
    let a = r
        .counterexample
        .ok_or_else(|| fail("semiheap holds on the dual"))?;
    Ok(format!(
        "semiheap fails on the dual at {}",
        a.display_with(&s)
    ))
}

fn rm_unit_psi_automorphism() -> Result<String> {
    let s = load("rm_unit");
    let c = parse_clause("x' * y = y' * x")?;
    let auts = automorphisms(&s, IsoKind::Binary, &bind(), Some(&c))?;
    let (mul, l) = (s.op("mul")?, elem(&s, "l"));
    let xl = Bijection {
        forward: (0..s.order()).map(|x| mul.get2(x, l)).collect(),
    };
    ensure(auts == [xl.clone()], || {
        format!("found {} automorphisms", auts.len())
    })?;
    Ok(format!(
        "only automorphism: {}",
        xl.display_with(s.carrier(), s.carrier())
    ))
}

fn rm_unit_unit_characterizations() -> Result<String> {
    let r = check_unit_characterizations(&load("rm_unit"), &bind())?;
    match r.first_discrepancy() {
        None => Ok(format!("{} unit sets agree", r.comparisons.len())),
        Some(c) => Err(fail(format!(
            "{}: {:?} vs {:?}",
            c.description, c.brute_force, c.closed_form
        ))),
    }
}

fn twin_natural_pairs() -> Result<String> {
    for n in [2, 5] {
        let (s, t) = twin_natural_pair(n)?;
        let (ns, nt) = (natural_ternary(s.op("mul")?), natural_ternary(t.op("mul")?));
        ensure(ns == nt, || {
            format!("natural ternaries differ at order {n}")
        })?;
        ensure(
            find_isomorphism(&s, &t, IsoKind::Binary, &bind())?.is_none(),
            || format!("binary isomorphism found at order {n}"),
        )?;
    }
    Ok("orders 2 and 5: equal natural ternaries, groupoids not isomorphic".into())
}

fn star_unary_left_identity() -> Result<String> {
    let s = load("star_unary");
    for p in [PropertyName::StarUnary, PropertyName::LeftIdentity] {
        ensure(has_property(&s, p, &bind())?, || format!("{p} fails"))?;
    }
    let r = check_property(&s, PropertyName::RightModular, &bind())?;
    let a = r
        .counterexample
        .ok_or_else(|| fail("right modular holds"))?;
    Ok(format!(
        "star-unary with left identity; right-modular fails at {}",
        a.values_with(&s)
    ))
}

fn nonstandard_gheap() -> Result<String> {
    let s = load("nonstandard_gheap");
    ensure(
        has_property(&s, PropertyName::GeneralisedHeap, &bind())?,
        || "not a generalised heap".into(),
    )?;
    let found = standard_ternary_witnesses(s.op("t")?);
    ensure(found.is_empty(), || {
        format!("{} (prime, hat) pairs pass", found.len())
    })?;
    Ok(
        "generalised heap; no (prime, hat) pair among 4 involutions x 10 idempotent maps works"
            .into(),
    )
}

fn projection_not_natural() -> Result<String> {
    let t = OpTable::ternary(3, |x, _, _| x);
    let found = natural_ternary_witnesses(&t);
    ensure(found.is_empty(), || {
        format!("{} (prime, hat) pairs pass", found.len())
    })?;
    Ok("no (prime, hat) pair recovers an inverse semigroup".into())
}

fn bijection_orders_2_3() -> Result<String> {
    let counts = (2..=3)
        .map(right_modular_semiheap_bijection)
        .collect::<Result<Vec<_>>>()?;
    let text: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    Ok(text.join("; "))
}

fn ag_star_orders_to_3() -> Result<String> {
    let k = ag_star_permuted_ternaries(3)?;
    Ok(format!(
        "{k} AG* groupoids of order <= 3, all six permuted ternaries pass"
    ))
}

fn web_roundtrips() -> Result<String> {
    let (g, h) = group_heap_ward_roundtrips(4, 3)?;
    Ok(format!("{g} groups and {h} heaps round-trip"))
}

fn ward_variety_to_3() -> Result<String> {
    let counts = (2..=3).map(ward_variety).collect::<Result<Vec<_>>>()?;
    Ok(format!("model counts by order: {counts:?}"))
}

fn inverse_roundtrips_to_3() -> Result<String> {
    let k = inverse_semigroup_roundtrips(3)?;
    Ok(format!("{k} inverse semigroups of order <= 3 round-trip"))
}

fn natural_iso_order_2() -> Result<String> {
    let k = natural_ternary_iso_sweep(2)?;
    Ok(format!("{k} pairs agree"))
}

fn alpha_z3() -> Result<String> {
    let z3 = OpTable::binary(3, |x, y| (x + y) % 3);
    let neg = OpTable::unary(3, |x| (3 - x) % 3);
    let sa = alpha_determined(&z3, &neg)?;
    let s = Structure::from_binary("z3_neg", sa.clone());
    ensure(
        has_property(&s, PropertyName::RightModular, &bind())?,
        || "not right modular".into(),
    )?;
    let r = check_property(&s, PropertyName::LeftIdentity, &bind())?;
    ensure(r.witness == Some(0), || {
        format!("left identity {:?}", r.witness)
    })?;
    let t = standard_ternary(&sa)?;
    let formula = OpTable::ternary(3, |a, b, c| z3.get2(z3.get2(a, neg.get1(b)), c));
    ensure(t == formula, || {
        "standard ternary differs from a*b⁻¹*c".into()
    })?;
    let ts = with_ternary(&s, t);
    ensure(
        has_property(&ts, PropertyName::GeneralisedHeap, &bind())?,
        || "not a generalised heap".into(),
    )?;
    Ok("x.y = y-x: right modular, left identity 0, standard ternary a-b+c".into())
}

fn reconstruction_schemes() -> Result<String> {
    let b = bind().with_unit("l");
    let p39 = load("rm_unit");
    let mul = p39.op("mul")?.clone();
    let l = elem(&p39, "l");
    let xl = OpTable::unary(4, |x| mul.get2(x, l));
    let with_hat = |s: &Structure, t: OpTable, hat: OpTable| -> Result<Structure> {
        let mut out = with_ternary(s, t);
        out.insert_op("hat", hat)?;
        Ok(out)
    };
    let cases = [
        (
            Scheme::RightModularStar,
            with_hat(&p39, star_ternary(&mul, &xl)?, xl.clone())?,
            &mul,
        ),
        (
            Scheme::RightModularDual,
            with_ternary(&p39, natural_ternary(&dual_table(&mul))),
            &mul,
        ),
    ];
    for (scheme, t, want) in &cases {
        let got = reconstruct(t, *scheme, &b)?;
        ensure(got.op("mul")? == *want, || {
            format!("{scheme} does not recover rm_unit")
        })?;
    }
    let star_unary = load("star_unary");
    let (m2, star) = (
        star_unary.op("mul")?.clone(),
        star_unary.op("star")?.clone(),
    );
    let cases = [
        (
            Scheme::StarUnaryStar,
            with_hat(&star_unary, star_ternary(&m2, &star)?, star.clone())?,
        ),
        (
            Scheme::StarUnaryNatural,
            with_hat(&star_unary, natural_ternary(&m2), star.clone())?,
        ),
    ];
    for (scheme, t) in &cases {
        let got = reconstruct(t, *scheme, &b)?;
        ensure(*got.op("mul")? == m2, || {
            format!("{scheme} does not recover star_unary")
        })?;
    }
    Ok("all four schemes recover their source groupoid".into())
}

fn clause_counterexamples_reproduce() -> Result<String> {
    let mut k = 0;
    for name in ["rm_order4", "rm_unit", "star_unary"] {
        let s = load(name);
        for p in PropertyName::ALL {
            let Ok(r) = check_property(&s, p, &bind()) else {
                continue;
            };
            let crate::classify::Definition::Clauses(texts) = p.definition() else {
                continue;
            };
            if let Some(a) = r.counterexample {
                let mut env = [0; 7];
                for &(v, e) in &a.0 {
                    env[v.index()] = e;
                }
                let violated = texts.iter().any(|t| {
                    let c = parse_clause(t).expect("catalog clause");
                    let compiled = Compiled::new(&s, &c, &bind(), &[]).expect("compiles");
                    !compiled.holds_at(&env)
                });
                ensure(violated, || format!("{p} on {name}: {a} does not violate"))?;
                k += 1;
            }
        }
    }
    Ok(format!("{k} counterexamples re-evaluated"))
}

static CHECKS: &[Check] = &[
    Check { id: "ag-star-permuted-ternaries", description: "every permuted natural ternary of an AG* groupoid (order <= 3) is a semiheap with the generalised heap identities", run: ag_star_orders_to_3 },
    Check { id: "alpha-determined-z3", description: "Z3 with negation gives a right modular groupoid whose standard ternary is a*b⁻¹*c", run: alpha_z3 },
    Check { id: "counterexamples-reproduce", description: "every reported clause counterexample on the corpus violates its clause", run: clause_counterexamples_reproduce },
    Check { id: "group-heap-ward-roundtrips", description: "maps between groups, heaps and Ward quasigroups invert each other", run: web_roundtrips },
    Check { id: "inverse-semigroup-roundtrips", description: "inverse semigroups are recovered from their standard ternary operations", run: inverse_roundtrips_to_3 },
    Check { id: "natural-ternary-iso", description: "right modular groupoids with left identity are isomorphic iff their natural ternaries are (order 2)", run: natural_iso_order_2 },
    Check { id: "nonstandard-gheap", description: "a generalised heap that is not the standard ternary of any inverse semigroup", run: nonstandard_gheap },
    Check { id: "projection-not-natural", description: "the first projection is not the natural ternary of an inverse semigroup", run: projection_not_natural },
    Check { id: "reconstruction-schemes", description: "groupoids are recovered from their ternary operations", run: reconstruction_schemes },
    Check { id: "right-modular-semiheap-bijection", description: "right modular groupoids with left identity correspond to laterally commutative bi-unital semiheaps", run: bijection_orders_2_3 },
    Check { id: "rm-order4-natural-not-semiheap", description: "the natural ternary of the rm_order4 table is not a semiheap", run: rm_order4_natural_not_semiheap },
    Check { id: "rm-order4-right-modular", description: "the rm_order4 table is right modular", run: rm_order4_right_modular },
    Check { id: "rm-unit-dual-not-semiheap", description: "the natural ternary of the dual of rm_unit is not a semiheap", run: rm_unit_dual_not_semiheap },
    Check { id: "rm-unit-natural-heap", description: "the natural ternary of rm_unit is an outer lateral heap", run: rm_unit_natural_heap },
    Check { id: "rm-unit-pi-132", description: "the (1,3,2) permuted ternary of rm_unit is not a semiheap", run: rm_unit_pi_132 },
    Check { id: "rm-unit-pi-213", description: "the (2,1,3) permuted ternary of rm_unit is not a semiheap", run: rm_unit_pi_213 },
    Check { id: "rm-unit-psi-automorphism", description: "the only automorphism with Ψx*y = Ψy*x is x -> xl", run: rm_unit_psi_automorphism },
    Check { id: "rm-unit-right-modular", description: "rm_unit is right modular with left identity l and not AG*", run: rm_unit_right_modular_left_identity },
    Check { id: "rm-unit-unit-characterizations", description: "lateral and outer lateral unit sets match their closed forms", run: rm_unit_unit_characterizations },
    Check { id: "star-unary-left-identity", description: "a star-unary groupoid with left identity that is not right modular", run: star_unary_left_identity },
    Check { id: "twin-natural-pairs", description: "non-isomorphic groupoids with equal natural ternary operations", run: twin_natural_pairs },
    Check { id: "ward-variety", description: "three identities define exactly the Ward quasigroups", run: ward_variety_to_3 },
];

/// All checks, sorted by id.
pub fn checks() -> &'static [Check] {
    CHECKS
}

/// Run every check whose id starts with `filter` (all when `None`), in id order.
pub fn run_suite(filter: Option<&str>) -> Result<Vec<CheckReport>> {
    let selected: Vec<&Check> = CHECKS
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
        .collect();
    if selected.is_empty() {
        return Err(Error::UnknownFilter(filter.unwrap_or_default().to_string()));
    }
    Ok(selected
        .into_iter()
        .map(|c| match (c.run)() {
            Ok(details) => CheckReport {
                id: c.id,
                status: Status::Pass,
                details,
            },
            Err(e) => CheckReport {
                id: c.id,
                status: Status::Fail,
                details: e.to_string(),
            },
        })
        .collect())
}

/// One `PASS id: details` / `FAIL id: details` line per check.
pub fn render_text(reports: &[CheckReport]) -> String {
    reports
        .iter()
        .map(|r| {
            let tag = if r.status == Status::Pass {
                "PASS"
            } else {
                "FAIL"
            };
            format!("{tag} {}: {}\n", r.id, r.details)
        })
        .collect()
}

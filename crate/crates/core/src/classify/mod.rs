//! The property catalog: named classes and element roles, decided by clauses
//! or by a few built-in quantifier checks.

mod catalog;
mod units;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

pub use catalog::{Definition, PropertyName, Role, GENERALISED_HEAP_AXIOMS};
pub use units::{check_unit_characterizations, UnitReport, UnitSetComparison};

use crate::algebra::{Elem, OpTable, Structure};
use crate::clause::{parse_clause, Assignment, Binding, Clause, Compiled, Var, Verdict};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: PropertyName,
    pub verdict: Verdict,
    /// Smallest element playing the role, for role properties that hold.
    pub witness: Option<Elem>,
    pub counterexample: Option<Assignment>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    fn pass(property: PropertyName, witness: Option<Elem>) -> Self {
        PropertyReport {
            property,
            verdict: Verdict::Holds,
            witness,
            counterexample: None,
        }
    }

    fn fail(property: PropertyName, counterexample: Option<Assignment>) -> Self {
        PropertyReport {
            property,
            verdict: Verdict::Fails,
            witness: None,
            counterexample,
        }
    }
}

thread_local! {
    static PARSED: RefCell<HashMap<&'static str, Rc<Clause>>> = RefCell::new(HashMap::new());
}

/// Parse a catalog clause once per thread.
pub(crate) fn catalog_clause(text: &'static str) -> Rc<Clause> {
    PARSED.with(|cache| {
        cache
            .borrow_mut()
            .entry(text)
            .or_insert_with(|| Rc::new(parse_clause(text).expect("catalog clause parses")))
            .clone()
    })
}

/// First failure among `texts`, with `l` bound to `unit` when given.
pub(crate) fn first_failure(
    s: &Structure,
    texts: &[&'static str],
    binding: &Binding,
    unit: Option<Elem>,
) -> Result<Option<Assignment>> {
    let extra: Vec<(&str, Elem)> = unit.map(|l| ("l", l)).into_iter().collect();
    for text in texts {
        let clause = catalog_clause(text);
        if let Some(a) = Compiled::new(s, &clause, binding, &extra)?.first_failure() {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

fn required_table<'a>(
    s: &'a Structure,
    p: PropertyName,
    binding: &Binding,
) -> Result<Vec<&'a OpTable>> {
    p.ops()
        .iter()
        .map(|&sym| {
            let name = binding.op_name(sym);
            match s.ops().get(name) {
                Some(t) if t.arity() == sym.arity() => Ok(t),
                Some(t) => Err(Error::ArityMismatch {
                    op: name.to_string(),
                    expected: sym.arity(),
                    got: t.arity(),
                }),
                None => Err(Error::MissingBinding(format!(
                    "`{p}` needs an arity-{} operation named `{name}`",
                    sym.arity()
                ))),
            }
        })
        .collect()
}

fn assign(pairs: &[(char, Elem)]) -> Assignment {
    Assignment(
        pairs
            .iter()
            .map(|&(c, e)| (Var::from_char(c).unwrap(), e))
            .collect(),
    )
}

/// Elements `a` with no unique `b` such that `(a*b)*a = a` and `(b*a)*b = b`,
/// reported as `(a, number of such b)` for the first offender.
fn inverse_scan(mul: &OpTable) -> std::result::Result<Vec<Elem>, (Elem, usize)> {
    let n = mul.order();
    (0..n)
        .map(|a| {
            let mut found = None;
            let mut count = 0;
            for b in 0..n {
                let ab = mul.get2(a, b);
                if mul.get2(ab, a) == a && mul.get2(mul.get2(b, a), b) == b {
                    count += 1;
                    if count > 1 {
                        return Err((a, count));
                    }
                    found = Some(b);
                }
            }
            found.ok_or((a, 0))
        })
        .collect()
}

/// The unique inverse of every element, or [`Error::NotInverse`].
pub fn unique_inverses(mul: &OpTable) -> Result<Vec<Elem>> {
    inverse_scan(mul).map_err(|(element, count)| Error::NotInverse { element, count })
}

fn builtin(p: PropertyName, mul: &OpTable) -> PropertyReport {
    let n = mul.order();
    let failure = match p {
        PropertyName::GloballyIdempotent => {
            let mut hit = vec![false; n];
            mul.entries().iter().for_each(|&e| hit[e] = true);
            hit.iter().position(|&h| !h).map(|x| assign(&[('x', x)]))
        }
        PropertyName::WeaklyReductive => (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| {
                (0..n).all(|z| mul.get2(x, z) == mul.get2(y, z) && mul.get2(z, x) == mul.get2(z, y))
            })
            .map(|(x, y)| assign(&[('x', x), ('y', y)])),
        PropertyName::RightSolvable => (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| (0..n).all(|x| mul.get2(b, x) != a))
            .map(|(a, b)| assign(&[('x', a), ('y', b)])),
        PropertyName::InverseGroupoid => inverse_scan(mul).err().map(|(a, _)| assign(&[('x', a)])),
        _ => unreachable!("{p} is not a built-in check"),
    };
    match failure {
        None => PropertyReport::pass(p, None),
        Some(a) => PropertyReport::fail(p, Some(a)),
    }
}

/// Whether `l` plays `role`; `None` means it does, otherwise the first violation.
pub fn role_failure(
    s: &Structure,
    role: Role,
    binding: &Binding,
    l: Elem,
) -> Result<Option<Assignment>> {
    first_failure(s, role.clause_texts(), binding, Some(l))
}

/// Every element playing `role`, in index order.
pub fn find_elements(s: &Structure, role: Role, binding: &Binding) -> Result<Vec<Elem>> {
    let mut out = Vec::new();
    for l in 0..s.order() {
        if role_failure(s, role, binding, l)?.is_none() {
            out.push(l);
        }
    }
    Ok(out)
}

/// Decide one catalog property. Role properties test the bound unit if the
/// binding names one, and otherwise report the smallest witness.
pub fn check_property(s: &Structure, p: PropertyName, binding: &Binding) -> Result<PropertyReport> {
    let tables = required_table(s, p, binding)?;
    match p.definition() {
        Definition::Clauses(texts) => Ok(match first_failure(s, texts, binding, None)? {
            None => PropertyReport::pass(p, None),
            Some(a) => PropertyReport::fail(p, Some(a)),
        }),
        Definition::Role(role) => match binding.unit_elem(s)? {
            Some(l) => Ok(match role_failure(s, role, binding, l)? {
                None => PropertyReport::pass(p, Some(l)),
                Some(a) => PropertyReport::fail(p, Some(a)),
            }),
            None => {
                for l in 0..s.order() {
                    if role_failure(s, role, binding, l)?.is_none() {
                        return Ok(PropertyReport::pass(p, Some(l)));
                    }
                }
                Ok(PropertyReport::fail(p, None))
            }
        },
        Definition::Builtin => Ok(builtin(p, tables[0])),
    }
}

/// Shorthand for `check_property(..)?.holds()`.
pub fn has_property(s: &Structure, p: PropertyName, binding: &Binding) -> Result<bool> {
    Ok(check_property(s, p, binding)?.holds())
}

/// All catalog properties that hold. Properties whose operations are absent
/// from `s` are skipped rather than reported as failures.
pub fn classify(s: &Structure, binding: &Binding) -> Result<BTreeSet<PropertyName>> {
    let mut out = BTreeSet::new();
    for p in PropertyName::ALL {
        match check_property(s, p, binding) {
            Ok(r) if r.holds() => {
                out.insert(p);
            }
            Ok(_) | Err(Error::MissingBinding(_)) | Err(Error::ArityMismatch { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::parse_structure;
    use crate::algebra::{Carrier, OpTable};
    use crate::clause::check_clause;
    use crate::construct::{natural_ternary, with_ternary};

    const RM_UNIT: &str = "\
structure rm_unit
elements a b c l
op mul arity 2
l c b a
b l a c
c a l b
a b c l
const l = l
end
";

    fn table(n: usize, f: impl Fn(usize, usize) -> usize) -> Structure {
        Structure::from_binary("s", OpTable::binary(n, f))
    }

    fn bind() -> Binding {
        Binding::default()
    }

    #[test]
    fn rm_unit_is_right_modular_with_left_identity() {
        let s = parse_structure(RM_UNIT).unwrap();
        assert!(has_property(&s, PropertyName::RightModular, &bind()).unwrap());
        let r = check_property(&s, PropertyName::LeftIdentity, &bind()).unwrap();
        assert_eq!(r.witness, Some(3));
        assert!(!has_property(&s, PropertyName::RightIdentity, &bind()).unwrap());
        assert!(!has_property(&s, PropertyName::AgStar, &bind()).unwrap());
    }

    #[test]
    fn z3_subtraction() {
        let s = table(3, |x, y| (x + 3 - y) % 3);
        let props = classify(&s, &bind()).unwrap();
        assert!(props.contains(&PropertyName::WardQuasigroup));
        assert!(props.contains(&PropertyName::RightSolvable));
        assert!(!props.contains(&PropertyName::Commutative));
        // (x-y)-z and (z-y)-x differ whenever x != z
        assert!(!props.contains(&PropertyName::RightModular));
        let r = check_property(&s, PropertyName::RightModular, &bind()).unwrap();
        assert_eq!(r.counterexample.unwrap().to_string(), "x=0, y=0, z=1");
    }

    #[test]
    fn left_zero_semigroup() {
        let s = table(2, |x, _| x);
        let props = classify(&s, &bind()).unwrap();
        for p in [
            PropertyName::Associative,
            PropertyName::Idempotent,
            PropertyName::GloballyIdempotent,
            PropertyName::RightIdentity,
            // xz = yz for all z forces x = y, since z = x gives x = y
            PropertyName::WeaklyReductive,
        ] {
            assert!(props.contains(&p), "{p}");
        }
        assert!(!props.contains(&PropertyName::LeftIdentity));
        assert!(!props.contains(&PropertyName::LeftCancellative));
    }

    #[test]
    fn weakly_reductive_failure_names_the_pair() {
        // zero semigroup: every product is 0
        let s = table(3, |_, _| 0);
        let r = check_property(&s, PropertyName::WeaklyReductive, &bind()).unwrap();
        assert_eq!(r.counterexample.unwrap().to_string(), "x=0, y=1");
        let r = check_property(&s, PropertyName::GloballyIdempotent, &bind()).unwrap();
        assert_eq!(r.counterexample.unwrap().to_string(), "x=1");
    }

    #[test]
    fn inverse_groupoid_counts() {
        let s = table(3, |x, y| (x + y) % 3);
        assert!(has_property(&s, PropertyName::InverseGroupoid, &bind()).unwrap());
        assert_eq!(
            unique_inverses(s.op("mul").unwrap()).unwrap(),
            vec![0, 2, 1]
        );
        // left-zero: every b satisfies (ab)a = a and b(ab) = b
        let lz = table(2, |x, _| x);
        assert_eq!(
            unique_inverses(lz.op("mul").unwrap()),
            Err(Error::NotInverse {
                element: 0,
                count: 2
            })
        );
    }

    #[test]
    fn star_unary_star_unary_not_right_modular() {
        let s = parse_structure(
            "structure star_unary\nelements x y l\nop mul arity 2\ny x x\nx x y\nx y l\nop star arity 1\nx y l\nend\n",
        )
        .unwrap();
        let props = classify(&s, &bind()).unwrap();
        assert!(props.contains(&PropertyName::StarUnary));
        assert!(props.contains(&PropertyName::LeftIdentity));
        assert!(!props.contains(&PropertyName::RightModular));
    }

    #[test]
    fn order_one_has_everything() {
        let s = Structure::new("one", Carrier::numbered(1))
            .with_op("mul", OpTable::binary(1, |_, _| 0))
            .unwrap()
            .with_op("t", OpTable::ternary(1, |_, _, _| 0))
            .unwrap()
            .with_op("star", OpTable::identity_map(1))
            .unwrap()
            .with_op("hat", OpTable::identity_map(1))
            .unwrap();
        assert_eq!(
            classify(&s, &bind()).unwrap().len(),
            PropertyName::ALL.len()
        );
    }

    #[test]
    fn missing_ops_are_reported_or_skipped() {
        let s = table(2, |x, _| x);
        assert!(matches!(
            check_property(&s, PropertyName::Semiheap, &bind()),
            Err(Error::MissingBinding(_))
        ));
        assert!(!classify(&s, &bind())
            .unwrap()
            .contains(&PropertyName::Semiheap));
    }

    #[test]
    fn roles_on_the_natural_ternary_of_rm_unit() {
        let s = parse_structure(RM_UNIT).unwrap();
        let t = with_ternary(&s, natural_ternary(s.op("mul").unwrap()));
        let b = bind();
        // x*x = l for every x, so every element is bi-unital
        assert_eq!(
            find_elements(&t, Role::BiUnital, &b).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert!(has_property(&t, PropertyName::Heap, &b).unwrap());
        // [l x l] = (l x) l = x l, and b l = c
        assert_eq!(
            find_elements(&t, Role::LateralUnit, &b).unwrap(),
            Vec::<Elem>::new()
        );
        assert_eq!(
            find_elements(&t, Role::OuterLateralUnit, &b).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert!(has_property(&t, PropertyName::OuterLateral, &b).unwrap());
        assert!(has_property(&t, PropertyName::Semiheap, &b).unwrap());
        assert!(has_property(&t, PropertyName::LaterallyCommutative, &b).unwrap());
        let r = check_property(&t, PropertyName::LateralUnit, &b.clone().with_unit("a")).unwrap();
        assert!(!r.holds());
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn heap_of_order_two() {
        let s = Structure::new("h", Carrier::numbered(2))
            .with_op("t", OpTable::ternary(2, |x, y, z| (x + y + z) % 2))
            .unwrap();
        assert_eq!(
            find_elements(&s, Role::BiUnital, &bind()).unwrap(),
            vec![0, 1]
        );
        assert!(has_property(&s, PropertyName::Heap, &bind()).unwrap());
        assert!(has_property(&s, PropertyName::GeneralisedHeap, &bind()).unwrap());
    }

    #[test]
    fn catalog_agrees_with_clause_checker() {
        let structures = [
            table(3, |x, y| (x + 3 - y) % 3),
            table(3, |x, y| (2 * x + y) % 3),
            table(2, |x, _| x),
            parse_structure(RM_UNIT).unwrap(),
        ];
        for s in &structures {
            for p in PropertyName::ALL {
                if let Definition::Clauses(texts) = p.definition() {
                    if p.ops() != [crate::clause::OpSym::Mul] {
                        continue;
                    }
                    let by_clauses = texts.iter().all(|t| {
                        check_clause(s, &parse_clause(t).unwrap(), &bind())
                            .unwrap()
                            .holds()
                    });
                    assert_eq!(has_property(s, p, &bind()).unwrap(), by_clauses, "{p}");
                }
            }
        }
    }
}

//! Inverse semigroups, their standard and natural ternary operations, and
//! groupoids determined by automorphisms of semilattices of groups.

mod clifford;

pub use clifford::{
    admissible_automorphisms, alpha_determined, clifford_decompose, CliffordDecomposition,
    Component,
};

use crate::algebra::{Carrier, Elem, OpTable, Structure};
use crate::classify::{check_property, first_failure, unique_inverses, PropertyName};
use crate::clause::Binding;
use crate::error::{Error, Result};

/// Inversion and idempotents of an inverse groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseCert {
    pub inv: OpTable,
    pub idempotents: Vec<Elem>,
}

/// Unique inverses of every element of `mul`, or [`Error::NotInverse`] for
/// the first element with none or several.
pub fn inverse_cert(mul: &OpTable) -> Result<InverseCert> {
    let inv = unique_inverses(mul)?;
    let n = mul.order();
    let idempotents = (0..n).filter(|&x| mul.get2(x, x) == x).collect();
    Ok(InverseCert {
        inv: OpTable::unary(n, |x| inv[x]),
        idempotents,
    })
}

pub(crate) fn first_nonassociative(mul: &OpTable) -> Option<(Elem, Elem, Elem)> {
    let n = mul.order();
    let m = |a, b| mul.get2(a, b);
    (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .find(|&(a, b, c)| m(m(a, b), c) != m(a, m(b, c)))
}

/// Associative, unique inverses, and commuting idempotents.
pub fn is_inverse_semigroup(mul: &OpTable) -> bool {
    if first_nonassociative(mul).is_some() {
        return false;
    }
    match inverse_cert(mul) {
        Ok(cert) => cert.idempotents.iter().all(|&e| {
            cert.idempotents
                .iter()
                .all(|&f| mul.get2(e, f) == mul.get2(f, e))
        }),
        Err(_) => false,
    }
}

/// `{abc} = (a*b⁻¹)*c`. The groupoid need not be associative, only an
/// inverse groupoid.
pub fn standard_ternary(mul: &OpTable) -> Result<OpTable> {
    let cert = inverse_cert(mul)?;
    Ok(OpTable::ternary(mul.order(), |a, b, c| {
        mul.get2(mul.get2(a, cert.inv.get1(b)), c)
    }))
}

/// The triple `(standard ternary, inversion, x ↦ x⁻¹x)` of an inverse semigroup.
pub fn inverse_semigroup_triple(mul: &OpTable) -> Result<(OpTable, OpTable, OpTable)> {
    if let Some((a, b, c)) = first_nonassociative(mul) {
        return Err(Error::Precondition(format!(
            "not associative at ({a},{b},{c})"
        )));
    }
    let cert = inverse_cert(mul)?;
    let t = standard_ternary(mul)?;
    let hat = OpTable::unary(mul.order(), |x| mul.get2(cert.inv.get1(x), x));
    Ok((t, cert.inv, hat))
}

fn check_unary(u: &OpTable, n: usize, what: &str) -> Result<()> {
    if u.arity() != 1 || u.order() != n {
        return Err(Error::InvalidTable(format!(
            "{what} must be a unary table of order {n}"
        )));
    }
    Ok(())
}

fn ternary_with_maps(t: &OpTable, prime: &OpTable, hat: &OpTable) -> Result<Structure> {
    let n = t.order();
    if t.arity() != 3 {
        return Err(Error::InvalidTable("expected a ternary table".into()));
    }
    check_unary(prime, n, "prime")?;
    check_unary(hat, n, "hat")?;
    Structure::new("t", Carrier::numbered(n))
        .with_op("t", t.clone())?
        .with_op("star", prime.clone())?
        .with_op("hat", hat.clone())
}

const INVOLUTIVE: &str = "x'' = x";
const HAT_IDEMPOTENT: &str = "x^^ = x^";

/// Identities relating a generalised heap to an inverse semigroup.
pub const STANDARD_IDENTITIES: [&str; 5] = [
    INVOLUTIVE,
    HAT_IDEMPOTENT,
    "[x x^ y] = [x y' y^]",
    "[x^ x^ x'] = x'",
    "[x' x' x^] = x^",
];

/// Identities relating an associative ternary operation to an inverse semigroup.
pub const NATURAL_IDENTITIES: [&str; 10] = [
    INVOLUTIVE,
    HAT_IDEMPOTENT,
    "[x x' x] = x",
    "[x x^ x^] = x",
    "[x x^ y] = [x y y^]",
    "[x^ x^ x'] = x'",
    "[x' x x^] = x^",
    "[x^ x' x] = x^",
    "[[x x^ x'] [y' y y^] [y' y y^]^] = [[y' y y^] [x x^ x'] [x x^ x']^]",
    "[x y z] = [[x x^ y] z z^]",
];

fn first_failed_identity(s: &Structure, texts: &'static [&'static str]) -> Result<Option<String>> {
    for text in texts {
        if let Some(a) = first_failure(s, &[text], &Binding::default(), None)? {
            return Ok(Some(format!("`{text}` fails at {a}")));
        }
    }
    Ok(None)
}

fn product_from_hat(t: &OpTable, hat: &OpTable) -> OpTable {
    OpTable::binary(t.order(), |x, y| t.get3(x, hat.get1(x), y))
}

/// Recover the inverse semigroup `x*y = [x x^ y]` whose standard ternary
/// operation is the generalised heap `t`, with `prime` as inversion.
pub fn gh_to_inverse_semigroup(t: &OpTable, prime: &OpTable, hat: &OpTable) -> Result<OpTable> {
    let s = ternary_with_maps(t, prime, hat)?;
    let gh = check_property(&s, PropertyName::GeneralisedHeap, &Binding::default())?;
    if let Some(a) = gh.counterexample {
        return Err(Error::Precondition(format!(
            "not a generalised heap at {a}"
        )));
    }
    if let Some(msg) = first_failed_identity(&s, &STANDARD_IDENTITIES)? {
        return Err(Error::Precondition(msg));
    }
    let mul = product_from_hat(t, hat);
    let inv_ok = is_inverse_semigroup(&mul) && inverse_cert(&mul)?.inv == *prime;
    if !inv_ok || standard_ternary(&mul)? != *t {
        return Err(Error::Postcondition(
            "recovered groupoid is not an inverse semigroup with standard ternary t".into(),
        ));
    }
    Ok(mul)
}

/// Recover the inverse semigroup `x*y = [x x^ y]` whose natural ternary
/// operation is `t`.
pub fn natural_ternary_inverse_check(
    t: &OpTable,
    prime: &OpTable,
    hat: &OpTable,
) -> Result<OpTable> {
    let s = ternary_with_maps(t, prime, hat)?;
    let assoc = check_property(&s, PropertyName::TernaryAssociative, &Binding::default())?;
    if let Some(a) = assoc.counterexample {
        return Err(Error::Precondition(format!(
            "not ternary associative at {a}"
        )));
    }
    if let Some(msg) = first_failed_identity(&s, &NATURAL_IDENTITIES)? {
        return Err(Error::Precondition(msg));
    }
    let mul = product_from_hat(t, hat);
    if !is_inverse_semigroup(&mul) || crate::construct::natural_ternary(&mul) != *t {
        return Err(Error::Postcondition(
            "recovered groupoid is not an inverse semigroup with natural ternary t".into(),
        ));
    }
    Ok(mul)
}

/// All involutive unary maps on `n` elements, in lexicographic table order.
pub fn involutions(n: usize) -> Vec<OpTable> {
    all_unary(n)
        .filter(|u| (0..n).all(|x| u.get1(u.get1(x)) == x))
        .collect()
}

/// All idempotent unary maps on `n` elements, in lexicographic table order.
pub fn idempotent_maps(n: usize) -> Vec<OpTable> {
    all_unary(n)
        .filter(|u| (0..n).all(|x| u.get1(u.get1(x)) == u.get1(x)))
        .collect()
}

fn all_unary(n: usize) -> impl Iterator<Item = OpTable> {
    let total = (n as u32).checked_pow(n as u32).unwrap_or(u32::MAX) as usize;
    (0..total).map(move |mut code| {
        let mut entries = vec![0; n];
        for slot in entries.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        OpTable::new(1, n, entries).expect("unary entries in range")
    })
}

/// Every `(prime, hat)` pair, with prime involutive and hat idempotent, for
/// which `t` passes the generalised-heap hypotheses and recovers an inverse
/// semigroup.
pub fn standard_ternary_witnesses(t: &OpTable) -> Vec<(OpTable, OpTable)> {
    let n = t.order();
    let hats = idempotent_maps(n);
    let mut out = Vec::new();
    for prime in involutions(n) {
        for hat in &hats {
            if gh_to_inverse_semigroup(t, &prime, hat).is_ok() {
                out.push((prime.clone(), hat.clone()));
            }
        }
    }
    out
}

/// Every `(prime, hat)` pair for which `t` is recovered as the natural
/// ternary operation of an inverse semigroup.
pub fn natural_ternary_witnesses(t: &OpTable) -> Vec<(OpTable, OpTable)> {
    let n = t.order();
    let hats = idempotent_maps(n);
    let mut out = Vec::new();
    for prime in involutions(n) {
        for hat in &hats {
            if natural_ternary_inverse_check(t, &prime, hat).is_ok() {
                out.push((prime.clone(), hat.clone()));
            }
        }
    }
    out
}

/// The generalised heap on `{0, a, b}` with `[aaa] = [abb] = a`,
/// `[bbb] = [baa] = b` and every other product `0`.
pub fn schein_table() -> OpTable {
    OpTable::ternary(3, |x, y, z| match (x, y, z) {
        (1, 1, 1) | (1, 2, 2) => 1,
        (2, 2, 2) | (2, 1, 1) => 2,
        _ => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::natural_ternary;

    fn zn(n: usize) -> OpTable {
        OpTable::binary(n, |x, y| (x + y) % n)
    }

    fn meet2() -> OpTable {
        OpTable::binary(2, |x, y| x.min(y))
    }

    #[test]
    fn certificates() {
        let c = inverse_cert(&zn(3)).unwrap();
        assert_eq!(c.inv.entries(), &[0, 2, 1]);
        assert_eq!(c.idempotents, vec![0]);
        let c = inverse_cert(&meet2()).unwrap();
        assert_eq!(c.inv, OpTable::identity_map(2));
        assert_eq!(c.idempotents, vec![0, 1]);
        assert_eq!(
            inverse_cert(&OpTable::binary(2, |x, _| x)),
            Err(Error::NotInverse {
                element: 0,
                count: 2
            })
        );
    }

    #[test]
    fn standard_ternaries() {
        assert_eq!(
            standard_ternary(&zn(2)).unwrap(),
            OpTable::ternary(2, |a, b, c| (a + b + c) % 2)
        );
        assert_eq!(
            standard_ternary(&meet2()).unwrap(),
            OpTable::ternary(2, |a, b, c| a.min(b).min(c))
        );
    }

    #[test]
    fn z2_from_its_standard_ternary() {
        let t = standard_ternary(&zn(2)).unwrap();
        let prime = OpTable::identity_map(2);
        let hat = OpTable::unary(2, |_| 0);
        assert_eq!(gh_to_inverse_semigroup(&t, &prime, &hat).unwrap(), zn(2));
        let (tt, inv, h) = inverse_semigroup_triple(&zn(2)).unwrap();
        assert_eq!((tt, inv, h), (t, prime, hat));
    }

    #[test]
    fn gh_names_the_failed_identity() {
        let t = standard_ternary(&zn(2)).unwrap();
        let err = gh_to_inverse_semigroup(&t, &OpTable::identity_map(2), &OpTable::identity_map(2));
        assert!(matches!(err, Err(Error::Precondition(m)) if m.contains("[x x^ y]")));
    }

    #[test]
    fn schein_table_is_not_a_standard_ternary() {
        let t = schein_table();
        let s = Structure::new("nonstandard_gheap", Carrier::numbered(3))
            .with_op("t", t.clone())
            .unwrap();
        assert!(
            check_property(&s, PropertyName::GeneralisedHeap, &Binding::default())
                .unwrap()
                .holds()
        );
        assert_eq!(involutions(3).len(), 4);
        assert_eq!(idempotent_maps(3).len(), 10);
        assert!(standard_ternary_witnesses(&t).is_empty());
    }

    #[test]
    fn natural_ternary_recoveries() {
        let t = natural_ternary(&zn(2));
        let got =
            natural_ternary_inverse_check(&t, &OpTable::identity_map(2), &OpTable::unary(2, |_| 0));
        assert_eq!(got.unwrap(), zn(2));
        let t = natural_ternary(&meet2());
        let id = OpTable::identity_map(2);
        assert_eq!(
            natural_ternary_inverse_check(&t, &id, &id).unwrap(),
            meet2()
        );
    }

    #[test]
    fn projection_is_not_a_natural_ternary() {
        let t = OpTable::ternary(3, |x, _, _| x);
        assert!(natural_ternary_witnesses(&t).is_empty());
        let id = OpTable::identity_map(3);
        let err = natural_ternary_inverse_check(&t, &id, &id);
        assert!(matches!(err, Err(Error::Precondition(m)) if m.contains("[[x x^ x']")));
    }

    #[test]
    fn inverse_semigroup_recognition() {
        assert!(is_inverse_semigroup(&zn(4)));
        assert!(is_inverse_semigroup(&meet2()));
        assert!(!is_inverse_semigroup(&OpTable::binary(2, |x, _| x)));
        assert!(!is_inverse_semigroup(&OpTable::binary(3, |x, y| (x + 3
            - y)
            % 3)));
    }
}

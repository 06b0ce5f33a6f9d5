//! Recovering a groupoid from a ternary operation and a distinguished element.

use std::fmt;
use std::str::FromStr;

use super::{dual_table, natural_ternary, require, star_ternary};
use crate::algebra::{Carrier, Elem, OpTable, Structure};
use crate::classify::{first_failure, role_failure, PropertyName, Role};
use crate::clause::Binding;
use crate::error::{Error, Result};

/// Which recovery to perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// `a•b = {b a^ l}` from the star ternary operation `[abc]' = (a(bl))c`
    /// of a right modular groupoid with left identity `l` (with `x^ = xl`).
    RightModularStar,
    /// `xy = {y l x^}` from the star ternary operation of a star-unary groupoid
    /// with left identity `l` (with `^` the involution).
    StarUnaryStar,
    /// `xy = {l x y}` from the natural ternary operation of a star-unary
    /// groupoid with left identity `l`; `x^ = {l x l}`.
    StarUnaryNatural,
    /// `x•y = {y x l}` from the natural ternary operation of the dual of a
    /// right modular groupoid with left identity `l`.
    RightModularDual,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::RightModularStar,
        Scheme::StarUnaryStar,
        Scheme::StarUnaryNatural,
        Scheme::RightModularDual,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Scheme::RightModularStar => "right-modular-star",
            Scheme::StarUnaryStar => "star-unary-star",
            Scheme::StarUnaryNatural => "star-unary-natural",
            Scheme::RightModularDual => "right-modular-dual",
        }
    }

    fn needs_hat(self) -> bool {
        matches!(self, Scheme::RightModularStar | Scheme::StarUnaryStar)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown scheme `{s}`")))
    }
}

/// Working copy: numbered carrier, ops `t` and (optionally) `hat`.
fn workspace(t: &OpTable, hat: Option<&OpTable>) -> Structure {
    let mut w = Structure::new("w", Carrier::numbered(t.order()));
    w.insert_op("t", t.clone()).expect("ternary table");
    if let Some(h) = hat {
        w.insert_op("hat", h.clone()).expect("unary table");
    }
    w
}

fn require_role(w: &Structure, role: Role, l: Elem) -> Result<()> {
    match role_failure(w, role, &Binding::default(), l)? {
        None => Ok(()),
        Some(a) => Err(Error::Precondition(format!(
            "{l} is not {role} (fails at {a})"
        ))),
    }
}

fn require_clauses(w: &Structure, texts: &[&'static str], l: Elem) -> Result<()> {
    for text in texts {
        if let Some(a) = first_failure(w, &[text], &Binding::default(), Some(l))? {
            return Err(Error::Precondition(format!("`{text}` fails at {a}")));
        }
    }
    Ok(())
}

fn unit_of(s: &Structure, binding: &Binding) -> Result<Elem> {
    binding
        .unit_elem(s)?
        .ok_or_else(|| Error::MissingBinding("a distinguished element `l` is required".into()))
}

fn has_left_identity(mul: &OpTable, l: Elem) -> bool {
    (0..mul.order()).all(|x| mul.get2(l, x) == x)
}

fn check_post(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Postcondition(what.to_string()))
    }
}

fn output(s: &Structure, name: String, mul: OpTable, star: Option<OpTable>) -> Structure {
    let mut out = Structure::new(name, s.carrier().clone());
    out.insert_op("mul", mul).expect("binary table");
    if let Some(u) = star {
        out.insert_op("star", u).expect("unary table");
    }
    for (k, &e) in s.consts() {
        out.insert_const(k.clone(), e).expect("constant in range");
    }
    out
}

/// The groupoid `a*b = [l a b]` of a laterally commutative semiheap with
/// bi-unital element `l`; the result is right modular with left identity `l`
/// and its natural ternary operation is the input.
pub fn gamma_from_semiheap(s: &Structure, binding: &Binding, l: Elem) -> Result<Structure> {
    let t = s.op(&binding.ternary)?;
    if l >= s.order() {
        return Err(Error::IndexOutOfRange {
            index: l,
            order: s.order(),
        });
    }
    let w = workspace(t, None);
    require(
        &w,
        &Binding::default(),
        &[PropertyName::LaterallyCommutative, PropertyName::Semiheap],
        "ternary operation",
    )?;
    require_role(&w, Role::BiUnital, l)?;
    let mul = OpTable::binary(s.order(), |a, b| t.get3(l, a, b));
    if cfg!(debug_assertions) {
        check_post(
            has_left_identity(&mul, l),
            "recovered groupoid lacks the left identity",
        )?;
        check_post(
            &natural_ternary(&mul) == t,
            "natural ternary of the recovered groupoid differs",
        )?;
    }
    Ok(output(s, format!("gamma_{}", s.name()), mul, None))
}

/// Recover a groupoid from `s`'s ternary operation under `scheme`. The
/// distinguished element comes from `binding.unit`; `^` from `binding.hat`.
pub fn reconstruct(s: &Structure, scheme: Scheme, binding: &Binding) -> Result<Structure> {
    let t = s.op(&binding.ternary)?;
    let l = unit_of(s, binding)?;
    let n = s.order();
    let hat = match s.ops().get(&binding.hat) {
        Some(h) if h.arity() == 1 => Some(h.clone()),
        Some(h) => {
            return Err(Error::ArityMismatch {
                op: binding.hat.clone(),
                expected: 1,
                got: h.arity(),
            })
        }
        None if scheme.needs_hat() => {
            return Err(Error::MissingBinding(format!(
                "scheme {scheme} needs a unary operation `{}`",
                binding.hat
            )))
        }
        None => None,
    };
    let name = format!("{}_{}", scheme.token(), s.name());
    match scheme {
        Scheme::RightModularStar => {
            let hat = hat.unwrap();
            let w = workspace(t, Some(&hat));
            require(
                &w,
                &Binding::default(),
                &[
                    PropertyName::Semiheap,
                    PropertyName::LaterallyCommutative,
                    PropertyName::LeftCommutative,
                ],
                "ternary operation",
            )?;
            require_role(&w, Role::Unit, l)?;
            require_clauses(&w, &["x^^ = x", "[x y^ l]^ = [x^ y l]"], l)?;
            let mul = OpTable::binary(n, |a, b| t.get3(b, hat.get1(a), l));
            let prime = OpTable::unary(n, |x| mul.get2(x, l));
            let rm = require(
                &workspace_binary(&mul),
                &Binding::default(),
                &[PropertyName::RightModular],
                "result",
            );
            check_post(
                rm.is_ok() && has_left_identity(&mul, l),
                "result is not right modular with left identity",
            )?;
            check_post(
                &star_ternary(&mul, &prime)? == t,
                "star ternary of the result differs",
            )?;
            Ok(output(s, name, mul, None))
        }
        Scheme::StarUnaryStar => {
            let hat = hat.unwrap();
            let w = workspace(t, Some(&hat));
            require(
                &w,
                &Binding::default(),
                &[PropertyName::LeftCommutative, PropertyName::StarCongruent],
                "ternary operation",
            )?;
            require_role(&w, Role::Unit, l)?;
            require_role(&w, Role::LeftLConsistent, l)?;
            require_role(&w, Role::CentralCommutant, l)?;
            require_clauses(&w, &["x^^ = x", "l^ = l"], l)?;
            let mul = OpTable::binary(n, |x, y| t.get3(y, l, hat.get1(x)));
            post_star_unary(&mul, &hat, l)?;
            check_post(
                &star_ternary(&mul, &hat)? == t,
                "star ternary of the result differs",
            )?;
            Ok(output(s, name, mul, Some(hat)))
        }
        Scheme::StarUnaryNatural => {
            let hat = hat.unwrap_or_else(|| OpTable::unary(n, |x| t.get3(l, x, l)));
            let w = workspace(t, Some(&hat));
            require(
                &w,
                &Binding::default(),
                &[PropertyName::StarCongruent],
                "ternary operation",
            )?;
            require_role(&w, Role::BiUnital, l)?;
            require_role(&w, Role::LeftLConsistent, l)?;
            require_role(&w, Role::CentralCommutant, l)?;
            require_clauses(&w, &["[l x l] = x^"], l)?;
            let mul = OpTable::binary(n, |x, y| t.get3(l, x, y));
            post_star_unary(&mul, &hat, l)?;
            check_post(
                &natural_ternary(&mul) == t,
                "natural ternary of the result differs",
            )?;
            Ok(output(s, name, mul, Some(hat)))
        }
        Scheme::RightModularDual => {
            let w = workspace(t, None);
            require(
                &w,
                &Binding::default(),
                &[PropertyName::RightCommutative],
                "ternary operation",
            )?;
            require_role(&w, Role::RightUnital, l)?;
            require_clauses(
                &w,
                &[
                    "[x [y z q] w] = [z w [y x q]]",
                    "[[x y z] q w] = [[x y q] w z]",
                ],
                l,
            )?;
            let mul = OpTable::binary(n, |x, y| t.get3(y, x, l));
            let rm = require(
                &workspace_binary(&mul),
                &Binding::default(),
                &[PropertyName::RightModular],
                "result",
            );
            check_post(
                rm.is_ok() && has_left_identity(&mul, l),
                "result is not right modular with left identity",
            )?;
            check_post(
                &natural_ternary(&dual_table(&mul)) == t,
                "natural ternary of the dual differs",
            )?;
            Ok(output(s, name, mul, None))
        }
    }
}

fn workspace_binary(mul: &OpTable) -> Structure {
    Structure::from_binary("w", mul.clone())
}

fn post_star_unary(mul: &OpTable, hat: &OpTable, l: Elem) -> Result<()> {
    let w = workspace_binary(mul)
        .with_op("star", hat.clone())
        .expect("unary table");
    let ok = require(
        &w,
        &Binding::default(),
        &[PropertyName::StarUnary],
        "result",
    )
    .is_ok();
    check_post(
        ok && has_left_identity(mul, l),
        "result is not star-unary with left identity",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::parse_structure;
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

    const STAR_UNARY: &str = "\
structure star_unary
elements x y l
op mul arity 2
y x x
x x y
x y l
op star arity 1
x y l
const l = l
end
";

    fn with_hat(s: &Structure, t: OpTable, hat: OpTable) -> Structure {
        with_ternary(s, t).with_op("hat", hat).unwrap()
    }

    #[test]
    fn gamma_inverts_natural_ternary_on_rm_unit() {
        let s = parse_structure(RM_UNIT).unwrap();
        let t = with_ternary(&s, natural_ternary(s.op("mul").unwrap()));
        let g = gamma_from_semiheap(&t, &Binding::default(), 3).unwrap();
        assert_eq!(g.op("mul").unwrap(), s.op("mul").unwrap());
    }

    #[test]
    fn gamma_on_heap_mod_two() {
        let h = Structure::new("h", Carrier::numbered(2))
            .with_op("t", OpTable::ternary(2, |x, y, z| (x + y + z) % 2))
            .unwrap();
        let g = gamma_from_semiheap(&h, &Binding::default(), 0).unwrap();
        assert_eq!(
            g.op("mul").unwrap(),
            &OpTable::binary(2, |x, y| (x + y) % 2)
        );
    }

    #[test]
    fn gamma_rejects_non_semiheap() {
        let s = parse_structure(
            "structure p2\nelements a b ab ba\nop mul arity 2\na ab ba b\nba b a ab\nb ba ab a\nab a b ba\nend\n",
        )
        .unwrap();
        let t = with_ternary(&s, natural_ternary(s.op("mul").unwrap()));
        let err = gamma_from_semiheap(&t, &Binding::default(), 0).unwrap_err();
        assert!(
            matches!(err, Error::Precondition(ref m) if m.contains("semiheap")),
            "{err}"
        );
    }

    #[test]
    fn right_modular_star_round_trip() {
        let s = parse_structure(RM_UNIT).unwrap();
        let mul = s.op("mul").unwrap();
        let prime = OpTable::unary(4, |x| mul.get2(x, 3));
        let t = with_hat(&s, star_ternary(mul, &prime).unwrap(), prime);
        let b = Binding::default().with_unit("l");
        let r = reconstruct(&t, Scheme::RightModularStar, &b).unwrap();
        assert_eq!(r.op("mul").unwrap(), mul);
    }

    #[test]
    fn star_unary_natural_on_star_unary() {
        let s = parse_structure(STAR_UNARY).unwrap();
        let t = with_hat(
            &s,
            natural_ternary(s.op("mul").unwrap()),
            OpTable::identity_map(3),
        );
        let b = Binding::default().with_unit("l");
        let r = reconstruct(&t, Scheme::StarUnaryNatural, &b).unwrap();
        assert_eq!(r.op("mul").unwrap(), s.op("mul").unwrap());
        // without an explicit ^ it is read off as [l x l]
        let bare = with_ternary(&s, natural_ternary(s.op("mul").unwrap()));
        let r = reconstruct(&bare, Scheme::StarUnaryNatural, &b).unwrap();
        assert_eq!(r.op("star").unwrap(), &OpTable::identity_map(3));
    }

    #[test]
    fn star_unary_star_on_star_unary() {
        let s = parse_structure(STAR_UNARY).unwrap();
        let star = s.op("star").unwrap().clone();
        let t = with_hat(&s, star_ternary(s.op("mul").unwrap(), &star).unwrap(), star);
        let r = reconstruct(
            &t,
            Scheme::StarUnaryStar,
            &Binding::default().with_unit("l"),
        )
        .unwrap();
        assert_eq!(r.op("mul").unwrap(), s.op("mul").unwrap());
    }

    #[test]
    fn right_modular_dual_round_trip() {
        let s = parse_structure(RM_UNIT).unwrap();
        let mul = s.op("mul").unwrap();
        let t = with_ternary(&s, natural_ternary(&dual_table(mul)));
        let r = reconstruct(
            &t,
            Scheme::RightModularDual,
            &Binding::default().with_unit("l"),
        )
        .unwrap();
        assert_eq!(r.op("mul").unwrap(), mul);
    }

    #[test]
    fn missing_inputs() {
        let s = parse_structure(RM_UNIT).unwrap();
        let t = with_ternary(&s, natural_ternary(s.op("mul").unwrap()));
        assert!(matches!(
            reconstruct(&t, Scheme::RightModularDual, &Binding::default()),
            Err(Error::MissingBinding(_))
        ));
        assert!(matches!(
            reconstruct(
                &t,
                Scheme::RightModularStar,
                &Binding::default().with_unit("l")
            ),
            Err(Error::MissingBinding(_))
        ));
        // the natural ternary of rm_unit is not right commutative
        assert!(matches!(
            reconstruct(
                &t,
                Scheme::RightModularDual,
                &Binding::default().with_unit("l")
            ),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            "star-unary-natural".parse::<Scheme>().unwrap(),
            Scheme::StarUnaryNatural
        );
    }
}

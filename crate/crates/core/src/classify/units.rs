use super::{find_elements, has_property, PropertyName, Role};
use crate::algebra::{Elem, OpTable, Structure};
use crate::clause::Binding;
use crate::construct::{natural_ternary, star_ternary, with_ternary};
use crate::error::{Error, Result};

/// One unit set computed two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSetComparison {
    pub description: &'static str,
    pub brute_force: Vec<Elem>,
    pub closed_form: Vec<Elem>,
}

impl UnitSetComparison {
    pub fn agrees(&self) -> bool {
        self.brute_force == self.closed_form
    }
}

/// Lateral and outer lateral units of `[S]` and `[S]'` (where `x' = x*l`),
/// found by brute force and by the closed-form conditions on `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitReport {
    pub left_identity: Elem,
    pub comparisons: Vec<UnitSetComparison>,
}

impl UnitReport {
    pub fn agrees(&self) -> bool {
        self.comparisons.iter().all(UnitSetComparison::agrees)
    }

    pub fn first_discrepancy(&self) -> Option<&UnitSetComparison> {
        self.comparisons.iter().find(|c| !c.agrees())
    }
}

fn select(n: usize, pred: impl Fn(Elem) -> bool) -> Vec<Elem> {
    (0..n).filter(|&m| pred(m)).collect()
}

/// Compare brute-force unit sets with their closed forms for a right modular
/// groupoid with a left identity. The left identity is the binding's unit if
/// set, otherwise the (unique) one found in the table.
pub fn check_unit_characterizations(s: &Structure, binding: &Binding) -> Result<UnitReport> {
    if !has_property(s, PropertyName::RightModular, binding)? {
        return Err(Error::Precondition("groupoid is not right modular".into()));
    }
    let lefts = find_elements(s, Role::LeftIdentity, binding)?;
    let l = match binding.unit_elem(s)? {
        Some(l) if lefts.contains(&l) => l,
        Some(l) => {
            return Err(Error::Precondition(format!(
                "`{}` is not a left identity",
                s.carrier().name(l)
            )))
        }
        None => *lefts
            .first()
            .ok_or_else(|| Error::Precondition("no left identity".into()))?,
    };
    let mul = s.op(&binding.mul)?;
    let n = s.order();
    let m = |a, b| mul.get2(a, b);
    let prime = OpTable::unary(n, |x| m(x, l));

    let plain = Binding {
        unit: None,
        ..Binding::default()
    };
    let nat = with_ternary(s, natural_ternary(mul));
    let star = with_ternary(s, star_ternary(mul, &prime)?);
    let lu = find_elements(&nat, Role::LateralUnit, &plain)?;
    let olu = find_elements(&nat, Role::OuterLateralUnit, &plain)?;
    let lu_star = find_elements(&star, Role::LateralUnit, &plain)?;
    let olu_star = find_elements(&star, Role::OuterLateralUnit, &plain)?;

    let right_unit = (0..n).all(|x| m(x, l) == x);
    let sq = |x| m(x, x);
    let comparisons = vec![
        UnitSetComparison {
            description: "lateral units of [S]: (ml)m = l and x = xl for all x",
            brute_force: lu.clone(),
            closed_form: select(n, |k| right_unit && m(m(k, l), k) == l),
        },
        UnitSetComparison {
            description: "lateral units of [S]: mm = l and x = xl for all x",
            brute_force: lu,
            closed_form: select(n, |k| right_unit && sq(k) == l),
        },
        UnitSetComparison {
            description: "lateral units of [S]': ((ml)m)l = l",
            brute_force: lu_star.clone(),
            closed_form: select(n, |k| m(m(m(k, l), k), l) == l),
        },
        UnitSetComparison {
            description: "lateral units of [S]': (ml)m = l",
            brute_force: lu_star.clone(),
            closed_form: select(n, |k| m(m(k, l), k) == l),
        },
        UnitSetComparison {
            description: "lateral units of [S]': m = m(mm) and l = (mm)(mm)",
            brute_force: lu_star,
            closed_form: select(n, |k| k == m(k, sq(k)) && l == sq(sq(k))),
        },
        UnitSetComparison {
            description: "outer lateral units of [S]: l = (mm)(mm)",
            brute_force: olu,
            closed_form: select(n, |k| l == sq(sq(k))),
        },
        UnitSetComparison {
            description: "outer lateral units of [S]': l = ((ml)m)(m(ml))",
            brute_force: olu_star,
            closed_form: select(n, |k| l == m(m(m(k, l), k), m(k, m(k, l)))),
        },
    ];
    Ok(UnitReport {
        left_identity: l,
        comparisons,
    })
}

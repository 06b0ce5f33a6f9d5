//! Structures built from other structures: ternary operations of groupoids,
//! groupoids recovered from ternary operations, and the maps between groups,
//! heaps and Ward quasigroups.

mod reconstruct;
mod web;

use std::fmt;
use std::str::FromStr;

pub use reconstruct::{gamma_from_semiheap, reconstruct, Scheme};
pub use web::{
    alpha_map, beta_map, gamma_wq, group_identity_and_inverses, lambda, nwq_element, omega, phi_g,
    pi_map, psi, sigma, theta, unique_idempotent,
};

use crate::algebra::{Carrier, OpTable, Structure};
use crate::classify::{check_property, PropertyName};
use crate::clause::Binding;
use crate::error::{Error, Result};

/// `[abc] = (a*b)*c`.
pub fn natural_ternary(mul: &OpTable) -> OpTable {
    OpTable::ternary(mul.order(), |a, b, c| mul.get2(mul.get2(a, b), c))
}

/// `[abc] = (a*u(b))*c`.
pub fn star_ternary(mul: &OpTable, unary: &OpTable) -> Result<OpTable> {
    if unary.arity() != 1 || unary.order() != mul.order() {
        return Err(Error::InvalidTable(
            "expected a unary table of the same order".into(),
        ));
    }
    Ok(OpTable::ternary(mul.order(), |a, b, c| {
        mul.get2(mul.get2(a, unary.get1(b)), c)
    }))
}

/// `x × y = y * x`.
pub fn dual_table(mul: &OpTable) -> OpTable {
    OpTable::binary(mul.order(), |x, y| mul.get2(y, x))
}

/// A permutation of argument positions `1, 2, 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation3([u8; 3]);

impl Permutation3 {
    pub const IDENTITY: Permutation3 = Permutation3([1, 2, 3]);
    pub const REVERSE: Permutation3 = Permutation3([3, 2, 1]);

    /// `images[i]` is the image of position `i + 1`.
    pub fn new(images: [u8; 3]) -> Result<Self> {
        let mut sorted = images;
        sorted.sort_unstable();
        if sorted != [1, 2, 3] {
            return Err(Error::InvalidTable(format!(
                "{images:?} is not a permutation of 1,2,3"
            )));
        }
        Ok(Permutation3(images))
    }

    pub fn all() -> [Permutation3; 6] {
        [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ]
        .map(Permutation3)
    }

    pub fn images(self) -> [u8; 3] {
        self.0
    }
}

impl fmt::Display for Permutation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

impl FromStr for Permutation3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 1,
            col: 1,
            msg: format!("bad permutation `{s}`"),
        };
        let digits: Vec<u8> = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|d| d.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let arr: [u8; 3] = digits.try_into().map_err(|_| bad())?;
        Permutation3::new(arr)
    }
}

/// `[x1 x2 x3]_p = [x_p(1) x_p(2) x_p(3)]`.
pub fn pi_ternary(t: &OpTable, p: Permutation3) -> OpTable {
    let [i, j, k] = p.0.map(|d| d as usize - 1);
    OpTable::ternary(t.order(), |a, b, c| {
        let xs = [a, b, c];
        t.get3(xs[i], xs[j], xs[k])
    })
}

/// The carrier and constants of `s` with a single ternary operation `t`.
pub fn with_ternary(s: &Structure, t: OpTable) -> Structure {
    let mut out = Structure::new(format!("[{}]", s.name()), s.carrier().clone());
    out.insert_op("t", t)
        .expect("ternary table matches the carrier");
    for (k, &e) in s.consts() {
        out.insert_const(k.clone(), e).expect("constant in range");
    }
    out
}

/// The carrier and constants of `s` with a single binary operation `mul`.
pub fn with_binary(s: &Structure, name: impl Into<String>, mul: OpTable) -> Structure {
    let mut out = Structure::new(name, s.carrier().clone());
    out.insert_op("mul", mul)
        .expect("binary table matches the carrier");
    for (k, &e) in s.consts() {
        out.insert_const(k.clone(), e).expect("constant in range");
    }
    out
}

/// The natural ternary operation of `s`'s bound product.
pub fn natural_ternary_of(s: &Structure, binding: &Binding) -> Result<Structure> {
    Ok(with_ternary(s, natural_ternary(s.op(&binding.mul)?)))
}

pub fn dual_groupoid(s: &Structure, binding: &Binding) -> Result<Structure> {
    Ok(with_binary(
        s,
        format!("{}_dual", s.name()),
        dual_table(s.op(&binding.mul)?),
    ))
}

pub(crate) fn numbered_ternary(t: &OpTable) -> Structure {
    Structure::new("t", Carrier::numbered(t.order()))
        .with_op("t", t.clone())
        .expect("ternary table")
}

pub(crate) fn numbered_binary(mul: &OpTable) -> Structure {
    Structure::from_binary("s", mul.clone())
}

/// Fail with [`Error::Precondition`] naming the first property that does not hold.
pub(crate) fn require(
    s: &Structure,
    binding: &Binding,
    props: &[PropertyName],
    what: &str,
) -> Result<()> {
    for &p in props {
        let r = check_property(s, p, binding)?;
        if !r.holds() {
            let at = r
                .counterexample
                .map(|a| format!(" at {}", a.display_with(s)))
                .unwrap_or_default();
            return Err(Error::Precondition(format!("{what} is not {p}{at}")));
        }
    }
    Ok(())
}

/// Two groupoids on `n` elements with equal natural ternary operations that
/// are not isomorphic: the left-zero semigroup, and the table whose first two
/// rows are constant at the other element of `{0, 1}` (all other rows left-zero).
pub fn twin_natural_pair(n: usize) -> Result<(Structure, Structure)> {
    if n < 2 {
        return Err(Error::Precondition(format!("order {n} is below 2")));
    }
    let left_zero = Structure::from_binary(format!("left_zero_{n}"), OpTable::binary(n, |a, _| a));
    let swapped = Structure::from_binary(
        format!("swapped_{n}"),
        OpTable::binary(n, |a, _| match a {
            0 => 1,
            1 => 0,
            _ => a,
        }),
    );
    Ok((left_zero, swapped))
}

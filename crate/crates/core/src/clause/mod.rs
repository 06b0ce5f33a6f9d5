//! Identities and quasi-identities over the signature `*`, `[ ]`, `'`, `^`.
//!
//! ```text
//! clause  := [eq ("&" eq)* "=>"] eq
//! eq      := term "=" term
//! term    := factor ("*" factor)*        left-associative
//! factor  := atom ("'" | "^")*
//! atom    := var | const | "[" term term term "]" | "(" term ")"
//! ```
//!
//! Variables are exactly `x y z u v w q`; any other identifier is a constant.
//! Which table each symbol denotes is decided at check time by a [`Binding`].

mod check;
mod parse;

use std::fmt;

pub use check::{
    check_clause, check_clause_with, Assignment, Binding, CheckResult, Compiled, Verdict,
};
pub use parse::parse_clause;

/// The seven clause variables, in counterexample enumeration order.
pub const VAR_NAMES: [char; 7] = ['x', 'y', 'z', 'u', 'v', 'w', 'q'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub fn from_char(c: char) -> Option<Var> {
        VAR_NAMES.iter().position(|&v| v == c).map(|i| Var(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> char {
        VAR_NAMES[self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Operation symbols of the clause language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpSym {
    /// Infix `*`.
    Mul,
    /// Bracket form `[a b c]`.
    Ternary,
    /// Postfix `'`.
    Prime,
    /// Postfix `^`.
    Hat,
}

impl OpSym {
    pub fn arity(self) -> usize {
        match self {
            OpSym::Mul => 2,
            OpSym::Ternary => 3,
            OpSym::Prime | OpSym::Hat => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            OpSym::Mul => "*",
            OpSym::Ternary => "[]",
            OpSym::Prime => "'",
            OpSym::Hat => "^",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Const(String),
    Apply(OpSym, Vec<Term>),
}

impl Term {
    pub fn product(a: Term, b: Term) -> Term {
        Term::Apply(OpSym::Mul, vec![a, b])
    }

    fn collect_vars(&self, out: &mut [bool; 7]) {
        match self {
            Term::Var(v) => out[v.index()] = true,
            Term::Const(_) => {}
            Term::Apply(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn collect_syms(&self, out: &mut Vec<OpSym>) {
        if let Term::Apply(op, args) = self {
            if !out.contains(op) {
                out.push(*op);
            }
            args.iter().for_each(|a| a.collect_syms(out));
        }
    }

    fn collect_consts<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Const(c) if !out.contains(&c.as_str()) => out.push(c),
            Term::Apply(_, args) => args.iter().for_each(|a| a.collect_consts(out)),
            _ => {}
        }
    }

    fn fmt_in(&self, f: &mut fmt::Formatter<'_>, wrap_product: bool) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::Apply(OpSym::Mul, args) => {
                if wrap_product {
                    write!(f, "(")?;
                }
                args[0].fmt_in(f, false)?;
                write!(f, "*")?;
                args[1].fmt_in(f, true)?;
                if wrap_product {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Term::Apply(OpSym::Ternary, args) => {
                write!(f, "[")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    a.fmt_in(f, false)?;
                }
                write!(f, "]")
            }
            Term::Apply(op, args) => {
                args[0].fmt_in(f, true)?;
                write!(f, "{}", op.symbol())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, false)
    }
}

/// `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A quasi-identity: premises imply the conclusion, for every assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl Clause {
    pub fn identity(lhs: Term, rhs: Term) -> Clause {
        Clause {
            premises: Vec::new(),
            conclusion: Equation { lhs, rhs },
        }
    }

    pub fn is_identity(&self) -> bool {
        self.premises.is_empty()
    }

    fn equations(&self) -> impl Iterator<Item = &Equation> {
        self.premises
            .iter()
            .chain(std::iter::once(&self.conclusion))
    }

    /// Variables occurring in the clause, in `x y z u v w q` order.
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = [false; 7];
        for eq in self.equations() {
            eq.lhs.collect_vars(&mut seen);
            eq.rhs.collect_vars(&mut seen);
        }
        (0..7).filter(|&i| seen[i]).map(|i| Var(i as u8)).collect()
    }

    pub fn symbols(&self) -> Vec<OpSym> {
        let mut out = Vec::new();
        for eq in self.equations() {
            eq.lhs.collect_syms(&mut out);
            eq.rhs.collect_syms(&mut out);
        }
        out
    }

    pub fn constants(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for eq in self.equations() {
            eq.lhs.collect_consts(&mut out);
            eq.rhs.collect_consts(&mut out);
        }
        out
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            write!(f, "{}{p}", if i == 0 { "" } else { " & " })?;
        }
        if !self.premises.is_empty() {
            write!(f, " => ")?;
        }
        write!(f, "{}", self.conclusion)
    }
}

impl std::str::FromStr for Clause {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_clause(s)
    }
}

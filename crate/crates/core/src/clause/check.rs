use std::fmt;

use super::{Clause, OpSym, Term, Var};
use crate::algebra::{Elem, OpTable, Structure};
use crate::error::{Error, Result};

/// Which table of the structure each clause symbol denotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub mul: String,
    pub ternary: String,
    pub prime: String,
    pub hat: String,
    /// Element token (constant or element name) playing the distinguished
    /// unit role; `None` means "search for one".
    pub unit: Option<String>,
}

impl Default for Binding {
    fn default() -> Self {
        Binding {
            mul: "mul".into(),
            ternary: "t".into(),
            prime: "star".into(),
            hat: "hat".into(),
            unit: None,
        }
    }
}

impl Binding {
    pub fn op_name(&self, sym: OpSym) -> &str {
        match sym {
            OpSym::Mul => &self.mul,
            OpSym::Ternary => &self.ternary,
            OpSym::Prime => &self.prime,
            OpSym::Hat => &self.hat,
        }
    }

    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit = Some(unit.into());
        self
    }

    /// Resolve the unit token against `s`, if one is set.
    pub fn unit_elem(&self, s: &Structure) -> Result<Option<Elem>> {
        match &self.unit {
            None => Ok(None),
            Some(tok) => s
                .resolve(tok)
                .map(Some)
                .ok_or_else(|| Error::MissingBinding(format!("unit `{tok}` names no element"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

/// Values for the variables occurring in a clause, in `x y z u v w q` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<(Var, Elem)>);

impl Assignment {
    pub fn get(&self, v: char) -> Option<Elem> {
        self.0
            .iter()
            .find(|(var, _)| var.name() == v)
            .map(|&(_, e)| e)
    }

    /// `x=a, y=b` with element names from `s`.
    pub fn display_with(&self, s: &Structure) -> String {
        self.0
            .iter()
            .map(|&(v, e)| format!("{v}={}", s.carrier().name(e)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Just the values, comma separated: `x,x,y`.
    pub fn values_with(&self, s: &Structure) -> String {
        self.0
            .iter()
            .map(|&(_, e)| s.carrier().name(e))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.0.iter().enumerate() {
            write!(f, "{}{v}={e}", if i == 0 { "" } else { ", " })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub verdict: Verdict,
    pub counterexample: Option<Assignment>,
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Debug, Clone)]
enum Code {
    Var(usize),
    Const(Elem),
    Un(usize, Box<Code>),
    Bin(usize, Box<Code>, Box<Code>),
    Ter(usize, Box<Code>, Box<Code>, Box<Code>),
}

/// A clause resolved against concrete tables, ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct Compiled<'a> {
    tables: Vec<&'a OpTable>,
    premises: Vec<(Code, Code)>,
    conclusion: (Code, Code),
    vars: Vec<Var>,
    order: usize,
}

struct Resolver<'a, 'b> {
    s: &'a Structure,
    binding: &'b Binding,
    extra: &'b [(&'b str, Elem)],
    tables: Vec<&'a OpTable>,
    slots: Vec<OpSym>,
}

impl<'a> Resolver<'a, '_> {
    fn table(&mut self, sym: OpSym) -> Result<usize> {
        if let Some(i) = self.slots.iter().position(|&s| s == sym) {
            return Ok(i);
        }
        let name = self.binding.op_name(sym);
        let table =
            self.s.ops().get(name).ok_or_else(|| {
                Error::UnboundSymbol(format!("{} (bound to `{name}`)", sym.symbol()))
            })?;
        if table.arity() != sym.arity() {
            return Err(Error::ArityMismatch {
                op: name.to_string(),
                expected: table.arity(),
                got: sym.arity(),
            });
        }
        self.tables.push(table);
        self.slots.push(sym);
        Ok(self.tables.len() - 1)
    }

    fn code(&mut self, t: &Term) -> Result<Code> {
        Ok(match t {
            Term::Var(v) => Code::Var(v.index()),
            Term::Const(name) => {
                let e = self
                    .extra
                    .iter()
                    .find(|(k, _)| k == name)
                    .map(|&(_, e)| e)
                    .or_else(|| self.s.constant(name))
                    .ok_or_else(|| Error::UnboundSymbol(name.clone()))?;
                Code::Const(e)
            }
            Term::Apply(op, args) => {
                let slot = self.table(*op)?;
                let mut c: Vec<Code> = args.iter().map(|a| self.code(a)).collect::<Result<_>>()?;
                match c.len() {
                    1 => Code::Un(slot, Box::new(c.pop().unwrap())),
                    2 => {
                        let b = c.pop().unwrap();
                        Code::Bin(slot, Box::new(c.pop().unwrap()), Box::new(b))
                    }
                    _ => {
                        let z = c.pop().unwrap();
                        let y = c.pop().unwrap();
                        Code::Ter(slot, Box::new(c.pop().unwrap()), Box::new(y), Box::new(z))
                    }
                }
            }
        })
    }
}

impl<'a> Compiled<'a> {
    /// Resolve `c` against `s`. `extra` supplies constants that take
    /// precedence over the structure's own (e.g. a candidate unit `l`).
    pub fn new(
        s: &'a Structure,
        c: &Clause,
        binding: &Binding,
        extra: &[(&str, Elem)],
    ) -> Result<Compiled<'a>> {
        let mut r = Resolver {
            s,
            binding,
            extra,
            tables: Vec::new(),
            slots: Vec::new(),
        };
        let premises = c
            .premises
            .iter()
            .map(|eq| Ok((r.code(&eq.lhs)?, r.code(&eq.rhs)?)))
            .collect::<Result<Vec<_>>>()?;
        let conclusion = (r.code(&c.conclusion.lhs)?, r.code(&c.conclusion.rhs)?);
        Ok(Compiled {
            tables: r.tables,
            premises,
            conclusion,
            vars: c.vars(),
            order: s.order(),
        })
    }

    fn eval(&self, code: &Code, env: &[Elem; 7]) -> Elem {
        match code {
            Code::Var(i) => env[*i],
            Code::Const(e) => *e,
            Code::Un(t, a) => self.tables[*t].get1(self.eval(a, env)),
            Code::Bin(t, a, b) => self.tables[*t].get2(self.eval(a, env), self.eval(b, env)),
            Code::Ter(t, a, b, c) => {
                self.tables[*t].get3(self.eval(a, env), self.eval(b, env), self.eval(c, env))
            }
        }
    }

    /// Whether the clause holds at one assignment (indexed by variable slot).
    pub fn holds_at(&self, env: &[Elem; 7]) -> bool {
        let eq = |(l, r): &(Code, Code)| self.eval(l, env) == self.eval(r, env);
        !self.premises.iter().all(eq) || eq(&self.conclusion)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// First failing assignment in odometer order, if any.
    pub fn first_failure(&self) -> Option<Assignment> {
        let k = self.vars.len();
        let mut env = [0; 7];
        let mut digits = vec![0; k];
        loop {
            for (v, &d) in self.vars.iter().zip(&digits) {
                env[v.index()] = d;
            }
            if !self.holds_at(&env) {
                return Some(Assignment(self.vars.iter().copied().zip(digits).collect()));
            }
            // advance: the last variable varies fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < self.order {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    pub fn check(&self) -> CheckResult {
        match self.first_failure() {
            None => CheckResult {
                verdict: Verdict::Holds,
                counterexample: None,
            },
            Some(a) => CheckResult {
                verdict: Verdict::Fails,
                counterexample: Some(a),
            },
        }
    }
}

/// Exhaustively check `c` over `s`, returning the first counterexample.
pub fn check_clause(s: &Structure, c: &Clause, binding: &Binding) -> Result<CheckResult> {
    check_clause_with(s, c, binding, &[])
}

/// [`check_clause`] with additional named constants.
pub fn check_clause_with(
    s: &Structure,
    c: &Clause,
    binding: &Binding,
    extra: &[(&str, Elem)],
) -> Result<CheckResult> {
    Ok(Compiled::new(s, c, binding, extra)?.check())
}

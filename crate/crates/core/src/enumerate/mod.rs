//! Exhaustive generation of small tables satisfying clauses and catalog
//! properties.
//!
//! Cells of all generated tables are filled in lexicographic order, values
//! ascending, so models come out in lexicographic order of their
//! concatenated tables. Every clause is expanded into ground instances; an
//! instance that cannot yet be evaluated waits on the first unassigned cell
//! it reads and is re-evaluated when that cell is filled.

use std::collections::HashMap;
use std::ops::ControlFlow;

use itertools::Itertools;

use crate::algebra::{Carrier, Elem, OpTable, Structure};
use crate::classify::{catalog_clause, check_property, Definition, PropertyName};
use crate::clause::{parse_clause, Binding, Clause, OpSym, Term};
use crate::error::{Error, Result};

/// Largest order generated for each arity.
pub const ORDER_CAP: [usize; 4] = [0, 12, 8, 4];
/// Largest number of ground clause instances kept in memory.
pub const INSTANCE_CAP: usize = 4_000_000;

/// One generated operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigOp {
    pub sym: OpSym,
    pub name: String,
}

#[derive(Debug, Clone)]
pub struct EnumSpec {
    pub order: usize,
    pub signature: Vec<SigOp>,
    pub clauses: Vec<Clause>,
    pub properties: Vec<PropertyName>,
    pub binding: Binding,
    /// Constants fixed to element indices, e.g. `l = 0`.
    pub pins: Vec<(String, Elem)>,
    pub up_to_iso: bool,
}

impl EnumSpec {
    pub fn new(order: usize) -> Self {
        EnumSpec {
            order,
            signature: Vec::new(),
            clauses: Vec::new(),
            properties: Vec::new(),
            binding: Binding::default(),
            pins: Vec::new(),
            up_to_iso: false,
        }
    }

    /// Generate the operation `sym` denotes under the enumeration's binding.
    pub fn op(mut self, sym: OpSym) -> Self {
        let name = self.binding.op_name(sym).to_string();
        self.signature.push(SigOp { sym, name });
        self
    }

    pub fn binary(self) -> Self {
        self.op(OpSym::Mul)
    }

    pub fn ternary(self) -> Self {
        self.op(OpSym::Ternary)
    }

    /// Add signature entries from tokens `binary`, `ternary`, `unary`
    /// (the `'` operation) and `hat`.
    pub fn signature_tokens(mut self, list: &str) -> Result<Self> {
        for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let sym = match tok {
                "binary" => OpSym::Mul,
                "ternary" => OpSym::Ternary,
                "unary" => OpSym::Prime,
                "hat" => OpSym::Hat,
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        col: 1,
                        msg: format!("unknown signature `{tok}`"),
                    })
                }
            };
            self = self.op(sym);
        }
        Ok(self)
    }

    pub fn clause(mut self, text: &str) -> Result<Self> {
        self.clauses.push(parse_clause(text)?);
        Ok(self)
    }

    pub fn property(mut self, p: PropertyName) -> Self {
        self.properties.push(p);
        self
    }

    pub fn properties(mut self, ps: impl IntoIterator<Item = PropertyName>) -> Self {
        self.properties.extend(ps);
        self
    }

    /// Pin a constant. Pinning `l` also makes it the unit for role properties.
    pub fn pin(mut self, name: &str, e: Elem) -> Self {
        self.pins.push((name.to_string(), e));
        if name == "l" && self.binding.unit.is_none() {
            self.binding.unit = Some("l".into());
        }
        self
    }

    pub fn up_to_iso(mut self, yes: bool) -> Self {
        self.up_to_iso = yes;
        self
    }
}

/// A term with variables as indices and constants resolved.
#[derive(Debug, Clone)]
enum Node {
    Var(usize),
    Elem(Elem),
    App(usize, Vec<Node>),
}

#[derive(Debug, Clone)]
struct Rule {
    premises: Vec<(Node, Node)>,
    conclusion: (Node, Node),
    vars: Vec<usize>,
}

enum Val {
    Known(Elem),
    /// Needs the given (unassigned) cell.
    Blocked(usize),
}

enum Status {
    Holds,
    Violated,
    Blocked(usize),
}

struct Tables {
    n: usize,
    /// Offset of each operation's first cell.
    offset: Vec<usize>,
    arity: Vec<usize>,
    cells: Vec<Option<Elem>>,
}

impl Tables {
    fn eval(&self, node: &Node, env: &[Elem; 7]) -> Val {
        match node {
            Node::Var(i) => Val::Known(env[*i]),
            Node::Elem(e) => Val::Known(*e),
            Node::App(op, args) => {
                let mut idx = 0;
                for a in args {
                    match self.eval(a, env) {
                        Val::Known(v) => idx = idx * self.n + v,
                        blocked => return blocked,
                    }
                }
                let cell = self.offset[*op] + idx;
                match self.cells[cell] {
                    Some(v) => Val::Known(v),
                    None => Val::Blocked(cell),
                }
            }
        }
    }

    fn equation(&self, (l, r): &(Node, Node), env: &[Elem; 7]) -> std::result::Result<bool, usize> {
        match (self.eval(l, env), self.eval(r, env)) {
            (Val::Known(a), Val::Known(b)) => Ok(a == b),
            (Val::Blocked(c), _) | (_, Val::Blocked(c)) => Err(c),
        }
    }

    fn status(&self, rule: &Rule, env: &[Elem; 7]) -> Status {
        let mut blocked = None;
        for p in &rule.premises {
            match self.equation(p, env) {
                Ok(false) => return Status::Holds,
                Ok(true) => {}
                Err(c) => blocked = blocked.or(Some(c)),
            }
        }
        match self.equation(&rule.conclusion, env) {
            Ok(true) => Status::Holds,
            Ok(false) => blocked.map_or(Status::Violated, Status::Blocked),
            Err(c) => Status::Blocked(blocked.unwrap_or(c)),
        }
    }
}

struct Instance {
    rule: u32,
    env: [Elem; 7],
}

struct Engine<'a> {
    spec: &'a EnumSpec,
    rules: Vec<Rule>,
    instances: Vec<Instance>,
    watch: Vec<Vec<u32>>,
    trail: Vec<usize>,
    tables: Tables,
    leaf_props: Vec<PropertyName>,
    fixed: Vec<Elem>,
    leaf_binding: Binding,
    carrier: Carrier,
}

fn compile_term(
    t: &Term,
    ops: &HashMap<OpSym, usize>,
    consts: &HashMap<&str, Elem>,
) -> Result<Node> {
    Ok(match t {
        Term::Var(v) => Node::Var(v.index()),
        Term::Const(c) => Node::Elem(
            *consts
                .get(c.as_str())
                .ok_or_else(|| Error::UnboundSymbol(c.clone()))?,
        ),
        Term::Apply(sym, args) => {
            let op = *ops
                .get(sym)
                .ok_or_else(|| Error::UnboundSymbol(sym.symbol().to_string()))?;
            Node::App(
                op,
                args.iter()
                    .map(|a| compile_term(a, ops, consts))
                    .collect::<Result<_>>()?,
            )
        }
    })
}

impl<'a> Engine<'a> {
    fn new(spec: &'a EnumSpec) -> Result<Self> {
        let n = spec.order;
        if n == 0 {
            return Err(Error::Precondition("order must be at least 1".into()));
        }
        let mut ops = HashMap::new();
        let mut offset = Vec::new();
        let mut arity = Vec::new();
        let mut cells = 0;
        for (i, op) in spec.signature.iter().enumerate() {
            let a = op.sym.arity();
            if n > ORDER_CAP[a] {
                return Err(Error::CapExceeded {
                    order: n,
                    what: format!("arity-{a} tables"),
                });
            }
            if ops.insert(op.sym, i).is_some() {
                return Err(Error::Precondition(format!(
                    "operation `{}` listed twice",
                    op.name
                )));
            }
            offset.push(cells);
            arity.push(a);
            cells += n.pow(a as u32);
        }

        let mut consts: HashMap<&str, Elem> = HashMap::new();
        for (name, e) in &spec.pins {
            if *e >= n {
                return Err(Error::IndexOutOfRange {
                    index: *e,
                    order: n,
                });
            }
            consts.insert(name, *e);
        }
        let carrier = Carrier::numbered(n);
        let unit = match &spec.binding.unit {
            None => None,
            Some(tok) => Some(
                consts
                    .get(tok.as_str())
                    .copied()
                    .or_else(|| carrier.index_of(tok))
                    .ok_or_else(|| Error::MissingBinding(format!("unit `{tok}` is not pinned")))?,
            ),
        };
        let mut role_consts = consts.clone();
        if let Some(l) = unit {
            role_consts.insert("l", l);
        }

        let mut clause_list: Vec<(Clause, bool)> =
            spec.clauses.iter().map(|c| (c.clone(), false)).collect();
        let mut leaf_props = Vec::new();
        for &p in &spec.properties {
            for sym in p.ops() {
                if !ops.contains_key(sym) {
                    return Err(Error::MissingBinding(format!(
                        "`{p}` needs the `{}` operation in the signature",
                        sym.symbol()
                    )));
                }
            }
            match p.definition() {
                Definition::Clauses(texts) => {
                    clause_list.extend(texts.iter().map(|t| ((*catalog_clause(t)).clone(), false)))
                }
                Definition::Role(role) if unit.is_some() => clause_list.extend(
                    role.clause_texts()
                        .iter()
                        .map(|t| ((*catalog_clause(t)).clone(), true)),
                ),
                Definition::Role(_) | Definition::Builtin => leaf_props.push(p),
            }
        }

        let mut rules = Vec::new();
        for (c, is_role) in &clause_list {
            let table = if *is_role { &role_consts } else { &consts };
            let node = |t: &Term| compile_term(t, &ops, table);
            rules.push(Rule {
                premises: c
                    .premises
                    .iter()
                    .map(|e| Ok((node(&e.lhs)?, node(&e.rhs)?)))
                    .collect::<Result<_>>()?,
                conclusion: (node(&c.conclusion.lhs)?, node(&c.conclusion.rhs)?),
                vars: c.vars().iter().map(|v| v.index()).collect(),
            });
        }
        let total: usize = rules.iter().map(|r| n.pow(r.vars.len() as u32)).sum();
        if total > INSTANCE_CAP {
            return Err(Error::CapExceeded {
                order: n,
                what: format!("{total} clause instances"),
            });
        }

        let mut fixed: Vec<Elem> = consts.values().copied().collect();
        fixed.extend(unit);
        fixed.sort_unstable();
        fixed.dedup();

        let mut leaf_binding = spec.binding.clone();
        if unit.is_none() {
            leaf_binding.unit = None;
        }

        Ok(Engine {
            spec,
            rules,
            instances: Vec::new(),
            watch: vec![Vec::new(); cells],
            trail: Vec::new(),
            tables: Tables {
                n,
                offset,
                arity,
                cells: vec![None; cells],
            },
            leaf_props,
            fixed,
            leaf_binding,
            carrier,
        })
    }

    /// Ground every rule; `false` if some instance fails with no cells set.
    fn seed(&mut self) -> bool {
        let n = self.spec.order;
        for (r, rule) in self.rules.iter().enumerate() {
            let k = rule.vars.len();
            for combo in (0..k).map(|_| 0..n).multi_cartesian_product() {
                let mut env = [0; 7];
                for (&v, &e) in rule.vars.iter().zip(&combo) {
                    env[v] = e;
                }
                match self.tables.status(rule, &env) {
                    Status::Holds => {}
                    Status::Violated => return false,
                    Status::Blocked(c) => {
                        self.watch[c].push(self.instances.len() as u32);
                        self.instances.push(Instance {
                            rule: r as u32,
                            env,
                        });
                    }
                }
            }
        }
        true
    }

    /// Re-evaluate instances waiting on `cell`; `false` on a violation.
    fn propagate(&mut self, cell: usize) -> bool {
        let waiting = std::mem::take(&mut self.watch[cell]);
        let mut ok = true;
        for &id in &waiting {
            let inst = &self.instances[id as usize];
            match self
                .tables
                .status(&self.rules[inst.rule as usize], &inst.env)
            {
                Status::Holds => {}
                Status::Violated => {
                    ok = false;
                    break;
                }
                Status::Blocked(c) => {
                    self.watch[c].push(id);
                    self.trail.push(c);
                }
            }
        }
        self.watch[cell] = waiting;
        ok
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().expect("trail entry");
            self.watch[c].pop();
        }
    }

    fn current_tables(&self) -> Vec<OpTable> {
        let n = self.tables.n;
        self.tables
            .offset
            .iter()
            .zip(&self.tables.arity)
            .map(|(&off, &a)| {
                let len = n.pow(a as u32);
                let entries = self.tables.cells[off..off + len]
                    .iter()
                    .map(|c| c.expect("filled"))
                    .collect();
                OpTable::new(a, n, entries).expect("cells in range")
            })
            .collect()
    }

    fn structure(&self, tables: &[OpTable]) -> Structure {
        let mut s = Structure::new("model", self.carrier.clone());
        for (op, t) in self.spec.signature.iter().zip(tables) {
            s.insert_op(op.name.clone(), t.clone())
                .expect("table matches carrier");
        }
        for (name, e) in &self.spec.pins {
            s.insert_const(name.clone(), *e).expect("pin in range");
        }
        s
    }

    fn leaf(&self, out: &mut dyn FnMut(Structure) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        let tables = self.current_tables();
        if self.spec.up_to_iso && !is_canonical_fixing(&tables, &self.fixed) {
            return Ok(ControlFlow::Continue(()));
        }
        let s = self.structure(&tables);
        for &p in &self.leaf_props {
            if !check_property(&s, p, &self.leaf_binding)?.holds() {
                return Ok(ControlFlow::Continue(()));
            }
        }
        Ok(out(s))
    }

    fn run(
        &mut self,
        cell: usize,
        out: &mut dyn FnMut(Structure) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if cell == self.tables.cells.len() {
            return self.leaf(out);
        }
        for v in 0..self.tables.n {
            self.tables.cells[cell] = Some(v);
            let mark = self.trail.len();
            let flow = if self.propagate(cell) {
                self.run(cell + 1, out)?
            } else {
                ControlFlow::Continue(())
            };
            self.undo(mark);
            if flow.is_break() {
                self.tables.cells[cell] = None;
                return Ok(flow);
            }
        }
        self.tables.cells[cell] = None;
        Ok(ControlFlow::Continue(()))
    }
}

/// Whether no permutation fixing every element of `fixed` gives a
/// lexicographically smaller list of tables.
pub fn is_canonical_fixing(tables: &[OpTable], fixed: &[Elem]) -> bool {
    let n = tables.first().map_or(0, OpTable::order);
    let own: Vec<Elem> = tables
        .iter()
        .flat_map(|t| t.entries().iter().copied())
        .collect();
    (0..n)
        .permutations(n)
        .filter(|p| fixed.iter().all(|&e| p[e] == e))
        .all(|p| {
            let other: Vec<Elem> = tables
                .iter()
                .flat_map(|t| t.permuted(&p).entries().to_vec())
                .collect();
            other >= own
        })
}

/// Feed each model to `out` in lexicographic order until it breaks.
pub fn for_each_model(
    spec: &EnumSpec,
    mut out: impl FnMut(Structure) -> ControlFlow<()>,
) -> Result<()> {
    let mut engine = Engine::new(spec)?;
    if !engine.seed() {
        return Ok(());
    }
    let _ = engine.run(0, &mut out)?;
    Ok(())
}

/// Every model, named `m1`, `m2`, ... in emission order.
pub fn enumerate(spec: &EnumSpec) -> Result<Vec<Structure>> {
    let mut all = Vec::new();
    for_each_model(spec, |mut s| {
        s.set_name(format!("m{}", all.len() + 1));
        all.push(s);
        ControlFlow::Continue(())
    })?;
    Ok(all)
}

pub fn count(spec: &EnumSpec) -> Result<usize> {
    let mut k = 0;
    for_each_model(spec, |_| {
        k += 1;
        ControlFlow::Continue(())
    })?;
    Ok(k)
}

/// Groups of order `n` up to isomorphism, identity at 0.
pub fn groups(n: usize) -> Result<Vec<OpTable>> {
    let spec = EnumSpec::new(n)
        .binary()
        .pin("l", 0)
        .properties([
            PropertyName::Associative,
            PropertyName::TwoSidedIdentity,
            PropertyName::LeftCancellative,
            PropertyName::RightCancellative,
        ])
        .up_to_iso(true);
    Ok(enumerate(&spec)?
        .into_iter()
        .map(|s| s.op("mul").expect("mul").clone())
        .collect())
}

/// Labelled inverse semigroups of order `n`.
pub fn inverse_semigroups(n: usize, up_to_iso: bool) -> Result<Vec<OpTable>> {
    let spec = EnumSpec::new(n)
        .binary()
        .property(PropertyName::Associative)
        .clause("x*x = x & y*y = y => x*y = y*x")?
        .property(PropertyName::InverseGroupoid)
        .up_to_iso(up_to_iso);
    Ok(enumerate(&spec)?
        .into_iter()
        .map(|s| s.op("mul").expect("mul").clone())
        .collect())
}

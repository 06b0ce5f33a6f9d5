//! Finite carriers, operation tables, and the structures built from them.
//!
//! Elements are dense indices `0..n`; names only exist at the I/O boundary
//! (see [`format`]).

pub mod format;

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// An element of a carrier, as an index into its name list.
pub type Elem = usize;

/// Largest order allowed for a table of arity 3 (64³ = 262144 entries).
pub const TERNARY_ORDER_CAP: usize = 64;

/// The ordered, duplicate-free list of element names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    names: Vec<String>,
}

impl Carrier {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidTable("carrier must be non-empty".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) || name.contains('#') {
                return Err(Error::InvalidTable(format!("bad element name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateElement {
                    line: 0,
                    col: 0,
                    name: name.clone(),
                });
            }
        }
        Ok(Carrier { names })
    }

    /// Carrier `0, 1, ..., n-1`.
    pub fn numbered(n: usize) -> Self {
        assert!(n > 0, "carrier must be non-empty");
        Carrier {
            names: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }
}

/// A total operation of arity 1, 2 or 3, stored flat in row-major order
/// (`a·n² + b·n + c` for arity 3).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    arity: usize,
    order: usize,
    entries: Vec<Elem>,
}

impl OpTable {
    pub fn new(arity: usize, order: usize, entries: Vec<Elem>) -> Result<Self> {
        if !(1..=3).contains(&arity) {
            return Err(Error::InvalidTable(format!("arity {arity} not in 1..=3")));
        }
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if arity == 3 && order > TERNARY_ORDER_CAP {
            return Err(Error::CapExceeded {
                order,
                what: "ternary tables".into(),
            });
        }
        let len = order.pow(arity as u32);
        if entries.len() != len {
            return Err(Error::InvalidTable(format!(
                "expected {len} entries, got {}",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        Ok(OpTable {
            arity,
            order,
            entries,
        })
    }

    pub fn unary(order: usize, f: impl Fn(Elem) -> Elem) -> Self {
        Self::new(1, order, (0..order).map(f).collect()).expect("unary table out of range")
    }

    pub fn binary(order: usize, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                entries.push(f(a, b));
            }
        }
        Self::new(2, order, entries).expect("binary table out of range")
    }

    pub fn ternary(order: usize, f: impl Fn(Elem, Elem, Elem) -> Elem) -> Self {
        let mut entries = Vec::with_capacity(order * order * order);
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    entries.push(f(a, b, c));
                }
            }
        }
        Self::new(3, order, entries).expect("ternary table out of range")
    }

    pub fn identity_map(order: usize) -> Self {
        Self::unary(order, |x| x)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get1(&self, a: Elem) -> Elem {
        debug_assert_eq!(self.arity, 1);
        self.entries[a]
    }

    #[inline]
    pub fn get2(&self, a: Elem, b: Elem) -> Elem {
        debug_assert_eq!(self.arity, 2);
        self.entries[a * self.order + b]
    }

    #[inline]
    pub fn get3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        debug_assert_eq!(self.arity, 3);
        self.entries[(a * self.order + b) * self.order + c]
    }

    /// Lookup with run-time arity; callers must pass exactly `arity` in-range args.
    #[inline]
    pub fn get(&self, args: &[Elem]) -> Elem {
        let idx = args.iter().fold(0, |acc, &a| acc * self.order + a);
        self.entries[idx]
    }

    /// Relabel through a bijection: the result maps `p(a), p(b)` to `p(a·b)`.
    pub fn permuted(&self, perm: &[Elem]) -> OpTable {
        let n = self.order;
        let mut entries = vec![0; self.entries.len()];
        for (idx, &v) in self.entries.iter().enumerate() {
            let mut rest = idx;
            let mut target = 0;
            let mut scale = 1;
            for _ in 0..self.arity {
                target += perm[rest % n] * scale;
                rest /= n;
                scale *= n;
            }
            entries[target] = perm[v];
        }
        OpTable {
            arity: self.arity,
            order: n,
            entries,
        }
    }
}

/// A finite algebra: a carrier, named operation tables and named constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    name: String,
    carrier: Carrier,
    ops: BTreeMap<String, OpTable>,
    consts: BTreeMap<String, Elem>,
}

impl Structure {
    pub fn new(name: impl Into<String>, carrier: Carrier) -> Self {
        Structure {
            name: name.into(),
            carrier,
            ops: BTreeMap::new(),
            consts: BTreeMap::new(),
        }
    }

    /// A numbered carrier with a single binary operation `mul`.
    pub fn from_binary(name: impl Into<String>, mul: OpTable) -> Self {
        let n = mul.order();
        let mut s = Structure::new(name, Carrier::numbered(n));
        s.insert_op("mul", mul).expect("binary table");
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn ops(&self) -> &BTreeMap<String, OpTable> {
        &self.ops
    }

    pub fn consts(&self) -> &BTreeMap<String, Elem> {
        &self.consts
    }

    pub fn op(&self, name: &str) -> Result<&OpTable> {
        self.ops
            .get(name)
            .ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    pub fn constant(&self, name: &str) -> Option<Elem> {
        self.consts.get(name).copied()
    }

    pub fn insert_op(&mut self, name: impl Into<String>, table: OpTable) -> Result<()> {
        if table.order() != self.order() {
            return Err(Error::InvalidTable(format!(
                "table of order {} on a carrier of order {}",
                table.order(),
                self.order()
            )));
        }
        self.ops.insert(name.into(), table);
        Ok(())
    }

    pub fn insert_const(&mut self, name: impl Into<String>, e: Elem) -> Result<()> {
        if e >= self.order() {
            return Err(Error::IndexOutOfRange {
                index: e,
                order: self.order(),
            });
        }
        self.consts.insert(name.into(), e);
        Ok(())
    }

    /// Builder form of [`Structure::insert_op`].
    pub fn with_op(mut self, name: impl Into<String>, table: OpTable) -> Result<Self> {
        self.insert_op(name, table)?;
        Ok(self)
    }

    pub fn with_const(mut self, name: impl Into<String>, e: Elem) -> Result<Self> {
        self.insert_const(name, e)?;
        Ok(self)
    }

    /// Resolve an element token: a constant name first, then an element name.
    pub fn resolve(&self, token: &str) -> Option<Elem> {
        self.constant(token)
            .or_else(|| self.carrier.index_of(token))
    }

    pub fn eval(&self, op: &str, args: &[Elem]) -> Result<Elem> {
        let table = self.op(op)?;
        if args.len() != table.arity() {
            return Err(Error::ArityMismatch {
                op: op.to_string(),
                expected: table.arity(),
                got: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: self.order(),
            });
        }
        Ok(table.get(args))
    }

    /// Relabel every table and constant through `perm` (element `i` becomes `perm[i]`).
    /// Element names follow their elements.
    pub fn permuted(&self, perm: &[Elem]) -> Structure {
        let n = self.order();
        let mut names = vec![String::new(); n];
        for (i, name) in self.carrier.names().iter().enumerate() {
            names[perm[i]] = name.clone();
        }
        Structure {
            name: self.name.clone(),
            carrier: Carrier { names },
            ops: self
                .ops
                .iter()
                .map(|(k, t)| (k.clone(), t.permuted(perm)))
                .collect(),
            consts: self
                .consts
                .iter()
                .map(|(k, &e)| (k.clone(), perm[e]))
                .collect(),
        }
    }
}

/// Name used for the element added by [`adjoin_identity`].
const ADJOINED: &str = "1";

/// Adjoin a new two-sided identity to the binary operation `mul_name`.
///
/// The new element is appended (index `n`), named `1` (primed until unique),
/// and designated by the constant `1`. Only the extended binary table and the
/// existing constants are carried over.
pub fn adjoin_identity(s: &Structure, mul_name: &str) -> Result<Structure> {
    let mul = s.op(mul_name)?;
    if mul.arity() != 2 {
        return Err(Error::ArityMismatch {
            op: mul_name.into(),
            expected: 2,
            got: mul.arity(),
        });
    }
    let n = s.order();
    let mut fresh = ADJOINED.to_string();
    while s.carrier().index_of(&fresh).is_some() {
        fresh.push('\'');
    }
    let mut names = s.carrier().names().to_vec();
    names.push(fresh);
    let table = OpTable::binary(n + 1, |a, b| match (a == n, b == n) {
        (true, _) => b,
        (_, true) => a,
        _ => mul.get2(a, b),
    });
    let mut out = Structure::new(format!("{}_1", s.name()), Carrier::new(names)?);
    out.insert_op(mul_name, table)?;
    for (k, &e) in s.consts() {
        if k != ADJOINED {
            out.insert_const(k.clone(), e)?;
        }
    }
    out.insert_const(ADJOINED, n)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_zero(n: usize) -> Structure {
        Structure::from_binary("lz", OpTable::binary(n, |a, _| a))
    }

    #[test]
    fn table_validation() {
        assert!(OpTable::new(2, 2, vec![0, 1, 1]).is_err());
        assert_eq!(
            OpTable::new(2, 2, vec![0, 1, 1, 2]),
            Err(Error::IndexOutOfRange { index: 2, order: 2 })
        );
        assert!(OpTable::new(4, 2, vec![0; 16]).is_err());
        assert!(matches!(
            OpTable::new(3, 65, vec![0; 65 * 65 * 65]),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn eval_errors() {
        let s = left_zero(2);
        assert_eq!(s.eval("mul", &[1, 0]), Ok(1));
        assert!(matches!(s.eval("t", &[0, 0, 0]), Err(Error::UnknownOp(_))));
        assert!(matches!(
            s.eval("mul", &[0]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            s.eval("mul", &[0, 2]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn order_one_evaluates_to_zero() {
        let s = Structure::from_binary("one", OpTable::binary(1, |_, _| 0))
            .with_op("t", OpTable::ternary(1, |_, _, _| 0))
            .unwrap()
            .with_op("star", OpTable::identity_map(1))
            .unwrap();
        assert_eq!(s.eval("mul", &[0, 0]), Ok(0));
        assert_eq!(s.eval("t", &[0, 0, 0]), Ok(0));
        assert_eq!(s.eval("star", &[0]), Ok(0));
    }

    #[test]
    fn permuted_table_is_isomorphic_image() {
        let t = OpTable::binary(3, |a, b| (a + 2 * b) % 3);
        let perm = [2, 0, 1];
        let p = t.permuted(&perm);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(p.get2(perm[a], perm[b]), perm[t.get2(a, b)]);
            }
        }
        let t3 = OpTable::ternary(3, |a, b, c| (a + b * c) % 3);
        let p3 = t3.permuted(&perm);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(p3.get3(perm[a], perm[b], perm[c]), perm[t3.get3(a, b, c)]);
                }
            }
        }
    }

    #[test]
    fn adjoin_identity_to_left_zero() {
        let one = adjoin_identity(&left_zero(1), "mul").unwrap();
        assert_eq!(one.order(), 2);
        assert_eq!(one.op("mul").unwrap().entries(), &[0, 0, 0, 1]);

        let s = adjoin_identity(&left_zero(2), "mul").unwrap();
        let mul = s.op("mul").unwrap();
        let id = s.constant("1").unwrap();
        assert_eq!(id, 2);
        let two_sided: Vec<_> = (0..3)
            .filter(|&e| (0..3).all(|x| mul.get2(e, x) == x && mul.get2(x, e) == x))
            .collect();
        assert_eq!(two_sided, vec![2]);
        assert_eq!(mul.get2(0, 1), 0);
        assert_eq!(mul.get2(1, 0), 1);
    }

    #[test]
    fn adjoin_identity_picks_fresh_name() {
        let s = Structure::new("s", Carrier::new(["1", "a"]).unwrap())
            .with_op("mul", OpTable::binary(2, |a, _| a))
            .unwrap();
        let t = adjoin_identity(&s, "mul").unwrap();
        assert_eq!(t.carrier().name(2), "1'");
        assert_eq!(t.resolve("1"), Some(2));
    }
}

//! Isomorphism and automorphism search by backtracking over element images,
//! pruned by per-element invariants.

use std::fmt;

use itertools::Itertools;

use crate::algebra::{Carrier, Elem, OpTable, Structure};
use crate::clause::{Binding, Clause, Compiled};
use crate::construct::natural_ternary;
use crate::error::{Error, Result};

/// `forward[i]` is the image of element `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bijection {
    pub forward: Vec<Elem>,
}

impl Bijection {
    pub fn identity(n: usize) -> Self {
        Bijection {
            forward: (0..n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Bijection {
        let mut back = vec![0; self.forward.len()];
        for (i, &j) in self.forward.iter().enumerate() {
            back[j] = i;
        }
        Bijection { forward: back }
    }

    /// `a->p b->q ...` with element names from both sides.
    pub fn display_with(&self, from: &Carrier, to: &Carrier) -> String {
        self.forward
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", from.name(i), to.name(j)))
            .join(" ")
    }

    pub fn as_unary(&self) -> OpTable {
        OpTable::new(1, self.forward.len(), self.forward.clone()).expect("permutation in range")
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self
            .forward
            .iter()
            .enumerate()
            .map(|(i, j)| format!("{i}->{j}"))
            .join(" ");
        f.write_str(&text)
    }
}

/// Which operations an isomorphism must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoKind {
    Binary,
    /// The bound ternary operation, or the natural ternary operation of the
    /// bound product when the structure has no ternary operation.
    Ternary,
    BinaryWithUnary,
}

impl std::str::FromStr for IsoKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(IsoKind::Binary),
            "ternary" => Ok(IsoKind::Ternary),
            "binary-with-unary" => Ok(IsoKind::BinaryWithUnary),
            _ => Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("unknown iso kind `{s}`"),
            }),
        }
    }
}

/// The tables of `s` that `kind` compares, in a fixed order.
pub fn tables_for(s: &Structure, kind: IsoKind, binding: &Binding) -> Result<Vec<OpTable>> {
    let arity = |name: &str, want: usize| -> Result<OpTable> {
        let t = s.op(name)?;
        if t.arity() != want {
            return Err(Error::ArityMismatch {
                op: name.into(),
                expected: want,
                got: t.arity(),
            });
        }
        Ok(t.clone())
    };
    match kind {
        IsoKind::Binary => Ok(vec![arity(&binding.mul, 2)?]),
        IsoKind::Ternary => match s.ops().get(&binding.ternary) {
            Some(_) => Ok(vec![arity(&binding.ternary, 3)?]),
            None => Ok(vec![natural_ternary(&arity(&binding.mul, 2)?)]),
        },
        IsoKind::BinaryWithUnary => Ok(vec![arity(&binding.mul, 2)?, arity(&binding.prime, 1)?]),
    }
}

/// Per-element invariants preserved by every isomorphism.
fn invariants(tables: &[OpTable]) -> Vec<Vec<usize>> {
    let n = tables.first().map_or(0, OpTable::order);
    let mut inv = vec![Vec::new(); n];
    for t in tables {
        let k = t.arity();
        let mut hits = vec![0usize; n];
        let mut fixed = vec![vec![0usize; n]; k];
        for (idx, &v) in t.entries().iter().enumerate() {
            hits[v] += 1;
            let mut rest = idx;
            for p in (0..k).rev() {
                if rest % n == v {
                    fixed[p][v] += 1;
                }
                rest /= n;
            }
        }
        for x in 0..n {
            let diag = t.get(&vec![x; k]);
            inv[x].push(usize::from(diag == x));
            inv[x].push(usize::from(t.get(&vec![diag; k]) == diag));
            inv[x].push(hits[x]);
            inv[x].extend(fixed.iter().map(|f| f[x]));
            if k == 2 {
                let mut row: Vec<usize> = (0..n).map(|y| t.get2(x, y)).map(|v| hits[v]).collect();
                let mut col: Vec<usize> = (0..n).map(|y| t.get2(y, x)).map(|v| hits[v]).collect();
                row.sort_unstable();
                col.sort_unstable();
                inv[x].extend(row);
                inv[x].extend(col);
            }
        }
    }
    inv
}

struct Search<'a> {
    left: &'a [OpTable],
    right: &'a [OpTable],
    n: usize,
    allowed: Vec<Vec<Elem>>,
    forward: Vec<Option<Elem>>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Every tuple over `0..=k`, checked after `k` is assigned. Tuples not
    /// containing `k` are rechecked because their result may be `k`.
    fn consistent(&self, k: Elem) -> bool {
        let image = |x: Elem| self.forward[x];
        for (lt, rt) in self.left.iter().zip(self.right) {
            let a = lt.arity();
            let mut args = vec![0; a];
            let mut mapped = vec![0; a];
            let total = (k + 1).pow(a as u32);
            for code in 0..total {
                let mut c = code;
                for slot in args.iter_mut().rev() {
                    *slot = c % (k + 1);
                    c /= k + 1;
                }
                for (m, &x) in mapped.iter_mut().zip(&args) {
                    *m = image(x).expect("assigned");
                }
                let want = rt.get(&mapped);
                match image(lt.get(&args)) {
                    Some(v) if v != want => return false,
                    None if self.used[want] => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn run(&mut self, k: Elem, out: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        if k == self.n {
            let f: Vec<Elem> = self.forward.iter().map(|x| x.expect("complete")).collect();
            return out(&f);
        }
        for i in 0..self.allowed[k].len() {
            let v = self.allowed[k][i];
            if self.used[v] {
                continue;
            }
            self.forward[k] = Some(v);
            self.used[v] = true;
            let stop = self.consistent(k) && self.run(k + 1, out);
            self.used[v] = false;
            self.forward[k] = None;
            if stop {
                return true;
            }
        }
        false
    }
}

fn compatible(left: &[OpTable], right: &[OpTable]) -> bool {
    left.len() == right.len()
        && left
            .iter()
            .zip(right)
            .all(|(a, b)| a.arity() == b.arity() && a.order() == b.order())
}

/// Visit isomorphisms `left -> right` in lexicographic order of their
/// forward vectors until `out` returns `true`.
fn search(left: &[OpTable], right: &[OpTable], out: &mut dyn FnMut(&[Elem]) -> bool) {
    if !compatible(left, right) {
        return;
    }
    let n = left.first().map_or(0, OpTable::order);
    let (li, ri) = (invariants(left), invariants(right));
    let allowed = (0..n)
        .map(|x| (0..n).filter(|&y| li[x] == ri[y]).collect())
        .collect();
    let mut s = Search {
        left,
        right,
        n,
        allowed,
        forward: vec![None; n],
        used: vec![false; n],
    };
    s.run(0, out);
}

/// Whether `f` maps every table of `left` onto the matching table of `right`.
pub fn is_isomorphism(left: &[OpTable], right: &[OpTable], f: &Bijection) -> bool {
    compatible(left, right)
        && left
            .iter()
            .zip(right)
            .all(|(a, b)| a.permuted(&f.forward) == *b)
}

/// The lexicographically least isomorphism between two table lists.
pub fn iso_tables(left: &[OpTable], right: &[OpTable]) -> Option<Bijection> {
    let mut found = None;
    search(left, right, &mut |f| {
        found = Some(Bijection {
            forward: f.to_vec(),
        });
        true
    });
    if let Some(f) = &found {
        assert!(
            is_isomorphism(left, right, f),
            "search returned a non-isomorphism"
        );
    }
    found
}

/// The lexicographically least isomorphism between the operations `kind`
/// selects, or `None`. Structures of different orders are never isomorphic.
pub fn find_isomorphism(
    left: &Structure,
    right: &Structure,
    kind: IsoKind,
    binding: &Binding,
) -> Result<Option<Bijection>> {
    if left.order() != right.order() {
        return Ok(None);
    }
    Ok(iso_tables(
        &tables_for(left, kind, binding)?,
        &tables_for(right, kind, binding)?,
    ))
}

/// All automorphisms of a table list, in lexicographic order.
pub fn automorphism_tables(tables: &[OpTable]) -> Vec<Bijection> {
    let mut all = Vec::new();
    search(tables, tables, &mut |f| {
        all.push(Bijection {
            forward: f.to_vec(),
        });
        false
    });
    all
}

/// Automorphisms of the operations `kind` selects. With a constraint, only
/// automorphisms `Ψ` for which the clause holds with `'` read as `Ψ` are kept.
pub fn automorphisms(
    s: &Structure,
    kind: IsoKind,
    binding: &Binding,
    constraint: Option<&Clause>,
) -> Result<Vec<Bijection>> {
    let all = automorphism_tables(&tables_for(s, kind, binding)?);
    let Some(clause) = constraint else {
        return Ok(all);
    };
    let mut kept = Vec::new();
    for f in all {
        let mut with_psi = s.clone();
        with_psi.insert_op(binding.prime.clone(), f.as_unary())?;
        if Compiled::new(&with_psi, clause, binding, &[])?
            .first_failure()
            .is_none()
        {
            kept.push(f);
        }
    }
    Ok(kept)
}

/// The lexicographically least relabelling of a table list under all
/// permutations of the carrier, with the permutation reaching it.
pub fn canonical_form(tables: &[OpTable]) -> (Vec<OpTable>, Bijection) {
    let n = tables.first().map_or(0, OpTable::order);
    let key = |ts: &[OpTable]| {
        ts.iter()
            .flat_map(|t| t.entries().iter().copied())
            .collect::<Vec<_>>()
    };
    let mut best: Option<(Vec<Elem>, Vec<OpTable>, Vec<Elem>)> = None;
    for p in (0..n).permutations(n) {
        let image: Vec<OpTable> = tables.iter().map(|t| t.permuted(&p)).collect();
        let k = key(&image);
        if best.as_ref().is_none_or(|(bk, _, _)| k < *bk) {
            best = Some((k, image, p));
        }
    }
    let (_, ts, p) = best.unwrap_or_default();
    (ts, Bijection { forward: p })
}

/// Whether no relabelling gives a lexicographically smaller table list.
pub fn is_canonical(tables: &[OpTable]) -> bool {
    let n = tables.first().map_or(0, OpTable::order);
    let own: Vec<Elem> = tables
        .iter()
        .flat_map(|t| t.entries().iter().copied())
        .collect();
    (0..n).permutations(n).all(|p| {
        let other: Vec<Elem> = tables
            .iter()
            .flat_map(|t| t.permuted(&p).entries().to_vec())
            .collect();
        other >= own
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::parse_structure;
    use crate::clause::parse_clause;
    use crate::construct::twin_natural_pair;

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

    fn brute(left: &[OpTable], right: &[OpTable]) -> Option<Bijection> {
        let n = left[0].order();
        (0..n)
            .permutations(n)
            .map(|p| Bijection { forward: p })
            .find(|f| is_isomorphism(left, right, f))
    }

    #[test]
    fn rm_unit_to_itself() {
        let s = parse_structure(RM_UNIT).unwrap();
        let f = find_isomorphism(&s, &s, IsoKind::Binary, &Binding::default())
            .unwrap()
            .unwrap();
        assert!(f.is_identity());
        assert_eq!(
            f.display_with(s.carrier(), s.carrier()),
            "a->a b->b c->c l->l"
        );
    }

    #[test]
    fn twin_natural_pair_kinds() {
        let (s, t) = twin_natural_pair(2).unwrap();
        let b = Binding::default();
        assert_eq!(find_isomorphism(&s, &t, IsoKind::Binary, &b).unwrap(), None);
        let f = find_isomorphism(&s, &t, IsoKind::Ternary, &b)
            .unwrap()
            .unwrap();
        assert!(f.is_identity());
    }

    #[test]
    fn automorphism_sets() {
        let z3 = Structure::from_binary("z3", OpTable::binary(3, |x, y| (x + y) % 3));
        let auts = automorphisms(&z3, IsoKind::Binary, &Binding::default(), None).unwrap();
        assert_eq!(
            auts,
            vec![
                Bijection::identity(3),
                Bijection {
                    forward: vec![0, 2, 1]
                }
            ]
        );
        let one = Structure::from_binary("one", OpTable::binary(1, |_, _| 0));
        assert_eq!(
            automorphisms(&one, IsoKind::Binary, &Binding::default(), None)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn rm_unit_constrained_automorphism_is_right_multiplication_by_l() {
        let s = parse_structure(RM_UNIT).unwrap();
        let c = parse_clause("x' * y = y' * x").unwrap();
        let auts = automorphisms(&s, IsoKind::Binary, &Binding::default(), Some(&c)).unwrap();
        let l = 3;
        let mul = s.op("mul").unwrap();
        let xl: Vec<Elem> = (0..4).map(|x| mul.get2(x, l)).collect();
        assert_eq!(auts, vec![Bijection { forward: xl }]);
    }

    #[test]
    fn agrees_with_brute_force_on_small_tables() {
        // every binary table of order 2, and a spread of order-3 tables
        for code in 0..16usize {
            let a = OpTable::new(2, 2, (0..4).map(|i| (code >> i) & 1).collect()).unwrap();
            for code2 in 0..16usize {
                let b = OpTable::new(2, 2, (0..4).map(|i| (code2 >> i) & 1).collect()).unwrap();
                let (l, r) = (vec![a.clone()], vec![b]);
                assert_eq!(iso_tables(&l, &r).is_some(), brute(&l, &r).is_some());
            }
        }
        for code in (0..19683usize).step_by(97) {
            let a = OpTable::binary(3, |x, y| code / 3usize.pow((3 * x + y) as u32) % 3);
            for perm in (0..3).permutations(3) {
                let b = a.permuted(&perm);
                let (l, r) = (vec![a.clone()], vec![b]);
                assert_eq!(iso_tables(&l, &r), brute(&l, &r));
            }
        }
    }

    #[test]
    fn canonical_forms() {
        let t = OpTable::binary(3, |x, y| (x + 2 * y + 1) % 3);
        let (c, p) = canonical_form(std::slice::from_ref(&t));
        assert_eq!(t.permuted(&p.forward), c[0]);
        assert!(is_canonical(&c));
        for perm in (0..3).permutations(3) {
            assert_eq!(canonical_form(&[t.permuted(&perm)]).0, c);
        }
    }
}

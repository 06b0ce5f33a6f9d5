use itertools::Itertools;

use super::{first_nonassociative, inverse_cert};
use crate::algebra::{Elem, OpTable};
use crate::error::{Error, Result};

/// One group of a semilattice of groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// The group's identity, an idempotent of the whole semigroup.
    pub identity: Elem,
    pub elements: Vec<Elem>,
    /// Product restricted to `elements`, indexed by position in `elements`.
    pub table: OpTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordDecomposition {
    /// `component_of[a] = a⁻¹a`, the identity of the group containing `a`.
    pub component_of: Vec<Elem>,
    /// Components ordered by identity.
    pub components: Vec<Component>,
}

/// Split a Clifford semigroup into its groups, or report why it is not one.
pub fn clifford_decompose(mul: &OpTable) -> Result<CliffordDecomposition> {
    if let Some((a, b, c)) = first_nonassociative(mul) {
        return Err(Error::NotClifford(format!(
            "not associative at ({a},{b},{c})"
        )));
    }
    let cert = inverse_cert(mul).map_err(|e| Error::NotClifford(e.to_string()))?;
    let n = mul.order();
    for &e in &cert.idempotents {
        if let Some(a) = (0..n).find(|&a| mul.get2(e, a) != mul.get2(a, e)) {
            return Err(Error::NotClifford(format!(
                "idempotent {e} does not commute with {a}"
            )));
        }
    }
    let component_of: Vec<Elem> = (0..n).map(|a| mul.get2(cert.inv.get1(a), a)).collect();
    let components = cert
        .idempotents
        .iter()
        .map(|&e| {
            let elements: Vec<Elem> = (0..n).filter(|&a| component_of[a] == e).collect();
            let pos = |x: Elem| {
                elements
                    .iter()
                    .position(|&y| y == x)
                    .expect("closed component")
            };
            let table = OpTable::binary(elements.len(), |i, j| {
                pos(mul.get2(elements[i], elements[j]))
            });
            Component {
                identity: e,
                elements: elements.clone(),
                table,
            }
        })
        .collect();
    Ok(CliffordDecomposition {
        component_of,
        components,
    })
}

fn is_automorphism(mul: &OpTable, f: &[Elem]) -> bool {
    let n = mul.order();
    (0..n).all(|x| (0..n).all(|y| f[mul.get2(x, y)] == mul.get2(f[x], f[y])))
}

/// Involutive automorphisms of `mul` fixing every idempotent, in
/// lexicographic order of their tables.
pub fn admissible_automorphisms(mul: &OpTable) -> Vec<OpTable> {
    let n = mul.order();
    let idem: Vec<Elem> = (0..n).filter(|&x| mul.get2(x, x) == x).collect();
    (0..n)
        .permutations(n)
        .filter(|f| idem.iter().all(|&e| f[e] == e))
        .filter(|f| (0..n).all(|x| f[f[x]] == x))
        .filter(|f| is_automorphism(mul, f))
        .map(|f| OpTable::new(1, n, f).expect("permutation in range"))
        .collect()
}

/// `x·y = α(x) * y` for a Clifford semigroup `*` and an involutive,
/// idempotent-fixing automorphism `α`.
pub fn alpha_determined(mul: &OpTable, alpha: &OpTable) -> Result<OpTable> {
    let n = mul.order();
    if alpha.arity() != 1 || alpha.order() != n {
        return Err(Error::InvalidTable(format!(
            "alpha must be a unary table of order {n}"
        )));
    }
    clifford_decompose(mul).map_err(|e| Error::Precondition(e.to_string()))?;
    let f = alpha.entries();
    if let Some(x) = (0..n).find(|&x| f[f[x]] != x) {
        return Err(Error::Precondition(format!(
            "alpha is not involutive at {x}"
        )));
    }
    if let Some(e) = (0..n).find(|&e| mul.get2(e, e) == e && f[e] != e) {
        return Err(Error::Precondition(format!(
            "alpha moves the idempotent {e}"
        )));
    }
    if !is_automorphism(mul, f) {
        return Err(Error::Precondition("alpha is not an automorphism".into()));
    }
    Ok(OpTable::binary(n, |x, y| mul.get2(f[x], y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::standard_ternary;

    fn zn(n: usize) -> OpTable {
        OpTable::binary(n, |x, y| (x + y) % n)
    }

    /// `0` is a zero; `{1, 2}` is Z2 with identity 1.
    fn z2_with_zero() -> OpTable {
        OpTable::binary(3, |x, y| match (x, y) {
            (0, _) | (_, 0) => 0,
            (a, b) => 1 + ((a - 1) + (b - 1)) % 2,
        })
    }

    /// `0, e11, e12, e21, e22` with `eij * ejk = eik`.
    fn brandt5() -> OpTable {
        let idx = [(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)];
        OpTable::binary(5, |x, y| {
            let ((i, j), (k, l)) = (idx[x], idx[y]);
            if x == 0 || y == 0 || j != k {
                0
            } else {
                idx.iter().position(|&p| p == (i, l)).unwrap()
            }
        })
    }

    #[test]
    fn decompositions() {
        let d = clifford_decompose(&zn(3)).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.component_of, vec![0, 0, 0]);
        let d = clifford_decompose(&z2_with_zero()).unwrap();
        assert_eq!(d.component_of, vec![0, 1, 1]);
        let sizes: Vec<usize> = d.components.iter().map(|c| c.elements.len()).collect();
        assert_eq!(sizes, vec![1, 2]);
        assert_eq!(d.components[1].table, zn(2));
        assert!(matches!(
            clifford_decompose(&brandt5()),
            Err(Error::NotClifford(_))
        ));
    }

    #[test]
    fn z3_negation() {
        let alpha = OpTable::unary(3, |x| (3 - x) % 3);
        assert_eq!(
            admissible_automorphisms(&zn(3)),
            vec![OpTable::identity_map(3), alpha.clone()]
        );
        let s = alpha_determined(&zn(3), &alpha).unwrap();
        assert_eq!(s, OpTable::binary(3, |x, y| (y + 3 - x) % 3));
        // standard ternary of S(alpha) is a*b⁻¹*c in Z3
        assert_eq!(
            standard_ternary(&s).unwrap(),
            OpTable::ternary(3, |a, b, c| (a + 6 - b + c) % 3)
        );
    }

    #[test]
    fn identity_alpha_gives_back_the_semigroup() {
        let m = z2_with_zero();
        assert_eq!(admissible_automorphisms(&m), vec![OpTable::identity_map(3)]);
        assert_eq!(alpha_determined(&m, &OpTable::identity_map(3)).unwrap(), m);
    }

    #[test]
    fn alpha_rejections() {
        let swap = OpTable::unary(3, |x| [1, 0, 2][x]);
        assert!(matches!(
            alpha_determined(&zn(3), &swap),
            Err(Error::Precondition(_))
        ));
        let id = OpTable::identity_map(5);
        assert!(matches!(
            alpha_determined(&brandt5(), &id),
            Err(Error::Precondition(_))
        ));
    }
}

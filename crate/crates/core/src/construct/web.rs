//! Table maps between groups, heaps, Ward quasigroups, and the ternary
//! operations of Ward quasigroups.

use super::{numbered_binary, numbered_ternary, require};
use crate::algebra::{Elem, OpTable};
use crate::classify::{first_failure, PropertyName};
use crate::clause::Binding;
use crate::error::{Error, Result};

/// Identity and inverses of a group table; fails unless the table is a group.
pub fn group_identity_and_inverses(mul: &OpTable) -> Result<(Elem, Vec<Elem>)> {
    let n = mul.order();
    let m = |a, b| mul.get2(a, b);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(Error::Precondition(format!(
                        "not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
        .ok_or_else(|| Error::Precondition("no two-sided identity".into()))?;
    let inv = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| m(x, y) == e && m(y, x) == e)
                .ok_or_else(|| Error::Precondition(format!("element {x} has no inverse")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((e, inv))
}

/// The only idempotent of `mul`, or [`Error::NoUniqueIdempotent`].
pub fn unique_idempotent(mul: &OpTable) -> Result<Elem> {
    let idem: Vec<Elem> = (0..mul.order()).filter(|&x| mul.get2(x, x) == x).collect();
    match idem[..] {
        [e] => Ok(e),
        _ => Err(Error::NoUniqueIdempotent(idem.len())),
    }
}

fn require_heap(t: &OpTable) -> Result<()> {
    require(
        &numbered_ternary(t),
        &Binding::default(),
        &[PropertyName::Heap],
        "ternary operation",
    )
}

fn require_wq(w: &OpTable) -> Result<()> {
    require(
        &numbered_binary(w),
        &Binding::default(),
        &[PropertyName::WardQuasigroup],
        "groupoid",
    )
}

fn in_range(e: Elem, t: &OpTable) -> Result<()> {
    if e < t.order() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: e,
            order: t.order(),
        })
    }
}

fn post(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Postcondition(what.to_string()))
    }
}

fn is_heap(t: &OpTable) -> bool {
    require_heap(t).is_ok()
}

fn is_wq(w: &OpTable) -> bool {
    require_wq(w).is_ok()
}

fn is_group(g: &OpTable) -> bool {
    group_identity_and_inverses(g).is_ok()
}

/// Group to heap: `{xyz} = x*y⁻¹*z`.
pub fn psi(g: &OpTable) -> Result<OpTable> {
    let (_, inv) = group_identity_and_inverses(g)?;
    let out = OpTable::ternary(g.order(), |x, y, z| g.get2(g.get2(x, inv[y]), z));
    if cfg!(debug_assertions) {
        post(is_heap(&out), "psi output is not a heap")?;
    }
    Ok(out)
}

/// Heap to group at `e`: `x□y = [x e y]`.
pub fn omega(h: &OpTable, e: Elem) -> Result<OpTable> {
    in_range(e, h)?;
    require_heap(h)?;
    let out = OpTable::binary(h.order(), |x, y| h.get3(x, e, y));
    if cfg!(debug_assertions) {
        post(is_group(&out), "omega output is not a group")?;
    }
    Ok(out)
}

/// Heap to Ward quasigroup at `e`: `x□y = [x y e]`.
pub fn pi_map(h: &OpTable, e: Elem) -> Result<OpTable> {
    in_range(e, h)?;
    require_heap(h)?;
    let out = OpTable::binary(h.order(), |x, y| h.get3(x, y, e));
    if cfg!(debug_assertions) {
        post(is_wq(&out), "pi-map output is not a Ward quasigroup")?;
    }
    Ok(out)
}

/// Ward quasigroup to heap: `{xyz} = (x*y)*(e*z)` with `e` the idempotent.
pub fn lambda(w: &OpTable) -> Result<OpTable> {
    let e = unique_idempotent(w)?;
    require_wq(w)?;
    let out = OpTable::ternary(w.order(), |x, y, z| w.get2(w.get2(x, y), w.get2(e, z)));
    if cfg!(debug_assertions) {
        post(is_heap(&out), "lambda output is not a heap")?;
    }
    Ok(out)
}

/// Ward quasigroup to group: `x∘y = x*(e*y)` with `e` the idempotent.
pub fn gamma_wq(w: &OpTable) -> Result<OpTable> {
    let e = unique_idempotent(w)?;
    require_wq(w)?;
    let out = OpTable::binary(w.order(), |x, y| w.get2(x, w.get2(e, y)));
    if cfg!(debug_assertions) {
        post(is_group(&out), "gamma-wq output is not a group")?;
    }
    Ok(out)
}

/// Group to Ward quasigroup: `x*y = x·y⁻¹`.
pub fn phi_g(g: &OpTable) -> Result<OpTable> {
    let (_, inv) = group_identity_and_inverses(g)?;
    let out = OpTable::binary(g.order(), |x, y| g.get2(x, inv[y]));
    if cfg!(debug_assertions) {
        post(is_wq(&out), "phi-g output is not a Ward quasigroup")?;
    }
    Ok(out)
}

/// Group to the natural ternary operation of a Ward quasigroup:
/// `[xyz] = z⁻¹·(y⁻¹·x)`.
pub fn theta(g: &OpTable) -> Result<OpTable> {
    let (_, inv) = group_identity_and_inverses(g)?;
    let out = OpTable::ternary(g.order(), |x, y, z| g.get2(inv[z], g.get2(inv[y], x)));
    if cfg!(debug_assertions) {
        post(
            nwq_element(&out).is_ok(),
            "theta output has no Ward element",
        )?;
    }
    Ok(out)
}

const NWQ: [&str; 5] = [
    "[x x l] = l",
    "[x y z] = [[x y l] z l]",
    "[x y z] = [x [z [l y l] l] l]",
    "[x y l] = [x z l] => y = z",
    "[x y l] = [w y l] => x = w",
];

fn nwq_holds(t: &OpTable, e: Elem) -> Result<bool> {
    Ok(first_failure(&numbered_ternary(t), &NWQ, &Binding::default(), Some(e))?.is_none())
}

/// Smallest `e` for which `t` is the natural ternary operation of a Ward
/// quasigroup with right unit `e`.
pub fn nwq_element(t: &OpTable) -> Result<Elem> {
    for e in 0..t.order() {
        if nwq_holds(t, e)? {
            return Ok(e);
        }
    }
    Err(Error::Precondition(
        "not the natural ternary operation of a Ward quasigroup for any element".into(),
    ))
}

fn resolve_nwq(t: &OpTable, e: Option<Elem>) -> Result<Elem> {
    match e {
        None => nwq_element(t),
        Some(e) => {
            in_range(e, t)?;
            if nwq_holds(t, e)? {
                Ok(e)
            } else {
                Err(Error::Precondition(format!(
                    "element {e} fails the Ward conditions"
                )))
            }
        }
    }
}

/// Ward-quasigroup ternary to group: `x⊏y = [y [e x e] e]`.
pub fn sigma(t: &OpTable, e: Option<Elem>) -> Result<OpTable> {
    let e = resolve_nwq(t, e)?;
    let out = OpTable::binary(t.order(), |x, y| t.get3(y, t.get3(e, x, e), e));
    if cfg!(debug_assertions) {
        post(is_group(&out), "sigma output is not a group")?;
    }
    Ok(out)
}

/// Ward-quasigroup ternary to heap: `[[x y e] [e z e] e]`.
pub fn alpha_map(t: &OpTable, e: Option<Elem>) -> Result<OpTable> {
    let e = resolve_nwq(t, e)?;
    let out = OpTable::ternary(t.order(), |x, y, z| {
        t.get3(t.get3(x, y, e), t.get3(e, z, e), e)
    });
    if cfg!(debug_assertions) {
        post(is_heap(&out), "alpha-map output is not a heap")?;
    }
    Ok(out)
}

/// Heap to Ward-quasigroup ternary at `h`: `[[x y h] z h]`.
pub fn beta_map(heap: &OpTable, h: Elem) -> Result<OpTable> {
    in_range(h, heap)?;
    require_heap(heap)?;
    let out = OpTable::ternary(heap.order(), |x, y, z| heap.get3(heap.get3(x, y, h), z, h));
    if cfg!(debug_assertions) {
        post(
            nwq_holds(&out, h)?,
            "beta-map output fails the Ward conditions",
        )?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> OpTable {
        OpTable::binary(n, |x, y| (x + y) % n)
    }

    #[test]
    fn z2_heap_and_back() {
        let h = psi(&zn(2)).unwrap();
        assert_eq!(h, OpTable::ternary(2, |x, y, z| (x + y + z) % 2));
        assert_eq!(omega(&h, 0).unwrap(), zn(2));
    }

    #[test]
    fn z3_subtraction_and_back() {
        let w = phi_g(&zn(3)).unwrap();
        assert_eq!(w, OpTable::binary(3, |x, y| (x + 3 - y) % 3));
        assert_eq!(gamma_wq(&w).unwrap(), zn(3));
    }

    #[test]
    fn theta_and_sigma_are_inverse_on_z3() {
        let t = theta(&zn(3)).unwrap();
        assert_eq!(nwq_element(&t).unwrap(), 0);
        assert_eq!(sigma(&t, None).unwrap(), zn(3));
        assert_eq!(theta(&sigma(&t, None).unwrap()).unwrap(), t);
    }

    #[test]
    fn alpha_beta() {
        let h = psi(&zn(3)).unwrap();
        for k in 0..3 {
            assert_eq!(alpha_map(&beta_map(&h, k).unwrap(), Some(k)).unwrap(), h);
        }
    }

    #[test]
    fn rejections() {
        let lz = OpTable::binary(2, |x, _| x);
        assert!(matches!(psi(&lz), Err(Error::Precondition(_))));
        assert_eq!(lambda(&lz), Err(Error::NoUniqueIdempotent(2)));
        assert!(matches!(
            omega(&OpTable::ternary(2, |x, _, _| x), 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            sigma(&OpTable::ternary(2, |x, _, _| x), None),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            omega(&psi(&zn(2)).unwrap(), 5),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}

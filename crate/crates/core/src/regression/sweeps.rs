//! Exhaustive sweeps over small enumerated structures.

use std::fmt;

use crate::algebra::{OpTable, Structure};
use crate::classify::{first_failure, has_property, PropertyName, GENERALISED_HEAP_AXIOMS};
use crate::clause::Binding;
use crate::construct::{
    alpha_map, beta_map, gamma_from_semiheap, gamma_wq, lambda, natural_ternary, omega, phi_g,
    pi_map, pi_ternary, psi, sigma, theta, with_ternary, Permutation3,
};
use crate::enumerate::{enumerate, groups, inverse_semigroups, EnumSpec};
use crate::error::{Error, Result};
use crate::inverse::{gh_to_inverse_semigroup, inverse_semigroup_triple};
use crate::iso::iso_tables;

fn fail(msg: String) -> Error {
    Error::Postcondition(msg)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

/// Sizes of the two classes matched by the semiheap construction at one order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BijectionCounts {
    pub order: usize,
    pub groupoids: usize,
    /// `None` when the ternary side was not enumerated.
    pub semiheaps: Option<usize>,
}

impl fmt::Display for BijectionCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order {}: {} groupoids", self.order, self.groupoids)?;
        if let Some(k) = self.semiheaps {
            write!(f, ", {k} semiheaps")?;
        }
        Ok(())
    }
}

/// Largest order at which the semiheap side is enumerated.
pub const SEMIHEAP_SIDE_MAX: usize = 3;

/// Right modular groupoids with left identity 0 against laterally
/// commutative semiheaps with 0 bi-unital: the natural ternary operation and
/// the groupoid recovered from a semiheap are checked to invert each other.
pub fn right_modular_semiheap_bijection(n: usize) -> Result<BijectionCounts> {
    let b = Binding::default().with_unit("l");
    let groupoids = enumerate(
        &EnumSpec::new(n)
            .binary()
            .pin("l", 0)
            .properties([PropertyName::RightModular, PropertyName::LeftIdentity]),
    )?;
    for s in &groupoids {
        let t = with_ternary(s, natural_ternary(s.op("mul")?));
        for p in [
            PropertyName::Semiheap,
            PropertyName::LaterallyCommutative,
            PropertyName::BiUnital,
        ] {
            ensure(has_property(&t, p, &b)?, || {
                format!(
                    "{p} fails for {:?}",
                    s.op("mul").map(|m| m.entries().to_vec())
                )
            })?;
        }
        let back = gamma_from_semiheap(&t, &b, 0)?;
        ensure(back.op("mul")? == s.op("mul")?, || {
            "semiheap does not recover its groupoid".into()
        })?;
    }
    let semiheaps = if n <= SEMIHEAP_SIDE_MAX {
        let ternaries = enumerate(&EnumSpec::new(n).ternary().pin("l", 0).properties([
            PropertyName::LaterallyCommutative,
            PropertyName::Semiheap,
            PropertyName::BiUnital,
        ]))?;
        for t in &ternaries {
            let g = gamma_from_semiheap(t, &b, 0)?;
            for p in [PropertyName::RightModular, PropertyName::LeftIdentity] {
                ensure(has_property(&g, p, &b)?, || {
                    format!("recovered groupoid fails {p}")
                })?;
            }
            ensure(natural_ternary(g.op("mul")?) == *t.op("t")?, || {
                "groupoid does not recover its semiheap".into()
            })?;
        }
        ensure(ternaries.len() == groupoids.len(), || {
            format!(
                "{} groupoids but {} semiheaps at order {n}",
                groupoids.len(),
                ternaries.len()
            )
        })?;
        Some(ternaries.len())
    } else {
        None
    };
    Ok(BijectionCounts {
        order: n,
        groupoids: groupoids.len(),
        semiheaps,
    })
}

/// Every permuted natural ternary of every AG* groupoid of order up to
/// `max_n` is a semiheap satisfying the generalised heap identities.
/// Returns the number of groupoids checked.
pub fn ag_star_permuted_ternaries(max_n: usize) -> Result<usize> {
    let b = Binding::default();
    let mut k = 0;
    for n in 1..=max_n {
        for s in enumerate(&EnumSpec::new(n).binary().property(PropertyName::AgStar))? {
            let nat = natural_ternary(s.op("mul")?);
            for p in Permutation3::all() {
                let ts = with_ternary(&s, pi_ternary(&nat, p));
                ensure(has_property(&ts, PropertyName::Semiheap, &b)?, || {
                    format!("{p}: semiheap fails")
                })?;
                if let Some(a) = first_failure(&ts, &GENERALISED_HEAP_AXIOMS, &b, None)? {
                    return Err(fail(format!("{p}: generalised heap identity fails at {a}")));
                }
            }
            k += 1;
        }
    }
    Ok(k)
}

fn iso(a: &OpTable, b: &OpTable) -> bool {
    iso_tables(std::slice::from_ref(a), std::slice::from_ref(b)).is_some()
}

/// Round trips between groups (orders up to `max_group`, up to isomorphism)
/// and heaps (all labelled heaps up to `max_heap`). Returns the numbers of
/// groups and heaps checked.
pub fn group_heap_ward_roundtrips(max_group: usize, max_heap: usize) -> Result<(usize, usize)> {
    let mut ng = 0;
    for n in 1..=max_group {
        for g in groups(n)? {
            let w = phi_g(&g)?;
            ensure(gamma_wq(&w)? == g, || "gamma(phi(G)) != G".into())?;
            ensure(phi_g(&gamma_wq(&w)?)? == w, || "phi(gamma(W)) != W".into())?;
            let nw = theta(&g)?;
            ensure(sigma(&nw, None)? == g, || "sigma(theta(G)) != G".into())?;
            ensure(theta(&sigma(&nw, None)?)? == nw, || {
                "theta(sigma([W])) != [W]".into()
            })?;
            let h = psi(&g)?;
            let lw = lambda(&w)?;
            let an = alpha_map(&nw, None)?;
            for e in 0..n {
                ensure(iso(&omega(&h, e)?, &g), || {
                    format!("omega(psi(G)) at {e} is not isomorphic to G")
                })?;
                ensure(iso(&pi_map(&lw, e)?, &w), || {
                    format!("pi(lambda(W)) at {e} is not isomorphic to W")
                })?;
                let bn = beta_map(&an, e)?;
                ensure(iso_tables(&[bn], std::slice::from_ref(&nw)).is_some(), || {
                    format!("beta(alpha([W])) at {e} is not isomorphic to [W]")
                })?;
            }
            ng += 1;
        }
    }
    let mut nh = 0;
    for n in 1..=max_heap {
        for s in enumerate(&EnumSpec::new(n).ternary().property(PropertyName::Heap))? {
            let h = s.op("t")?;
            for e in 0..n {
                ensure(lambda(&pi_map(h, e)?)? == *h, || {
                    format!("lambda(pi(H)) at {e} != H")
                })?;
                ensure(psi(&omega(h, e)?)? == *h, || {
                    format!("psi(omega(H)) at {e} != H")
                })?;
                ensure(alpha_map(&beta_map(h, e)?, Some(e))? == *h, || {
                    format!("alpha(beta(H)) at {e} != H")
                })?;
            }
            nh += 1;
        }
    }
    Ok((ng, nh))
}

/// The identities `x*x = y*y`, `x*y = (x*z)*(y*z)`, `x*(y*y) = x` define
/// exactly the Ward quasigroups of order `n`. Returns the number of models.
pub fn ward_variety(n: usize) -> Result<usize> {
    let by_identities = enumerate(
        &EnumSpec::new(n)
            .binary()
            .clause("x*x = y*y")?
            .clause("x*y = (x*z)*(y*z)")?
            .clause("x*(y*y) = x")?,
    )?;
    let by_property = enumerate(
        &EnumSpec::new(n)
            .binary()
            .property(PropertyName::WardQuasigroup),
    )?;
    let tables = |v: &[Structure]| {
        v.iter()
            .map(|s| s.op("mul").cloned())
            .collect::<Result<Vec<_>>>()
    };
    ensure(tables(&by_identities)? == tables(&by_property)?, || {
        format!(
            "{} models of the identities, {} Ward quasigroups",
            by_identities.len(),
            by_property.len()
        )
    })?;
    Ok(by_identities.len())
}

/// Every labelled inverse semigroup of order up to `max_n` is recovered from
/// its standard ternary triple, whose ternary is a generalised heap.
pub fn inverse_semigroup_roundtrips(max_n: usize) -> Result<usize> {
    let b = Binding::default();
    let mut k = 0;
    for n in 1..=max_n {
        for m in inverse_semigroups(n, false)? {
            let (t, prime, hat) = inverse_semigroup_triple(&m)?;
            let ts = Structure::new("t", crate::algebra::Carrier::numbered(n))
                .with_op("t", t.clone())?;
            ensure(
                has_property(&ts, PropertyName::GeneralisedHeap, &b)?,
                || "standard ternary is not a generalised heap".into(),
            )?;
            ensure(gh_to_inverse_semigroup(&t, &prime, &hat)? == m, || {
                "round trip changed the table".into()
            })?;
            k += 1;
        }
    }
    Ok(k)
}

/// For every right modular groupoid `S` with a left identity and every
/// groupoid `T` of order `n`, `S ≅ T` exactly when their natural ternary
/// operations are isomorphic. Returns the number of pairs compared.
pub fn natural_ternary_iso_sweep(n: usize) -> Result<usize> {
    let left = enumerate(
        &EnumSpec::new(n)
            .binary()
            .properties([PropertyName::RightModular, PropertyName::LeftIdentity]),
    )?;
    let all = enumerate(&EnumSpec::new(n).binary())?;
    let right: Vec<(OpTable, OpTable)> = all
        .iter()
        .map(|t| {
            let m = t.op("mul").expect("mul").clone();
            let nat = natural_ternary(&m);
            (m, nat)
        })
        .collect();
    let mut pairs = 0;
    for s in &left {
        let sm = s.op("mul")?.clone();
        let sn = natural_ternary(&sm);
        for (tm, tn) in &right {
            let binary = iso(&sm, tm);
            let ternary = iso(&sn, tn);
            ensure(binary == ternary, || {
                format!(
                    "{:?} vs {:?}: binary {binary}, ternary {ternary}",
                    sm.entries(),
                    tm.entries()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(pairs)
}

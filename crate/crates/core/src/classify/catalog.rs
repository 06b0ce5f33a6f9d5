use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::clause::OpSym;
use crate::error::Error;

/// Every named class and element role the classifier knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyName {
    RightModular,
    LeftLateral,
    WeaklyAssociative,
    AgStar,
    AgStarStar,
    Medial,
    Paramedial,
    Reversible,
    Commutative,
    Associative,
    Idempotent,
    LeftIdentity,
    RightIdentity,
    TwoSidedIdentity,
    GloballyIdempotent,
    WeaklyReductive,
    LeftCancellative,
    RightCancellative,
    RightSolvable,
    WardGroupoid,
    WardQuasigroup,
    InverseGroupoid,
    StarUnary,
    Semiheap,
    LaterallyCommutative,
    LeftCommutative,
    RightCommutative,
    TernaryAssociative,
    TernaryIdempotent,
    NearHeap,
    GeneralisedHeap,
    Heap,
    LeftUnital,
    RightUnital,
    BiUnital,
    LateralUnit,
    OuterLateralUnit,
    Unit,
    LeftLConsistent,
    CentralCommutant,
    StarCongruent,
    OuterLateral,
}

/// How a property is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definition {
    /// All of the listed clauses hold.
    Clauses(&'static [&'static str]),
    /// Some element `l` satisfies all of the listed clauses (which mention `l`).
    Role(Role),
    /// A quantifier pattern outside the clause language.
    Builtin,
}

/// Element roles; each is a conjunction of clauses over the constant `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    LeftUnital,
    RightUnital,
    BiUnital,
    LateralUnit,
    OuterLateralUnit,
    Unit,
    LeftIdentity,
    RightIdentity,
    TwoSidedIdentity,
    Idempotent,
    CentralCommutant,
    LeftLConsistent,
}

const RM: &str = "(x*y)*z = (z*y)*x";
const LL: &str = "x*(y*z) = y*(x*z)";
const WA: &str = "(x*y)*z = y*(x*z)";
const WARD: &str = "(x*z)*(y*z) = x*y";
const LCANCEL: &str = "z*x = z*y => x = y";
const RCANCEL: &str = "x*z = y*z => x = y";
const PARA1: &str = "[[x y z] u v] = [x [u z y] v]";
const PARA2: &str = "[x [u z y] v] = [x y [z u v]]";
const TIDEM: &str = "[x x x] = x";
/// The two identities a generalised heap adds to an idempotent semiheap.
pub const GENERALISED_HEAP_AXIOMS: [&str; 2] = [
    "[x x [y y z]] = [y y [x x z]]",
    "[[x y y] z z] = [[x z z] y y]",
];
const LUNITAL: &str = "[l l x] = x";
const RUNITAL: &str = "[x l l] = x";
const LATERAL: &str = "[l x l] = x";
const LIDENT: &str = "l*x = x";
const RIDENT: &str = "x*l = x";

impl Role {
    pub const ALL: [Role; 12] = [
        Role::LeftUnital,
        Role::RightUnital,
        Role::BiUnital,
        Role::LateralUnit,
        Role::OuterLateralUnit,
        Role::Unit,
        Role::LeftIdentity,
        Role::RightIdentity,
        Role::TwoSidedIdentity,
        Role::Idempotent,
        Role::CentralCommutant,
        Role::LeftLConsistent,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Role::LeftUnital => "left-unital",
            Role::RightUnital => "right-unital",
            Role::BiUnital => "bi-unital",
            Role::LateralUnit => "lateral-unit",
            Role::OuterLateralUnit => "outer-lateral-unit",
            Role::Unit => "unit",
            Role::LeftIdentity => "left-identity",
            Role::RightIdentity => "right-identity",
            Role::TwoSidedIdentity => "two-sided-identity",
            Role::Idempotent => "idempotents",
            Role::CentralCommutant => "central-commutant",
            Role::LeftLConsistent => "left-l-consistent",
        }
    }

    /// Clauses that `l` must satisfy.
    pub fn clause_texts(self) -> &'static [&'static str] {
        match self {
            Role::LeftUnital => &[LUNITAL],
            Role::RightUnital => &[RUNITAL],
            Role::BiUnital => &[LUNITAL, RUNITAL],
            Role::LateralUnit => &[LATERAL],
            Role::OuterLateralUnit => &["[l [l x l] l] = x"],
            Role::Unit => &[LATERAL, LUNITAL, RUNITAL],
            Role::LeftIdentity => &[LIDENT],
            Role::RightIdentity => &[RIDENT],
            Role::TwoSidedIdentity => &[LIDENT, RIDENT],
            Role::Idempotent => &["l*l = l"],
            Role::CentralCommutant => &["[x l y] = [y l x]"],
            Role::LeftLConsistent => &["[x y z] = [l [l x y] z]"],
        }
    }

    pub fn op(self) -> OpSym {
        match self {
            Role::LeftIdentity
            | Role::RightIdentity
            | Role::TwoSidedIdentity
            | Role::Idempotent => OpSym::Mul,
            _ => OpSym::Ternary,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Role::ALL
            .into_iter()
            .find(|r| r.token() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

impl PropertyName {
    pub const ALL: [PropertyName; 42] = [
        PropertyName::RightModular,
        PropertyName::LeftLateral,
        PropertyName::WeaklyAssociative,
        PropertyName::AgStar,
        PropertyName::AgStarStar,
        PropertyName::Medial,
        PropertyName::Paramedial,
        PropertyName::Reversible,
        PropertyName::Commutative,
        PropertyName::Associative,
        PropertyName::Idempotent,
        PropertyName::LeftIdentity,
        PropertyName::RightIdentity,
        PropertyName::TwoSidedIdentity,
        PropertyName::GloballyIdempotent,
        PropertyName::WeaklyReductive,
        PropertyName::LeftCancellative,
        PropertyName::RightCancellative,
        PropertyName::RightSolvable,
        PropertyName::WardGroupoid,
        PropertyName::WardQuasigroup,
        PropertyName::InverseGroupoid,
        PropertyName::StarUnary,
        PropertyName::Semiheap,
        PropertyName::LaterallyCommutative,
        PropertyName::LeftCommutative,
        PropertyName::RightCommutative,
        PropertyName::TernaryAssociative,
        PropertyName::TernaryIdempotent,
        PropertyName::NearHeap,
        PropertyName::GeneralisedHeap,
        PropertyName::Heap,
        PropertyName::LeftUnital,
        PropertyName::RightUnital,
        PropertyName::BiUnital,
        PropertyName::LateralUnit,
        PropertyName::OuterLateralUnit,
        PropertyName::Unit,
        PropertyName::LeftLConsistent,
        PropertyName::CentralCommutant,
        PropertyName::StarCongruent,
        PropertyName::OuterLateral,
    ];

    pub fn token(self) -> &'static str {
        use PropertyName::*;
        match self {
            RightModular => "right-modular",
            LeftLateral => "left-lateral",
            WeaklyAssociative => "weakly-associative",
            AgStar => "ag-star",
            AgStarStar => "ag-star-star",
            Medial => "medial",
            Paramedial => "paramedial",
            Reversible => "reversible",
            Commutative => "commutative",
            Associative => "associative",
            Idempotent => "idempotent",
            LeftIdentity => "left-identity",
            RightIdentity => "right-identity",
            TwoSidedIdentity => "two-sided-identity",
            GloballyIdempotent => "globally-idempotent",
            WeaklyReductive => "weakly-reductive",
            LeftCancellative => "left-cancellative",
            RightCancellative => "right-cancellative",
            RightSolvable => "right-solvable",
            WardGroupoid => "ward-groupoid",
            WardQuasigroup => "ward-quasigroup",
            InverseGroupoid => "inverse-groupoid",
            StarUnary => "star-unary",
            Semiheap => "semiheap",
            LaterallyCommutative => "laterally-commutative",
            LeftCommutative => "left-commutative",
            RightCommutative => "right-commutative",
            TernaryAssociative => "ternary-associative",
            TernaryIdempotent => "ternary-idempotent",
            NearHeap => "near-heap",
            GeneralisedHeap => "generalised-heap",
            Heap => "heap",
            LeftUnital => "left-unital",
            RightUnital => "right-unital",
            BiUnital => "bi-unital",
            LateralUnit => "lateral-unit",
            OuterLateralUnit => "outer-lateral-unit",
            Unit => "unit",
            LeftLConsistent => "left-l-consistent",
            CentralCommutant => "central-commutant",
            StarCongruent => "star-congruent",
            OuterLateral => "outer-lateral",
        }
    }

    pub fn definition(self) -> Definition {
        use Definition::{Builtin, Clauses};
        use PropertyName::*;
        match self {
            RightModular => Clauses(&[RM]),
            LeftLateral => Clauses(&[LL]),
            WeaklyAssociative => Clauses(&[WA]),
            AgStar => Clauses(&[RM, WA]),
            AgStarStar => Clauses(&[RM, LL]),
            Medial => Clauses(&["(x*y)*(z*w) = (x*z)*(y*w)"]),
            Paramedial => Clauses(&["(x*y)*(z*w) = (w*y)*(z*x)"]),
            Reversible => Clauses(&["(x*y)*(z*w) = (w*z)*(y*x)"]),
            Commutative => Clauses(&["x*y = y*x"]),
            Associative => Clauses(&["(x*y)*z = x*(y*z)"]),
            Idempotent => Clauses(&["x*x = x"]),
            LeftIdentity => Definition::Role(Role::LeftIdentity),
            RightIdentity => Definition::Role(Role::RightIdentity),
            TwoSidedIdentity => Definition::Role(Role::TwoSidedIdentity),
            GloballyIdempotent | WeaklyReductive | RightSolvable | InverseGroupoid => Builtin,
            LeftCancellative => Clauses(&[LCANCEL]),
            RightCancellative => Clauses(&[RCANCEL]),
            WardGroupoid => Clauses(&[WARD]),
            WardQuasigroup => Clauses(&[WARD, LCANCEL, RCANCEL]),
            StarUnary => Clauses(&["x'' = x", "(x*y)' = x'*y'", "x'*y = y'*x"]),
            Semiheap => Clauses(&[PARA1, PARA2]),
            LaterallyCommutative => Clauses(&["[x y z] = [z y x]"]),
            LeftCommutative => Clauses(&["[x y z] = [y x z]"]),
            RightCommutative => Clauses(&["[x y z] = [x z y]"]),
            TernaryAssociative => Clauses(&[
                "[[x y z] u v] = [x [y z u] v]",
                "[x [y z u] v] = [x y [z u v]]",
            ]),
            TernaryIdempotent => Clauses(&[TIDEM]),
            NearHeap => Clauses(&[PARA1, PARA2, TIDEM, "[x x y] = [y x x]"]),
            GeneralisedHeap => Clauses(&[
                PARA1,
                PARA2,
                TIDEM,
                GENERALISED_HEAP_AXIOMS[0],
                GENERALISED_HEAP_AXIOMS[1],
            ]),
            Heap => Clauses(&[PARA1, PARA2, "[x x y] = y", "[y x x] = y"]),
            LeftUnital => Definition::Role(Role::LeftUnital),
            RightUnital => Definition::Role(Role::RightUnital),
            BiUnital => Definition::Role(Role::BiUnital),
            LateralUnit => Definition::Role(Role::LateralUnit),
            OuterLateralUnit => Definition::Role(Role::OuterLateralUnit),
            Unit => Definition::Role(Role::Unit),
            LeftLConsistent => Definition::Role(Role::LeftLConsistent),
            CentralCommutant => Definition::Role(Role::CentralCommutant),
            StarCongruent => Clauses(&["[x y z]^ = [x^ y^ z^]"]),
            OuterLateral => Clauses(&["[x [x y x] x] = y"]),
        }
    }

    /// Clauses that every model of the property satisfies; for clause-defined
    /// properties these are the whole definition.
    pub fn necessary_clauses(self) -> &'static [&'static str] {
        match self.definition() {
            Definition::Clauses(c) => c,
            _ => &[],
        }
    }

    /// The operation symbols the property reads.
    pub fn ops(self) -> &'static [OpSym] {
        use PropertyName::*;
        match self {
            StarUnary => &[OpSym::Mul, OpSym::Prime],
            StarCongruent => &[OpSym::Ternary, OpSym::Hat],
            _ => match self.definition() {
                Definition::Role(r) if r.op() == OpSym::Ternary => &[OpSym::Ternary],
                Definition::Clauses(c) if c[0].contains('[') => &[OpSym::Ternary],
                _ => &[OpSym::Mul],
            },
        }
    }
}

impl fmt::Display for PropertyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for PropertyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyName::ALL
            .into_iter()
            .find(|p| p.token() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

// Sets of properties print in token order.
impl Ord for PropertyName {
    fn cmp(&self, other: &Self) -> Ordering {
        self.token().cmp(other.token())
    }
}

impl PartialOrd for PropertyName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause::parse_clause;

    #[test]
    fn tokens_round_trip_and_are_unique() {
        let mut seen = std::collections::HashSet::new();
        for p in PropertyName::ALL {
            assert_eq!(p.token().parse::<PropertyName>().unwrap(), p);
            assert!(seen.insert(p.token()));
        }
        assert!("frobenius".parse::<PropertyName>().is_err());
    }

    #[test]
    fn every_clause_text_parses() {
        for p in PropertyName::ALL {
            if let Definition::Clauses(cs) = p.definition() {
                for c in cs {
                    let parsed = parse_clause(c).unwrap();
                    assert!(parsed.constants().is_empty(), "{p}: {c}");
                }
            }
        }
        for r in Role::ALL {
            for c in r.clause_texts() {
                let parsed = parse_clause(c).unwrap();
                assert_eq!(parsed.constants(), vec!["l"], "{r}: {c}");
                assert!(parsed.symbols().contains(&r.op()));
            }
        }
    }

    #[test]
    fn ops_match_clause_symbols() {
        for p in PropertyName::ALL {
            if let Definition::Clauses(cs) = p.definition() {
                for c in cs {
                    for sym in parse_clause(c).unwrap().symbols() {
                        assert!(p.ops().contains(&sym), "{p} uses {sym:?}");
                    }
                }
            }
        }
    }
}

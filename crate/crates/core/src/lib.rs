//! A workbench for finite groupoids and the ternary operations they induce.

pub mod algebra;
pub mod classify;
pub mod clause;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod inverse;
pub mod iso;
pub mod regression;

pub use algebra::{Carrier, Elem, OpTable, Structure};
pub use classify::{check_property, classify, find_elements, PropertyName, PropertyReport, Role};
pub use clause::{check_clause, parse_clause, Binding, CheckResult, Clause, Term, Verdict};
pub use error::{Error, Result};

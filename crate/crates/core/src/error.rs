use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("operation `{op}` has arity {expected}, got {got} arguments")]
    ArityMismatch {
        op: String,
        expected: usize,
        got: usize,
    },
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("{line}:{col}: parse error: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: duplicate element name `{name}`")]
    DuplicateElement {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}: ragged table for `{op}`: {msg}")]
    RaggedTable {
        line: usize,
        op: String,
        msg: String,
    },
    #[error("{line}:{col}: undeclared element `{name}`")]
    UndeclaredElement {
        line: usize,
        col: usize,
        name: String,
    },

    #[error("clause symbol `{0}` is not bound to an operation of the structure")]
    UnboundSymbol(String),
    #[error("missing binding: {0}")]
    MissingBinding(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error("not an inverse groupoid: element {element} has {count} inverses")]
    NotInverse { element: usize, count: usize },
    #[error("not a Clifford semigroup: {0}")]
    NotClifford(String),
    #[error("expected exactly one idempotent, found {0}")]
    NoUniqueIdempotent(usize),

    #[error("order {order} exceeds the cap for {what}")]
    CapExceeded { order: usize, what: String },
    #[error("no check id starts with `{0}`")]
    UnknownFilter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("malformed table: {0}")]
    MalformedTable(String),

    /// A structural law failed; `witness` names the offending elements by label.
    #[error("{law} fails at {witness}")]
    LawViolated { law: &'static str, witness: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structure lacks required property: {0}")]
    MissingStructure(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("capacity exceeded: {what} has {count} items, limit is {limit}")]
    Capacity {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    /// A monoid oracle returned something inconsistent with its contract.
    #[error("oracle integrity fault: {0}")]
    Integrity(String),

    /// A bounded search could not decide the question.
    #[error("undecided within search depth {depth}: {what}")]
    Undecided { what: String, depth: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DblError {
    #[error("boundary mismatch: {context}: {lhs} vs {rhs}")]
    BoundaryMismatch { context: String, lhs: String, rhs: String },

    #[error("law violation ({law}) at {witness}")]
    LawViolation { law: String, witness: String },

    #[error("rewrite depth exceeded (bound {bound})")]
    RewriteDepthExceeded { bound: usize },

    #[error("generator {gen} has no image under the functor")]
    UnmappedGenerator { gen: String },

    #[error("category mismatch: {context}")]
    CategoryMismatch { context: String },

    #[error("no companion designated for component at object {obj}")]
    MissingCompanion { obj: String },

    #[error("1h-cell component at object {obj} is not a designated companion")]
    NotACompanion { obj: String },

    #[error("relation not preserved: {rule}")]
    RelationNotPreserved { rule: String },

    #[error("comparison inconclusive: {reason}")]
    Inconclusive { reason: String },

    #[error("{msg}")]
    Invalid { msg: String },
}

impl DblError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        DblError::Invalid { msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, DblError>;

/// Three-valued outcome of a decidable-when-possible equality test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Eq3 {
    Equal,
    NotEqual,
    Unknown,
}

impl Eq3 {
    pub fn is_equal(self) -> bool {
        self == Eq3::Equal
    }
}

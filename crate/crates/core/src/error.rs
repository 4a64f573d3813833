use thiserror::Error;

use crate::rewrite::ReductionTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown Omega element `{0}`")]
    UnknownOmega(String),

    #[error("operator tag {0} is not available in this system")]
    TagNotAvailable(crate::terms::Tag),

    #[error("a star word needs exactly one `@`, found {0}")]
    HoleCount(u32),

    #[error("leading monomial of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("malformed operation table: {0}")]
    MalformedTable(String),

    #[error("the Omega carrier must be a nonempty set")]
    EmptyCarrier,

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("product is not associative: witness ({0}, {1}, {2})")]
    NotAssociative(String, String, String),

    #[error("system {kind} requires {requirement}")]
    SystemRequirement {
        kind: &'static str,
        requirement: String,
    },

    #[error("weights do not match system {kind}: {detail}")]
    WeightMismatch { kind: &'static str, detail: String },

    #[error("missing elimination weight for Omega element `{0}`")]
    MissingWeight(String),

    #[error("word enumeration exceeded the cap of {cap} words at degree {degree}")]
    EnumerationOverflow { degree: usize, cap: usize },

    #[error("count overflow at degree {0}")]
    CountOverflow(usize),

    #[error("reduction exceeded the budget of {budget} steps")]
    BudgetExceeded {
        budget: usize,
        partial: Box<ReductionTrace>,
    },

    #[error("composition precondition failed: {0}")]
    Composition(String),

    #[error("system has no S-tagged operators; dendriform products need both tags")]
    MissingSTag,

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

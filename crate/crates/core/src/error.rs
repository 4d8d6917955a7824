use thiserror::Error;

/// Errors shared across the group and field settings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input, or a configured enumeration bound was
    /// exceeded.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An operation-specific precondition does not hold for the given
    /// arguments.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// No subgroup satisfies the divisor condition the constructor needs.
    #[error("no suitable subgroup: {0}")]
    NoSuitableSubgroup(String),
    /// No intermediate field satisfies the divisor condition the constructor
    /// needs.
    #[error("no suitable field: {0}")]
    NoSuitableField(String),
    /// Two deciders that must agree produced different verdicts.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

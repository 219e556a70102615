use thiserror::Error;

/// Errors raised by construction and evaluation routines.
///
/// Structural problems (wrong dimensions, malformed input) are kept distinct
/// from axiom violations: the latter are reported through [`crate::hypergroup::AxiomReport`]
/// and never raised as errors.
#[derive(Debug, Error)]
pub enum Error {
    /// Array lengths or matrix shapes do not match the declared element count.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A table is structurally unusable (e.g. zero diagonal mass at the
    /// identity, which no hypergroup admits).
    #[error("invalid hypergroup table: {0}")]
    InvalidTable(String),

    /// A group multiplication table violates a group axiom.
    #[error("invalid group table: {0} axiom fails {1}")]
    InvalidGroup(&'static str, String),

    /// A parameter lies outside the admissible domain of an operation.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// An input carried NaN or infinite entries where finite values are required.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// A verification suite configuration is unusable.
    #[error("invalid suite configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

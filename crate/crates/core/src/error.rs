use thiserror::Error;

/// Errors surfaced by constructors and operations.
///
/// Constructor-invariant violations (`RingMismatch`, `Shape`, `IllDefined`,
/// `IdentityViolation`, `InvalidRing`, `BadStructure`) are distinguished from
/// computation limits (`DegreeOutOfRange`, `SizeLimit`, `InputRejected`) so a
/// driver can map them to different exit codes.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("base rings differ: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("matrix shape mismatch: expected {expected}, got {got} in {context}")]
    Shape {
        expected: String,
        got: String,
        context: String,
    },

    #[error("map is not well defined: {0}")]
    IllDefined(String),

    #[error("structural identity violated: {0}")]
    IdentityViolation(String),

    #[error("invalid structure: {0}")]
    BadStructure(String),

    #[error("degree {requested} out of range (maximum usable degree {max}); extend the truncation")]
    DegreeOutOfRange { requested: isize, max: isize },

    #[error("size limit exceeded: needed {needed} generators, bound is {bound}")]
    SizeLimit { needed: u128, bound: u128 },

    #[error("orientation mismatch: {0}")]
    OrientationMismatch(String),

    #[error("input rejected: {0}")]
    InputRejected(String),
}

impl Error {
    /// True for errors raised while validating declared structures, as
    /// opposed to limits hit during a computation.
    pub fn is_constructor_violation(&self) -> bool {
        matches!(
            self,
            Error::RingMismatch(..)
                | Error::InvalidRing(..)
                | Error::Shape { .. }
                | Error::IllDefined(..)
                | Error::IdentityViolation(..)
                | Error::BadStructure(..)
                | Error::OrientationMismatch(..)
        )
    }
}

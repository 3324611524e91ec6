use thiserror::Error;

/// Errors raised by preprocessing and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("line {index} is vertical")]
    VerticalLine { index: usize },
    #[error("general position violated by {indices:?}: {reason}")]
    GeneralPositionViolation { indices: Vec<usize>, reason: String },
    #[error("point {index} does not lie on its declared line")]
    PointNotOnDeclaredLine { index: usize },
    #[error("line {line} is assigned more than one point")]
    DuplicateLineAssignment { line: usize },
    #[error("expected one point per line: {expected} lines, {got} points")]
    AssignmentSizeMismatch { expected: usize, got: usize },
    #[error("line id {line} out of range")]
    UnknownLine { line: usize },
    #[error("line {index} does not pass through its declared point")]
    LineNotThroughDeclaredPoint { index: usize },
    #[error("point {index} lies on the wrong side of the wrapping line")]
    SideViolation { index: usize },
    #[error("degenerate query configuration: {0}")]
    DegenerateQuery(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl GeomError {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            GeomError::VerticalLine { .. } => "VerticalLine",
            GeomError::GeneralPositionViolation { .. } => "GeneralPositionViolation",
            GeomError::PointNotOnDeclaredLine { .. } => "PointNotOnDeclaredLine",
            GeomError::DuplicateLineAssignment { .. } => "DuplicateLineAssignment",
            GeomError::AssignmentSizeMismatch { .. } => "AssignmentSizeMismatch",
            GeomError::UnknownLine { .. } => "UnknownLine",
            GeomError::LineNotThroughDeclaredPoint { .. } => "LineNotThroughDeclaredPoint",
            GeomError::SideViolation { .. } => "SideViolation",
            GeomError::DegenerateQuery(_) => "DegenerateQuery",
            GeomError::InvalidParameter(_) => "InvalidParameter",
        }
    }

    pub(crate) fn gp(indices: Vec<usize>, reason: impl Into<String>) -> Self {
        GeomError::GeneralPositionViolation { indices, reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;

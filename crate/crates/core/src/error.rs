use thiserror::Error;

use crate::validation::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group must have at least one element")]
    EmptyGroup,
    #[error("multiplication table is not a Latin square (row {row}, column {col})")]
    NotLatinSquare { row: usize, col: usize },
    #[error("multiplication table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociativeTable { a: usize, b: usize, c: usize },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("group order {order} exceeds cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("point {point} out of range for a space of {size} points")]
    PointOutOfRange { point: usize, size: usize },
    #[error("map for element {g} is malformed: {detail}")]
    MalformedMap { g: usize, detail: String },
    #[error("map for element {g} is not defined exactly on the domain of its inverse")]
    DomainMismatch { g: usize },
    #[error("partial system is invalid: {0}")]
    InvalidSystem(Box<ValidationReport>),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("element is not a unit of its carrier ideal")]
    NotAUnit,
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("cocycle w({g},{h}) is malformed at point {point}: {detail}")]
    MalformedCocycle { g: usize, h: usize, point: usize, detail: String },
    #[error("sigma for element {g} is malformed: {detail}")]
    MalformedBijection { g: usize, detail: String },
    #[error("twisted action is invalid: {0}")]
    InvalidAction(Box<ValidationReport>),
    #[error("coefficient at element {g} is not supported in its ideal (point {point})")]
    CoefficientOutsideIdeal { g: usize, point: usize },

    #[error("{what} needs {required} but the cap is {cap}")]
    Capacity { what: String, required: u128, cap: u128 },
    #[error("cross-check `{check}` disagrees: {detail}")]
    Disagreement { check: String, detail: String },

    #[error("parse error{}: {message}", fmt_location(.field, .line, .column))]
    Parse {
        field: Option<String>,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation failed: {0}")]
    Validation(Box<ValidationReport>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_location(field: &Option<String>, line: &usize, column: &usize) -> String {
    match field {
        Some(f) if *line > 0 => format!(" at `{f}` (line {line}, column {column})"),
        Some(f) => format!(" at `{f}`"),
        None if *line > 0 => format!(" (line {line}, column {column})"),
        None => String::new(),
    }
}

impl Error {
    pub fn capacity(what: impl Into<String>, required: u128, cap: u128) -> Self {
        Error::Capacity { what: what.into(), required, cap }
    }

    pub fn disagreement(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Disagreement { check: check.into(), detail: detail.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

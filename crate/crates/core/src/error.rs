use std::fmt;

use crate::lattice::Coord;

/// Source position of a diagnostic inside a geometry document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("coordinate {0} lies outside the lattice")]
    OutOfBounds(Coord),
    #[error("coordinate {0} is not a cell center")]
    NotACenter(Coord),
    #[error("coordinate {0} is not a qubit position")]
    NotAQubit(Coord),
    #[error("segment {0} -> {1} joins cells of different classes")]
    ParityMismatch(Coord, Coord),
    #[error("segment {0} -> {1} is not axis-aligned")]
    NotAxisAligned(Coord, Coord),
    #[error("segment {0} -> {1} has zero length")]
    ZeroLength(Coord, Coord),
    #[error("{span}: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: {source}")]
    Invalid {
        span: Span,
        #[source]
        source: Box<Error>,
    },
    #[error("logical qubit `{0}` is declared twice")]
    DuplicateQubit(String),
    #[error("logical qubit `{id}`: {message}")]
    Geometry { id: String, message: String },
    #[error("vertex {0} is not in the cycle")]
    NoSuchVertex(usize),
    #[error("{0} -> {1} is not an edge of the cycle")]
    NotAnEdge(Coord, Coord),
    #[error("reduce precondition violated at {0} / {1}")]
    ReducePrecondition(Coord, Coord),
    #[error("traversal did not return to its start vertex")]
    CorruptCycle,
    #[error("sheet finding exceeded {0} traversals")]
    TraversalBound(u64),
    #[error("injection segment {0} -> {1} has no center at its midpoint")]
    InjectionMidpoint(Coord, Coord),
    #[error("defect qubit {coord} is claimed by both `{first}` and `{second}`")]
    DefectCollision {
        coord: Coord,
        first: String,
        second: String,
    },
    #[error("tracking document {span}: {message}")]
    Tracking { span: Span, message: String },
}

impl Error {
    pub(crate) fn at(self, line: usize, column: usize) -> Error {
        match self {
            e @ (Error::Syntax { .. } | Error::Invalid { .. }) => e,
            other => Error::Invalid {
                span: Span { line, column },
                source: Box::new(other),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::kind::CodeKind;
use crate::sat::LsatViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("operation needs two distinct vertices, got {0} twice")]
    SameVertex(usize),

    #[error("graph is not {kind}-admissible: {reason}")]
    Inadmissible { kind: CodeKind, reason: String },

    #[error("hypergraph contains an empty edge ({origin})")]
    EmptyEdge { origin: String },

    #[error("graph load error at line {line}: {message}")]
    GraphFormat { line: usize, message: String },

    #[error("invalid json input: {0}")]
    Json(String),

    #[error("invalid family parameter: {0}")]
    FamilyParameter(String),

    #[error("graph does not carry the roles expected for {0}")]
    RoleMismatch(String),

    #[error("instance too large for exhaustive search: {size} > {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("invalid q-rose parameters n={n}, q={q} (need 2 <= q < n)")]
    RoseParameters { n: usize, q: usize },

    #[error("LSAT instance rejected: {0}")]
    Lsat(#[from] LsatViolation),

    #[error("instance is not saturated: literal {literal} occurs in {count} clause(s)")]
    Unsaturated { literal: String, count: usize },

    #[error("variable x{0} occurs in no clause")]
    UnusedVariable(usize),

    #[error("assignment does not satisfy clause {0}")]
    UnsatisfiedClause(usize),

    #[error("variable x{var} has {count} w-vertices in the code (expected exactly 1)")]
    AmbiguousVariable { var: usize, count: usize },

    #[error("vertex set does not open-separate {u} and {v}")]
    NotOpenSeparating { u: usize, v: usize },

    #[error("dimension mismatch: system has {system} variables, clutter has {clutter}")]
    DimensionMismatch { system: usize, clutter: usize },
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::SameVertex(_) => "same_vertex",
            Error::Inadmissible { .. } => "inadmissible",
            Error::EmptyEdge { .. } => "empty_edge",
            Error::GraphFormat { .. } => "graph_format",
            Error::Json(_) => "json",
            Error::FamilyParameter(_) => "family_parameter",
            Error::RoleMismatch(_) => "role_mismatch",
            Error::TooLarge { .. } => "too_large",
            Error::RoseParameters { .. } => "rose_parameters",
            Error::Lsat(v) => v.name(),
            Error::Unsaturated { .. } => "unsaturated",
            Error::UnusedVariable(_) => "unused_variable",
            Error::UnsatisfiedClause(_) => "unsatisfied_clause",
            Error::AmbiguousVariable { .. } => "ambiguous_variable",
            Error::NotOpenSeparating { .. } => "not_open_separating",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
        }
    }
}

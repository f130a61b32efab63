//! Identifying, locating and open-separating dominating codes in graphs.
//!
//! Codes are reduced to hypergraph covering problems: a set of vertices is a
//! code exactly when it meets every edge of the code clutter of the graph.

pub mod clutter;
pub mod codes;
pub mod cover;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod kind;
pub mod polyhedra;
pub mod report;
pub mod sat;
pub mod vset;

pub use clutter::{build_hypergraph, q_rose, reduce, Clutter, Hypergraph, Origin};
pub use codes::{check_relations, gamma, gamma_cover, is_code, verify, GammaResult, VerificationReport};
pub use cover::{min_cover, CoverResult};
pub use error::{Error, Result};
pub use families::{generate, FamilySpec, NamedGraph};
pub use graph::{Graph, GraphBuilder};
pub use kind::{CodeKind, Domination, Separation};
pub use vset::VertexSet;

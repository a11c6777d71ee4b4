//! Exact search, construction, and certification for singular Ramsey and
//! singular Turan numbers.
//!
//! A multiset of integers is *k-singular* when its elements are either all
//! equal or pairwise distinct with consecutive gaps at least `k` once
//! sorted. A copy of a pattern graph inside a host is a *singular copy*
//! when the host degrees of the copy's vertices form a k-singular multiset.
//! The crate provides:
//!
//! * [`graph`]: bitmask graphs, degree classes, complements, induced
//!   subgraphs;
//! * [`canon`]: canonical labelling and isomorphism tests;
//! * [`graph6`]: the standard printable encoding for graph exchange;
//! * [`singular`]: singular-sequence extraction and singular-copy
//!   detection;
//! * [`enumerate`]: isomorphism-free generation, catalogues of graphs that
//!   avoid a pattern while their complements avoid another ("R-graphs"),
//!   classical Ramsey numbers by exhaustion, and Ramsey stability;
//! * [`construct`]: the explicit extremal constructions (half graphs,
//!   substitution graphs, star families, Turan-type edge-maximal graphs);
//! * [`search`]: upper-bound machinery (class profiles, substitution
//!   search, exhaustive sweeps, a branch-and-prune CSP) and end-to-end
//!   certification;
//! * [`turan`]: singular Turan numbers, exact and by construction.

pub mod bitset;
pub mod canon;
pub mod construct;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod singular;
pub mod spec;
pub mod subgraph;
pub mod turan;

pub use bitset::{VertexSet, MAX_ORDER};
pub use graph::{DegreeClass, DegreeClassPartition, Graph};
pub use spec::GraphSpec;

/// Version string recorded in certificates and run manifests.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Crate-wide error type. Variants name the violated precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A graph order exceeded the representation cap.
    OrderOutOfRange { n: usize, max: usize },
    /// A vertex index was not in `0..order`.
    VertexOutOfRange { v: usize, order: usize },
    /// A loop edge `(v, v)` was supplied.
    LoopEdge { v: usize },
    /// A vertex list contained a repeat.
    DuplicateVertex { v: usize },
    /// A graph family was given parameters outside its domain.
    InvalidSpec(String),
    /// A pattern expression could not be parsed.
    ParseSpec(String),
    /// Malformed graph6 input.
    Graph6(String),
    /// An input sequence was shorter than the guarantee threshold.
    InputTooShort { needed: usize, got: usize },
    /// An operation required an R-graph and the argument is not one.
    NotRGraph(String),
    /// Exhaustive enumeration would have to pass its hard order bound.
    ExhaustionBound(String),
    /// Substitution parts did not match the host.
    SizeMismatch(String),
    /// A construction failed its own postcondition check.
    ConstructionInvalid(String),
    /// A bounded search ran out of nodes or time without an answer.
    BudgetExhausted(String),
    /// An operation is only defined for k = 1 and was called with k > 1.
    RequiresUnitGap(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::OrderOutOfRange { n, max } => {
                write!(f, "graph order {n} exceeds the supported maximum {max}")
            }
            Error::VertexOutOfRange { v, order } => {
                write!(f, "vertex index {v} out of range for order {order}")
            }
            Error::LoopEdge { v } => write!(f, "loop edge at vertex {v} rejected"),
            Error::DuplicateVertex { v } => write!(f, "vertex {v} listed more than once"),
            Error::InvalidSpec(msg) => write!(f, "invalid graph family parameters: {msg}"),
            Error::ParseSpec(msg) => write!(f, "cannot parse pattern: {msg}"),
            Error::Graph6(msg) => write!(f, "bad graph6 data: {msg}"),
            Error::InputTooShort { needed, got } => {
                write!(f, "input has {got} entries but at least {needed} are required")
            }
            Error::NotRGraph(msg) => write!(f, "not an R-graph: {msg}"),
            Error::ExhaustionBound(msg) => write!(f, "exhaustion bound exceeded: {msg}"),
            Error::SizeMismatch(msg) => write!(f, "size mismatch: {msg}"),
            Error::ConstructionInvalid(msg) => {
                write!(f, "construction failed verification: {msg}")
            }
            Error::BudgetExhausted(msg) => write!(f, "search budget exhausted: {msg}"),
            Error::RequiresUnitGap(msg) => write!(f, "operation requires k = 1: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Shorthand for fallible crate operations.
pub type Result<T> = std::result::Result<T, Error>;

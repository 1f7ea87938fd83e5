//! Stanley depth and depth of multigraded modules `J/I` over a polynomial
//! ring, with a focus on powers of edge ideals of graphs.
//!
//! The crate computes exact Stanley depth through interval partitions
//! ([`sdepth`]), exact depth through Koszul homology ([`depth`]), builds
//! explicit Stanley decompositions of `I^k/I^{k+1}`, `S/I^k` and `I^k` for an
//! edge ideal `I` ([`constructions`]) and checks them with an independent box
//! verifier ([`stanley`]). [`bounds`] turns the known lower bounds in terms of
//! bipartite components into checkable reports.

pub mod bounds;
pub mod constructions;
pub mod depth;
pub mod error;
pub mod graph;
mod grid;
pub mod linalg;
pub mod monomial;
pub mod sdepth;
pub mod stanley;

pub use bounds::{BoundReport, ModuleKind, Verdict};
pub use error::{Error, Result};
pub use graph::Graph;
pub use monomial::{MonomialIdeal, Multidegree};
pub use stanley::{ModulePresentation, StanleyDecomposition, StanleySpace, VerificationReport};

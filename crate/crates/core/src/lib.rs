//! Non-Hamiltonian cubic graphs of prescribed girth.
//!
//! Graph representation and interchange ([`graph`], [`graph6`], [`canon`],
//! [`catalog`]), exact analysis ([`analysis`]), the bridge, two-edge,
//! two-bond and three-edge constructions ([`constructions`]), isomorph-free
//! generation ([`generation`]) and minimum-order prison search ([`prison`]).

pub mod analysis;
pub mod canon;
pub mod catalog;
pub mod constructions;
pub mod generation;
pub mod graph;
pub mod graph6;
pub mod prison;

pub use analysis::{analyze, AnalysisReport};
pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use catalog::{catalog, Named};
pub use graph::{CubicGraph, Edge, GraphError};
pub use graph6::{emit_graph6, parse_graph6};

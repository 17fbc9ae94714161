//! Finite line-graph combinatorics: recognition by forbidden subgraphs and
//! by Krausz-style decompositions, line graph relations, root graph
//! reconstruction, Whitney isomorphism lifting, and the supporting small
//! graph catalog and enumeration utilities.

pub mod atlas;
pub mod catalog;
pub mod coloring;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod krausz;
pub mod recognition;
pub mod rootgraph;

pub use graph::{parse_edge_list, to_edge_list, EdgeId, Graph, VertexSet};
pub use graph6::{emit_graph6, parse_graph6};
pub use iso::{all_isomorphisms, find_induced_copy, is_isomorphic, CapExceeded, IsoWitness};

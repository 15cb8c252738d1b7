//! Acyclic gamma-nonzero edge sets of group-labelled graphs.
//!
//! The feasible family of a labelled graph forms a delta-matroid. This
//! crate enumerates it by brute force, decides separability in near-linear
//! time, solves the maximum-weight problem with the symmetric greedy
//! algorithm, decodes two tree-packing problems, and builds matrix
//! representations over finite fields.

pub mod abelian;
pub mod delta_matroid;
mod dsu;
pub mod gf_repr;
pub mod greedy;
pub mod labelled_graph;
pub mod packing;
pub mod separation;

pub use abelian::{GroupDescriptor, GroupElement, GroupError};
pub use delta_matroid::{enumerate_gamma_graphic, z2_reduction, SetSystem};
pub use greedy::{solve_max_weight, WeightMap};
pub use labelled_graph::{edge_set, EdgeId, EdgeSet, LabelledGraph, VertexId};
pub use separation::{extend_to_feasible, is_separable};

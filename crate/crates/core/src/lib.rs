//! Signless Laplacian spectral radius of graphs with a prescribed size and
//! matching number.
//!
//! The crate computes `q(G)`, the largest eigenvalue of `Q = D + A`, and
//! maximum matchings; builds the extremal family `S_{a,b,c}` and the predicted
//! maximizer for each `(m, beta)`; applies the `q`-increasing rewirings
//! (edge rotation, Kelmans-type swap, pendant collapse); and checks the
//! prediction against an isomorph-free exhaustive search.

pub mod cli;
pub mod family;
pub mod graph;
pub mod matching;
pub mod search;
pub mod spectral;
pub mod transform;
pub mod verify;

pub use graph::{canonical_form, from_graph6, is_isomorphic, to_graph6, Graph};
pub use matching::{matching_number, maximum_matching};
pub use spectral::{q_radius, SpectralData};

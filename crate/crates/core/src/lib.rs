//! Invertibility of bounded-degree hypergraphs and minimal edge covers.
//!
//! A hypergraph `(H, V)` is *invertible* when some permutation `π` of `V`
//! moves every edge off itself (`π(E) ∩ E = ∅`). This crate decides
//! invertibility through perfect matchings in the compatibility graph,
//! checks invertibility-criticality, builds the extremal minimal edge covers
//! of complete bipartite graphs and the reductions between complete,
//! complete-bipartite and invertibility-critical families, replays the
//! set-pair counting argument behind the upper bound on concrete covers, and
//! runs exact small-scale searches for the extremal quantities
//! `b(d)`, `c(d)` and `i(d)`.
//!
//! With the default `parallel` feature, data-parallel loops (criticality
//! checks, coverage checks, search branches) run on rayon. Disabling it
//! gives a purely sequential build with identical results.

pub mod audit;
pub mod bounds;
pub mod canonical;
pub mod constructions;
pub mod cover;
pub mod doc;
pub mod error;
pub mod hypergraph;
pub mod invertibility;
pub mod matching;
pub mod par;
pub mod search;
pub mod set;

pub use cover::{CoverFamily, HostGraph};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, Permutation, VertexId};
pub use set::VertexSet;

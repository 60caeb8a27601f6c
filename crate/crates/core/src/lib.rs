//! Spectral and factor-criticality tools for `(a,b,k)`-critical graphs.
//!
//! - [`graph`]: bitset graphs, graph6 and edge-list I/O, small-order enumeration.
//! - [`spectral`]: spectral radius, Perron vector, Hong's bound, quotient matrices.
//! - [`criticality`]: deficiency-based deciders with certificates, plus explicit factor search.
//! - [`families`]: the extremal graphs and their family.
//! - [`harness`]: checks that tie the above together and report structured results.

pub mod criticality;
pub mod error;
pub mod families;
pub mod graph;
pub mod harness;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};

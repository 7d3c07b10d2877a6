//! Combinatorial models of configuration spaces of finite graphs.
//!
//! The ordered configuration space of `k` points in a graph is modelled by
//! the nerve of the face category of the cells of `X^k` that avoid the
//! fat diagonal. The crate builds that model, its quotient by the
//! symmetric group, a smaller glued model for two points, and Abrams'
//! cubical model as an independent check, and computes integer homology and
//! fundamental group presentations of all of them.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod graph;
pub mod cells;
pub mod nerve;
pub mod homology;
pub mod model;
pub mod families;
pub mod pi1;
pub mod abrams;
pub mod reduced;
pub mod report;

pub use error::{Error, Result};
pub use graph::{EdgeClass, EdgeSpec, Graph, GraphJson, Sign};

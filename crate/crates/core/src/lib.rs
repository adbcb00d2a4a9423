//! Pfaffian graph laboratory: decide whether a finite simple graph admits a
//! Pfaffian orientation and, either way, produce a checkable certificate.
//! Also: ear decompositions of 1-extendible graphs, tight-cut/brick
//! decomposition, the GF(2) cycle and alternating spaces, splice and glue
//! constructions, and reducibility witnesses based on even subdivisions of
//! K3,3.

pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod limits;
pub mod matchings;
pub mod oracle;
pub mod pfaffian;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Graph};
pub use limits::Limits;

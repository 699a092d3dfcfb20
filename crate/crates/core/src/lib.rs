//! Compatible triangulations of planar point sets using exterior Steiner
//! points.
//!
//! The pipeline: exact geometry ([`geom`]), triangulations and compatibility
//! checking ([`tri`]), series-triangular graphs ([`stgraph`]), point-set
//! partitioning by graph embeddings ([`partition`]) and the end-to-end
//! constructions ([`compat`]). [`cli`] holds the file formats and command
//! implementations behind the `compatri` binary.

pub mod geom;
pub mod tri;
pub mod par;
pub mod rational;
pub mod stgraph;
pub mod partition;
pub mod compat;
pub mod cli;

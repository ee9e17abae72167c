//! Paired and semipaired dominating sets of near-triangulations.

pub mod decomposition;
pub mod family_f;
pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod paired;
pub mod recursion;
pub mod render;
pub mod semipaired;
pub mod sets;
pub mod small_mops;

pub use graph::{EdgeClass, Label, NearTriangulation, RawEmbedding, SurgeryError, ValidationError};

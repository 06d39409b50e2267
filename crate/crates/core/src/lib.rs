//! Twin-width of graphs and trigraphs: exact search, the feedback-edge
//! kernel pipeline, and the vertex-integrity lifting pipeline. Every
//! sequence produced here can be replayed with [`contraction::replay`].

pub mod contraction;
pub mod error;
pub mod exact;
pub mod fen;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod report;
pub mod vi;

pub use contraction::{ContractionSequence, ContractionStep, Contractor};
pub use error::{Error, Result};
pub use graph::{Color, Trigraph, VertexId};

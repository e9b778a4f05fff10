//! Virtual knot and link diagrams given by signed Gauss codes, the group
//! presentations they determine, and Alexander numberings.

mod gauss;
mod numbering;
mod presentations;

pub use gauss::{Crossing, Edge, Passage, Roles, VirtualDiagram};
pub use numbering::{Numbering, NumberingConflict};
pub use presentations::EXTRA_GENERATOR;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("Gauss code error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl DiagramError {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        DiagramError::Parse { pos, msg: msg.into() }
    }
}

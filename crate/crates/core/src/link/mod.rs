//! Oriented, colored link diagrams.
//!
//! # Crossing convention
//!
//! A crossing is a 4-tuple of arc labels read **clockwise**, starting at the
//! incoming under-strand; the under-strand runs from slot 0 to slot 2. The
//! crossing is positive exactly when the over-strand runs from slot 1 to
//! slot 3. With this reading `[[1,4,2,5],[3,6,4,1],[5,2,6,3]]` is the
//! positive (right-handed) trefoil and the closure of `s1 s1 s1` matches it.
//!
//! ```text
//!        c            positive:  over b -> d
//!        |            negative:  over d -> b
//!   b ---+--- d
//!        |
//!        a  (under, entering)
//! ```
//!
//! Tables that read the slots counterclockwise describe the mirror image
//! under this reading.

mod braid;
mod diagram;
mod pd;
mod seifert;
mod wirtinger;

pub use braid::{braid_to_diagram, braid_to_pd, parse_braid, BraidWord};
pub use diagram::{parse_coloring, ColoredLinkDiagram, Crossing, LinkDiagram};
pub use pd::{parse_pd, PdCode};
pub use seifert::{braid_seifert_matrix, diagram_braid, seifert_from_diagram, SeifertMatrix};
pub use wirtinger::{fox_complex, wirtinger, Letter, WirtingerPresentation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("malformed PD code: {0}")]
    Syntax(String),
    #[error("crossing {index} has {found} entries, expected 4")]
    Arity { index: usize, found: usize },
    #[error("arc label {label} occurs {count} times, expected 2")]
    LabelMultiplicity { label: i64, count: usize },
    #[error("strand through arc {label} is inconsistently oriented")]
    Orientation { label: i64 },
    #[error("diagram is not planar")]
    NonPlanar,
    #[error("braid generator {index} is out of range for {strands} strands")]
    BraidIndex { index: i64, strands: usize },
    #[error("malformed braid word: {0}")]
    BraidSyntax(String),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("linking number needs two distinct components")]
    SameComponent,
    #[error("diagram is split; treat its pieces separately")]
    Disconnected,
    #[error("invalid coloring: {0}")]
    Coloring(String),
    #[error("diagram did not become braided after {0} moves")]
    VogelLimit(usize),
    #[error("diagram is not braided: {0}")]
    NotBraided(String),
}

#[cfg(test)]
mod tests;

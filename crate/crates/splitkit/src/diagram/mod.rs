//! Jacobi diagrams with colored legs, modulo AS, IHX and multilinearity.

mod canonical;
mod color;
mod element;
mod graph;
mod ihx;

pub use canonical::canonical_as;
pub use color::{unit_color, Color, ColorSet, LinearColor};
pub(crate) use element::expand_legs;
pub use element::{multilinear_expand, scale_color, DiagramElement};
pub use graph::{End, JacobiDiagram};
pub use ihx::{dim_stratum, enumerate_stratum, ihx_relators, normal_form, Flavor};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("duplicate color label {0}")]
    DuplicateColor(String),
    #[error("signature must split the labels into disjoint top and bottom parts")]
    BadSignature,
    #[error("color {0} is outside the declared color set")]
    UnknownColor(String),
    #[error("gluing closes a loop with no vertices")]
    VertexlessLoop,
    #[error("color sets overlap on {0}")]
    ColorOverlap(String),
}
